/** DOM builders. Pure functions of the response payload; no fetching here. */

import type { Cluster, ProviderReport, SearchResponse } from "./api";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderTabs(
  clusters: Cluster[],
  activeIndex: number,
  onSelect: (index: number) => void,
): HTMLElement {
  const list = el("nav", "tabs");
  list.setAttribute("role", "tablist");
  clusters.forEach((cluster, index) => {
    const tab = el("button", index === activeIndex ? "tab active" : "tab");
    tab.setAttribute("role", "tab");
    tab.setAttribute("aria-selected", String(index === activeIndex));
    tab.dataset.category = cluster.category ?? "";
    tab.dataset.index = String(index);

    const label = cluster.sense.is_fallback ? cluster.cluster_query : cluster.sense.gloss;
    tab.appendChild(el("span", "tab-label", label));
    if (cluster.category) {
      tab.appendChild(el("span", "tab-category", cluster.category));
    }
    tab.appendChild(el("span", "tab-count", String(cluster.results.length)));
    tab.addEventListener("click", () => onSelect(index));
    list.appendChild(tab);
  });
  return list;
}

export function renderCluster(cluster: Cluster): HTMLElement {
  const panel = el("section", "cluster");
  panel.setAttribute("role", "tabpanel");
  panel.appendChild(el("h2", "cluster-query", cluster.cluster_query));

  if (cluster.results.length === 0) {
    panel.appendChild(el("p", "empty", "No results for this sense."));
    return panel;
  }

  const list = el("ol", "results");
  for (const result of cluster.results) {
    const item = el("li", "result");
    const link = el("a", "result-title", result.title || result.url);
    link.href = result.url;
    item.appendChild(link);
    item.appendChild(el("span", "result-url", result.url));
    if (result.snippet) {
      item.appendChild(el("p", "result-snippet", result.snippet));
    }
    item.appendChild(
      el("span", "result-meta", `listed by ${result.count}: ${result.sources.join(", ")}`),
    );
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderProviderStatus(reports: ProviderReport[]): HTMLElement {
  const bar = el("footer", "providers");
  for (const report of reports) {
    const chip = el(
      "span",
      report.status === "ok" ? "provider ok" : "provider failed",
      `${report.provider}: ${report.status} (${report.elapsed_ms}ms, ${report.links} links)`,
    );
    bar.appendChild(chip);
  }
  return bar;
}

export function renderSummary(response: SearchResponse): HTMLElement {
  const parts = [`pivot: ${response.pivot_word}`];
  if (response.reduced_query !== response.query) {
    parts.unshift(`searched as: ${response.reduced_query}`);
  }
  if (response.served_from_cache) {
    parts.push("cached");
  }
  return el("p", "summary", parts.join("  ·  "));
}

export function renderError(message: string): HTMLElement {
  const banner = el("div", "error-banner", message);
  banner.setAttribute("role", "alert");
  return banner;
}
