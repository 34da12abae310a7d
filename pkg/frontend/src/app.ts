/** Application shell: one search box, sense tabs, a results panel.
 *
 * Selecting a tab is the user declaring "this is the meaning I wanted", so
 * each tab click issues exactly one history POST with that cluster's
 * category; the next search then benefits from the recorded preference.
 */

import { ApiClient, ApiRequestError, type SearchResponse } from "./api";
import {
  renderCluster,
  renderError,
  renderProviderStatus,
  renderSummary,
  renderTabs,
} from "./render";

export interface AppOptions {
  client?: ApiClient;
  userId?: string;
}

export class App {
  readonly root: HTMLElement;
  private readonly client: ApiClient;
  private readonly userId: string;
  private response: SearchResponse | null = null;
  private activeIndex = 0;
  private pendingHistory: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.root = root;
    this.client = options.client ?? new ApiClient();
    this.userId = options.userId ?? "";
    this.renderShell();
  }

  private renderShell(): void {
    this.root.innerHTML = "";
    const form = document.createElement("form");
    form.className = "search-form";
    const input = document.createElement("input");
    input.type = "search";
    input.name = "q";
    input.placeholder = "search…";
    const button = document.createElement("button");
    button.type = "submit";
    button.textContent = "Search";
    form.append(input, button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.search(input.value);
    });

    const output = document.createElement("main");
    output.className = "output";
    this.root.append(form, output);
  }

  private output(): HTMLElement {
    return this.root.querySelector("main.output") as HTMLElement;
  }

  async search(q: string): Promise<void> {
    const query = q.trim();
    if (!query) return;
    const output = this.output();
    output.innerHTML = "";
    try {
      this.response = await this.client.search(query, { user: this.userId || undefined });
    } catch (error) {
      this.response = null;
      output.appendChild(renderError(describe(error)));
      return;
    }
    this.activeIndex = 0;
    this.renderResponse();
  }

  /** Tab activation: re-render and record the selection (one POST per click). */
  selectCluster(index: number): void {
    if (!this.response || index < 0 || index >= this.response.clusters.length) return;
    this.activeIndex = index;
    const cluster = this.response.clusters[index];
    if (cluster.category) {
      const post = this.client
        .recordSelection(this.userId, this.response.query, cluster.category)
        .then(() => undefined)
        .catch(() => undefined); // history is best-effort; never break the UI
      this.pendingHistory = this.pendingHistory.then(() => post);
    }
    this.renderResponse();
  }

  /** Settles after every history POST issued so far has finished. */
  historySettled(): Promise<void> {
    return this.pendingHistory;
  }

  private renderResponse(): void {
    if (!this.response) return;
    const output = this.output();
    output.innerHTML = "";
    output.appendChild(renderSummary(this.response));
    output.appendChild(
      renderTabs(this.response.clusters, this.activeIndex, (index) => this.selectCluster(index)),
    );
    const cluster = this.response.clusters[this.activeIndex];
    if (cluster) {
      output.appendChild(renderCluster(cluster));
    }
    output.appendChild(renderProviderStatus(this.response.provider_status));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiRequestError) {
    return error.status === 502
      ? "All search providers failed; try again shortly."
      : `Search failed: ${error.message}`;
  }
  return "Search failed: the service is unreachable.";
}
