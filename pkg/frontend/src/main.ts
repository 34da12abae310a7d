import { App } from "./app";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

// the dev server proxies /api to the backend; same-origin in production
new App(root, { userId: localStorage.getItem("sensesearch-user") ?? "" });
