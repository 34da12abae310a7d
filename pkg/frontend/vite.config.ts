import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    port: 5173,
    // forward API calls to a local backend (real service or mock/server.mjs)
    proxy: {
      "/api": process.env.SENSESEARCH_API ?? "http://127.0.0.1:8080",
    },
  },
  test: {
    environment: "happy-dom",
    // tests talk to a real mock server on 127.0.0.1, which the simulated
    // browser would otherwise treat as a cross-origin target
    environmentOptions: {
      happyDOM: {
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    include: ["tests/**/*.test.ts"],
  },
});
