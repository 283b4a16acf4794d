import { defineConfig } from "vitest/config";

// dev server proxies API calls to a locally running `relterms serve`
const API = process.env.RELTERMS_API ?? "http://127.0.0.1:8080";

export default defineConfig({
  server: {
    proxy: {
      "/search": API,
      "/page": API,
      "/session": API,
      "/health": API,
    },
  },
  test: {
    environment: "node",
  },
});
