import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // the contract suite boots the real HTTP service
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
