import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    // The live test boots a real control server, which takes a few seconds.
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
