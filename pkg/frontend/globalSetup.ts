/**
 * Boots the backing service for the contract tests: temp storage, a random
 * port, and a rendered page image for the recognition flow.
 */

import { execFileSync, spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import type { TestProject } from "vitest/node";

const PYTHON = process.env.SWKIT_PYTHON ?? "python3";

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
    pagePath: string;
  }
}

let service: ChildProcess | null = null;
let storage: string | null = null;

export default async function setup(project: TestProject): Promise<() => void> {
  const port = 8800 + Math.floor(Math.random() * 800);
  const baseUrl = `http://127.0.0.1:${port}`;
  storage = mkdtempSync(join(tmpdir(), "swkit-ui-test-"));

  const repoRoot = resolve(__dirname, "..");
  const golden = join(repoRoot, "data", "golden", "three_signs.swml");
  const pagePath = join(storage, "page.png");
  execFileSync(PYTHON, ["-m", "swkit.cli", "ogr", "render", golden, "-o", pagePath], {
    cwd: repoRoot,
  });

  service = spawn(
    PYTHON,
    ["-m", "swkit.cli", "serve", "--port", String(port), "--storage",
     join(storage, "state"), "--host", "127.0.0.1"],
    { cwd: repoRoot, stdio: ["ignore", "pipe", "pipe"] },
  );
  service.stderr?.on("data", () => {});
  service.stdout?.on("data", () => {});

  const deadline = Date.now() + 60_000;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/catalog/categories`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((r) => setTimeout(r, 200));
  }

  project.provide("baseUrl", baseUrl);
  project.provide("pagePath", pagePath);

  return () => {
    service?.kill("SIGTERM");
    if (storage) rmSync(storage, { recursive: true, force: true });
  };
}
