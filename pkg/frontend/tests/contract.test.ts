/**
 * UI contract tests against the live service: the hint panel always equals
 * a fresh /predict, choice grids shrink monotonically, save/load restores
 * placements through the service, and the recognition review flow
 * finalizes to exactly the server's review output.
 */

import { readFileSync } from "node:fs";
import { beforeAll, describe, expect, inject, test } from "vitest";

import { ApiClient, Suggestion } from "../src/api.js";
import { ReviewSession } from "../src/review.js";
import { EditorSession } from "../src/session.js";
import { parseCanonicalSwml } from "../src/swml.js";

const baseUrl = inject("baseUrl");
const pagePath = inject("pagePath");

const A = "01-01-001-01-01-01";
const B = "01-02-001-01-01-01";
const C = "01-03-001-01-01-01";

function api(): ApiClient {
  return new ApiClient(baseUrl);
}

async function seededSession(): Promise<EditorSession> {
  const session = new EditorSession(api());
  await session.init();
  return session;
}

beforeAll(async () => {
  // toy corpus so the hint panel has a model to draw from
  const client = api();
  const signs = [
    [A, B],
    [A, B, C],
    [A, C],
  ];
  for (const codes of signs) {
    await client.postSign({
      placements: codes.map((code, i) => ({ code, x: i * 60, y: (i % 3) * 60 })),
    });
  }
});

function expectSameSuggestions(actual: Suggestion[], expected: Suggestion[]): void {
  expect(actual).toEqual(expected);
}

describe("hint panel consistency", () => {
  test("fresh session shows frequency-tier hints for the empty canvas", async () => {
    const session = await seededSession();
    expect(session.hints.length).toBeGreaterThan(0);
    for (const hint of session.hints) {
      expect(hint.tier).toBe("backoff-frequency");
    }
    expectSameSuggestions(session.hints, await api().predict([], session.hintCount));
  });

  test("hints equal a fresh /predict after every mutation", async () => {
    const session = await seededSession();
    const index = await session.place(A, 10, 10);
    expectSameSuggestions(session.hints, await api().predict([A], session.hintCount));

    await session.place(B, 60, 10);
    expectSameSuggestions(
      session.hints,
      await api().predict(session.placedCodes(), session.hintCount),
    );

    await session.move(index, 20, 25);
    expectSameSuggestions(
      session.hints,
      await api().predict(session.placedCodes(), session.hintCount),
    );

    await session.remove(session.placements.length - 1);
    expectSameSuggestions(
      session.hints,
      await api().predict(session.placedCodes(), session.hintCount),
    );
  });

  test("place then delete restores the pre-place hint list", async () => {
    const session = await seededSession();
    await session.place(A, 10, 10);
    const before = structuredClone(session.hints);
    const index = await session.place(B, 70, 10);
    await session.remove(index);
    expect(session.hints).toEqual(before);
  });

  test("a placed hint disappears from the next hint list", async () => {
    const session = await seededSession();
    await session.place(A, 10, 10);
    const top = session.hints[0];
    expect(top).toBeDefined();
    await session.place(top.code, 80, 10);
    expect(session.hints.map((h) => h.code)).not.toContain(top.code);
  });
});

describe("choice boxes and glyph grid", () => {
  test("no choices shows the full region; each choice narrows the grid", async () => {
    const session = await seededSession();
    await session.selectRegion("hand");
    const full = session.nav.grid.map((g) => g.code);
    expect(full.length).toBeGreaterThan(50);

    let previous = new Set(full);
    for (const box of session.nav.boxes) {
      const option = box.options[box.options.length - 1];
      await session.applyChoice(box.attribute, option);
      const current = new Set(session.nav.grid.map((g) => g.code));
      for (const code of current) expect(previous.has(code)).toBe(true);
      expect(current.size).toBeLessThanOrEqual(previous.size);
      previous = current;
    }
    expect(previous.size).toBeGreaterThanOrEqual(1);
  });

  test("revoking a choice returns the previous superset", async () => {
    const session = await seededSession();
    await session.selectRegion("movement");
    const full = new Set(session.nav.grid.map((g) => g.code));
    const box = session.nav.boxes[0];
    await session.applyChoice(box.attribute, box.options[0]);
    const narrowed = new Set(session.nav.grid.map((g) => g.code));
    expect(narrowed.size).toBeLessThan(full.size);
    await session.revokeChoice(box.attribute);
    expect(new Set(session.nav.grid.map((g) => g.code))).toEqual(full);
  });

  test("switching region clears the filter state", async () => {
    const session = await seededSession();
    await session.selectRegion("hand");
    const box = session.nav.boxes[0];
    await session.applyChoice(box.attribute, box.options[0]);
    expect(Object.keys(session.nav.filter)).toHaveLength(1);
    await session.selectRegion("face");
    expect(session.nav.filter).toEqual({});
    session.home();
    expect(session.nav.region).toBeNull();
    expect(session.breadcrumb()).toEqual([]);
  });
});

describe("documents through the service", () => {
  test("save then load restores identical placements", async () => {
    const session = await seededSession();
    await session.place(A, 12, 30);
    await session.place(B, 64, 4);
    await session.place(C, 12, 90);
    const saved = session.placements.map((p) => ({ code: p.code, x: p.x, y: p.y }));
    await session.save("ui-roundtrip", "from the editor");

    const restored = await seededSession();
    await restored.load("ui-roundtrip");
    const loaded = restored.placements.map((p) => ({ code: p.code, x: p.x, y: p.y }));
    const key = (p: { code: string; x: number; y: number }) => `${p.code}@${p.x},${p.y}`;
    expect(loaded.map(key).sort()).toEqual(saved.map(key).sort());
    expect(restored.dirty).toBe(false);
  });

  test("loading refreshes hints for the loaded placements", async () => {
    const session = await seededSession();
    await session.place(A, 12, 30);
    await session.save("ui-hints");
    const restored = await seededSession();
    await restored.load("ui-hints");
    expectSameSuggestions(
      restored.hints,
      await api().predict(restored.placedCodes(), restored.hintCount),
    );
  });
});

describe("recognition review flow", () => {
  test("accepting everything finalizes to the server draft", async () => {
    const review = new ReviewSession(api());
    const job = await review.upload(readFileSync(pagePath));
    expect(job.state).toBe("awaiting-review");
    expect(review.report!.recognized.length).toBeGreaterThan(0);

    const draft = await api().getDraft(job.job_id);
    const { swml } = await review.finalize();
    expect(swml).toBe(draft);

    const fetched = await api().getJob(job.job_id);
    expect(fetched.state).toBe("finalized");
  });

  test("replacing one glyph changes exactly one code in the final SWML", async () => {
    const review = new ReviewSession(api());
    await review.upload(readFileSync(pagePath));
    const draft = parseCanonicalSwml(await api().getDraft(review.jobId));
    const draftCodes = draft.columns.flat().flatMap((s) => s.placements.map((p) => p.code));

    const replacement = draftCodes.includes(A) ? B : A;
    const original = review.report!.recognized[0].code;
    review.replace(0, replacement);
    const { document } = await review.finalize(false);
    const finalCodes = document.columns.flat().flatMap((s) => s.placements.map((p) => p.code));

    expect(finalCodes).toHaveLength(draftCodes.length);
    const diffs = finalCodes.filter((code, i) => code !== draftCodes[i]);
    expect(diffs).toEqual([replacement]);
    expect(finalCodes.filter((c) => c === original).length).toBe(
      draftCodes.filter((c) => c === original).length - 1,
    );
  });

  test("finalized document opens in the editor for further composition", async () => {
    const review = new ReviewSession(api());
    await review.upload(readFileSync(pagePath));
    const { document } = await review.finalize(false);
    const session = await seededSession();
    const first = document.columns.flat()[0];
    session.placements = first.placements.map((p) => ({ ...p }));
    await session.refreshHints();
    expectSameSuggestions(
      session.hints,
      await api().predict(session.placedCodes(), session.hintCount),
    );
    const added = await session.place(C, 200, 200);
    expect(session.placements[added].code).toBe(C);
  });
});
