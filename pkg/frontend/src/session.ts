/**
 * Editor session state: the sign under composition, glyph-menu navigation,
 * and the hint panel. Every placement mutation refreshes the hints from the
 * service so the panel always reflects the current placed set; navigation
 * state mirrors the server's region/choice-box vocabulary.
 */

import { ApiClient, ChoiceBox, GlyphInfo, RegionInfo, Suggestion } from "./api.js";
import { buildSwml, DocumentData, parseCanonicalSwml, PlacementData } from "./swml.js";

export interface Placement extends PlacementData {}

export interface NavigationState {
  region: string | null;
  filter: Record<string, string>;
  boxes: ChoiceBox[];
  grid: GlyphInfo[];
}

export type SessionListener = (session: EditorSession) => void;

export class EditorSession {
  readonly api: ApiClient;
  hintCount: number;

  placements: Placement[] = [];
  glosses: string[] = [];
  hints: Suggestion[] = [];
  nav: NavigationState = { region: null, filter: {}, boxes: [], grid: [] };
  regions: RegionInfo[] = [];
  dirty = false;
  selected: number | null = null;

  private listeners: SessionListener[] = [];
  private signSeq = 0;

  constructor(api: ApiClient, hintCount = 12) {
    this.api = api;
    this.hintCount = hintCount;
  }

  onChange(listener: SessionListener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }

  /** Load catalog metadata and the empty-canvas (frequency) hints. */
  async init(): Promise<void> {
    this.regions = await this.api.regions();
    await this.refreshHints();
    this.notify();
  }

  placedCodes(): string[] {
    return [...new Set(this.placements.map((p) => p.code))].sort();
  }

  async refreshHints(): Promise<void> {
    try {
      this.hints = await this.api.predict(this.placedCodes(), this.hintCount);
    } catch (err) {
      // an empty corpus has no model yet; an empty panel is the honest state
      this.hints = [];
    }
    this.notify();
  }

  // --- glyph menu navigation ---

  async selectRegion(region: string): Promise<void> {
    this.nav = { region, filter: {}, boxes: [], grid: [] };
    const [boxes, grid] = await Promise.all([
      this.api.choiceBoxes(region),
      this.api.glyphs(region),
    ]);
    this.nav.boxes = boxes;
    this.nav.grid = grid;
    this.notify();
  }

  async applyChoice(attribute: string, option: string): Promise<void> {
    if (!this.nav.region) throw new Error("no region selected");
    this.nav.filter = { ...this.nav.filter, [attribute]: option };
    this.nav.grid = await this.api.glyphs(this.nav.region, this.nav.filter);
    this.notify();
  }

  async revokeChoice(attribute: string): Promise<void> {
    if (!this.nav.region) throw new Error("no region selected");
    const { [attribute]: _, ...rest } = this.nav.filter;
    this.nav.filter = rest;
    this.nav.grid = await this.api.glyphs(this.nav.region, this.nav.filter);
    this.notify();
  }

  home(): void {
    this.nav = { region: null, filter: {}, boxes: [], grid: [] };
    this.notify();
  }

  breadcrumb(): string[] {
    if (!this.nav.region) return [];
    return [this.nav.region, ...Object.entries(this.nav.filter).map(([k, v]) => `${k}=${v}`)];
  }

  // --- sign display mutations (each one refreshes the hint panel) ---

  async place(code: string, x: number, y: number): Promise<number> {
    const z = this.placements.length;
    this.placements.push({ code, x, y, z });
    this.dirty = true;
    await this.refreshHints();
    return this.placements.length - 1;
  }

  async move(index: number, x: number, y: number): Promise<void> {
    const p = this.placements[index];
    if (!p) throw new Error(`no placement ${index}`);
    this.placements[index] = { ...p, x, y };
    this.dirty = true;
    await this.refreshHints();
  }

  async remove(index: number): Promise<void> {
    if (!this.placements[index]) throw new Error(`no placement ${index}`);
    this.placements.splice(index, 1);
    this.placements = this.placements.map((p, z) => ({ ...p, z }));
    if (this.selected === index) this.selected = null;
    this.dirty = true;
    await this.refreshHints();
  }

  // --- documents ---

  toDocument(): DocumentData {
    this.signSeq += 1;
    return {
      columns: [
        [
          {
            signId: `sign-${this.signSeq}`,
            source: "editor",
            glosses: this.glosses,
            placements: this.placements,
          },
        ],
      ],
    };
  }

  /** Serialize the session via the service; returns canonical SWML. */
  async save(docId: string, title?: string): Promise<string> {
    if (this.placements.length === 0) throw new Error("nothing to save");
    const canonical = await this.api.putDocument(docId, buildSwml(this.toDocument(), title));
    this.dirty = false;
    return canonical;
  }

  /** Load a stored document; the first sign becomes the editable one. */
  async load(docId: string): Promise<DocumentData> {
    const doc = parseCanonicalSwml(await this.api.getDocument(docId));
    const signs = doc.columns.flat();
    const first = signs[0];
    this.placements = first ? first.placements.map((p) => ({ ...p })) : [];
    this.glosses = first ? [...first.glosses] : [];
    this.dirty = false;
    this.selected = null;
    await this.refreshHints();
    return doc;
  }

  /** Store the composed sign in the corpus (hint material for later). */
  async publishSign(): Promise<string[]> {
    if (this.placements.length === 0) throw new Error("nothing to publish");
    return await this.api.postSign({
      placements: this.placements,
      gloss_labels: this.glosses,
    });
  }
}
