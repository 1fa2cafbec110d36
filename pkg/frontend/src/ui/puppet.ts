/**
 * The puppet: a stylized human figure whose anatomic areas start a glyph
 * search, with buttons below it for the non-body signing aspects. A red
 * square marks the selected area; after a selection the whole panel is
 * shrunk into a left navigation rail by the container (CSS class).
 */

import { RegionInfo } from "../api.js";
import { EditorSession } from "../session.js";
import { clear, el } from "./dom.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Hit areas on the figure, one per body region. */
const BODY_SHAPES: Record<string, { x: number; y: number; w: number; h: number }> = {
  head: { x: 52, y: 4, w: 36, h: 30 },
  face: { x: 60, y: 16, w: 20, h: 16 },
  shoulders: { x: 30, y: 40, w: 80, h: 12 },
  torso: { x: 46, y: 54, w: 48, h: 52 },
  arm: { x: 12, y: 52, w: 28, h: 56 },
  hand: { x: 100, y: 52, w: 28, h: 56 },
};

export class PuppetPanel {
  readonly root: HTMLElement;
  private marker: SVGRectElement | null = null;
  private svg: SVGSVGElement;
  private aspects: HTMLElement;

  constructor(private session: EditorSession, private container: HTMLElement) {
    this.root = el("div", "puppet-panel");
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("viewBox", "0 0 140 160");
    this.svg.classList.add("puppet");
    this.aspects = el("div", "aspect-buttons");
    this.root.append(this.svg, this.aspects);
    session.onChange(() => this.sync());
  }

  render(regions: RegionInfo[]): void {
    clear(this.aspects);
    this.svg.replaceChildren();
    this.drawFigure();
    const known = new Set(regions.map((r) => r.name));
    for (const [name, box] of Object.entries(BODY_SHAPES)) {
      if (!known.has(name)) continue;
      const hit = document.createElementNS(SVG_NS, "rect");
      hit.setAttribute("x", String(box.x));
      hit.setAttribute("y", String(box.y));
      hit.setAttribute("width", String(box.w));
      hit.setAttribute("height", String(box.h));
      hit.classList.add("puppet-hit");
      hit.setAttribute("data-region", name);
      hit.addEventListener("click", () => void this.select(name));
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = name;
      hit.append(title);
      this.svg.append(hit);
    }
    for (const region of regions.filter((r) => r.kind === "aspect")) {
      const button = el("button", "aspect-button", region.name);
      button.addEventListener("click", () => void this.select(region.name));
      this.aspects.append(button);
    }
  }

  private async select(region: string): Promise<void> {
    await this.session.selectRegion(region);
  }

  private sync(): void {
    const selected = this.session.nav.region;
    this.container.classList.toggle("rail", selected !== null);
    this.marker?.remove();
    this.marker = null;
    for (const button of this.aspects.querySelectorAll("button")) {
      button.classList.toggle("selected", button.textContent === selected);
    }
    if (selected && BODY_SHAPES[selected]) {
      const box = BODY_SHAPES[selected];
      const marker = document.createElementNS(SVG_NS, "rect");
      marker.setAttribute("x", String(box.x - 2));
      marker.setAttribute("y", String(box.y - 2));
      marker.setAttribute("width", String(box.w + 4));
      marker.setAttribute("height", String(box.h + 4));
      marker.classList.add("selection-marker");
      this.svg.append(marker);
      this.marker = marker;
    }
  }

  private drawFigure(): void {
    const parts: [string, Record<string, string>][] = [
      ["circle", { cx: "70", cy: "19", r: "15" }],
      ["rect", { x: "32", y: "42", width: "76", height: "8", rx: "4" }],
      ["rect", { x: "48", y: "56", width: "44", height: "48", rx: "6" }],
      ["rect", { x: "16", y: "54", width: "10", height: "50", rx: "5" }],
      ["rect", { x: "114", y: "54", width: "10", height: "50", rx: "5" }],
      ["rect", { x: "54", y: "110", width: "10", height: "44", rx: "5" }],
      ["rect", { x: "76", y: "110", width: "10", height: "44", rx: "5" }],
    ];
    for (const [tag, attrs] of parts) {
      const node = document.createElementNS(SVG_NS, tag);
      for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
      node.classList.add("puppet-body");
      this.svg.append(node);
    }
  }
}
