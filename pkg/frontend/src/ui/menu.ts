/**
 * Glyph menu: choice boxes that progressively narrow the glyph grid, plus
 * the grid itself. Options toggle (click the active one to revoke); each
 * grid tile is draggable onto the sign display and clickable for one-tap
 * placement.
 */

import { EditorSession } from "../session.js";
import { clear, el } from "./dom.js";

export class GlyphMenu {
  readonly root: HTMLElement;
  private boxesNode: HTMLElement;
  private gridNode: HTMLElement;
  private crumbNode: HTMLElement;
  private homeButton: HTMLButtonElement;

  constructor(private session: EditorSession) {
    this.root = el("div", "glyph-menu");
    this.homeButton = el("button", "home-button", "⌂ glyph menu");
    this.homeButton.addEventListener("click", () => session.home());
    this.crumbNode = el("div", "breadcrumb");
    this.boxesNode = el("div", "choice-boxes");
    this.gridNode = el("div", "glyph-grid");
    this.root.append(this.homeButton, this.crumbNode, this.boxesNode, this.gridNode);
    session.onChange(() => this.sync());
  }

  private sync(): void {
    const { region, filter, boxes, grid } = this.session.nav;
    this.crumbNode.textContent = this.session.breadcrumb().join(" › ");
    clear(this.boxesNode);
    clear(this.gridNode);
    if (!region) return;

    for (const box of boxes) {
      const group = el("fieldset", "choice-box");
      group.append(el("legend", "choice-box-name", box.attribute));
      for (const option of box.options) {
        const active = filter[box.attribute] === option;
        const button = el("button", active ? "option selected" : "option", option);
        button.addEventListener("click", () => {
          void (active
            ? this.session.revokeChoice(box.attribute)
            : this.session.applyChoice(box.attribute, option));
        });
        group.append(button);
      }
      this.boxesNode.append(group);
    }

    for (const glyph of grid) {
      const tile = el("button", "glyph-tile");
      tile.title = glyph.name;
      const img = el("img") as HTMLImageElement;
      img.src = this.session.api.assetUrl(glyph.code);
      img.alt = glyph.name;
      img.draggable = false;
      tile.draggable = true;
      tile.addEventListener("dragstart", (event) => {
        event.dataTransfer?.setData("text/glyph-code", glyph.code);
      });
      tile.addEventListener("click", () => {
        void this.session.place(glyph.code, 32 + 8 * (this.session.placements.length % 5),
                                32 + 24 * this.session.placements.length);
      });
      tile.append(img);
      this.gridNode.append(tile);
    }
  }
}
