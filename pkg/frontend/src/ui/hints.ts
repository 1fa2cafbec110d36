/**
 * Hint panel: glyphs compatible with the ones already placed, straight from
 * the prediction endpoint. One click places a hinted glyph, no navigation.
 */

import { EditorSession } from "../session.js";
import { clear, el } from "./dom.js";

export class HintPanel {
  readonly root: HTMLElement;
  private list: HTMLElement;

  constructor(private session: EditorSession) {
    this.root = el("div", "hint-panel");
    this.root.append(el("h2", "panel-title", "hints"));
    this.list = el("div", "hint-list");
    this.root.append(this.list);
    session.onChange(() => this.sync());
  }

  private sync(): void {
    clear(this.list);
    for (const hint of this.session.hints) {
      const tile = el("button", "glyph-tile hint");
      tile.title = `${hint.code} (${hint.score}, ${hint.tier})`;
      const img = el("img") as HTMLImageElement;
      img.src = this.session.api.assetUrl(hint.code);
      img.alt = hint.code;
      img.draggable = false;
      tile.draggable = true;
      tile.addEventListener("dragstart", (event) => {
        event.dataTransfer?.setData("text/glyph-code", hint.code);
      });
      tile.addEventListener("click", () => {
        void this.session.place(
          hint.code,
          32 + 8 * (this.session.placements.length % 5),
          32 + 24 * this.session.placements.length,
        );
      });
      tile.append(img);
      this.list.append(tile);
    }
  }
}
