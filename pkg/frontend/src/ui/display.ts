/**
 * The sign display: a whiteboard where dropped glyphs become draggable and
 * selectable. Dropping outside the canvas is a no-op; Delete removes the
 * selected glyph.
 */

import { EditorSession } from "../session.js";
import { clear, el } from "./dom.js";

export class SignDisplay {
  readonly root: HTMLElement;
  private canvas: HTMLElement;
  private dragIndex: number | null = null;
  private dragOffset: [number, number] = [0, 0];

  constructor(private session: EditorSession) {
    this.root = el("div", "sign-display");
    this.root.append(el("h2", "panel-title", "sign display"));
    this.canvas = el("div", "sign-canvas");
    this.canvas.tabIndex = 0;
    this.root.append(this.canvas);

    this.canvas.addEventListener("dragover", (event) => event.preventDefault());
    this.canvas.addEventListener("drop", (event) => {
      event.preventDefault();
      const code = event.dataTransfer?.getData("text/glyph-code");
      if (!code) return;
      const [x, y] = this.localPoint(event);
      void this.session.place(code, x, y);
    });
    this.canvas.addEventListener("keydown", (event) => {
      if (event.key === "Delete" && this.session.selected !== null) {
        void this.session.remove(this.session.selected);
      }
    });
    this.canvas.addEventListener("pointermove", (event) => {
      if (this.dragIndex === null) return;
      const [x, y] = this.localPoint(event);
      const node = this.canvas.querySelector(`[data-index="${this.dragIndex}"]`);
      if (node instanceof HTMLElement) {
        node.style.left = `${x - this.dragOffset[0]}px`;
        node.style.top = `${y - this.dragOffset[1]}px`;
      }
    });
    this.canvas.addEventListener("pointerup", (event) => {
      if (this.dragIndex === null) return;
      const index = this.dragIndex;
      this.dragIndex = null;
      const [x, y] = this.localPoint(event);
      void this.session.move(
        index,
        Math.max(0, Math.round(x - this.dragOffset[0])),
        Math.max(0, Math.round(y - this.dragOffset[1])),
      );
    });
    session.onChange(() => this.sync());
  }

  private localPoint(event: MouseEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  private sync(): void {
    clear(this.canvas);
    this.session.placements.forEach((p, index) => {
      const img = el("img", "placed-glyph") as HTMLImageElement;
      img.src = this.session.api.assetUrl(p.code);
      img.alt = p.code;
      img.draggable = false;
      img.style.left = `${p.x}px`;
      img.style.top = `${p.y}px`;
      img.style.zIndex = String(p.z + 1);
      img.dataset.index = String(index);
      img.classList.toggle("selected", this.session.selected === index);
      img.addEventListener("pointerdown", (event) => {
        this.session.selected = index;
        const rect = img.getBoundingClientRect();
        this.dragOffset = [event.clientX - rect.left, event.clientY - rect.top];
        this.dragIndex = index;
        this.canvas.focus();
        event.preventDefault();
      });
      img.addEventListener("dblclick", () => void this.session.remove(index));
      this.canvas.append(img);
    });
  }
}
