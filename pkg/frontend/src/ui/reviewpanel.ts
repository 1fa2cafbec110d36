/**
 * Recognition review: the page image with recognized boxes overlaid, one
 * decision row per glyph (accept / pick an alternate / delete), unresolved
 * blobs resolvable by code, then finalize into the editor.
 */

import { EditorSession } from "../session.js";
import { ReviewSession } from "../review.js";
import { clear, el } from "./dom.js";

export class ReviewPanel {
  readonly root: HTMLElement;
  private review: ReviewSession | null = null;

  constructor(private session: EditorSession) {
    this.root = el("div", "review-panel hidden");
  }

  open(review: ReviewSession): void {
    this.review = review;
    this.root.classList.remove("hidden");
    this.render();
  }

  close(): void {
    this.review = null;
    this.root.classList.add("hidden");
    clear(this.root);
  }

  private render(): void {
    const review = this.review;
    if (!review?.report) return;
    clear(this.root);
    this.root.append(el("h2", "panel-title", "recognition review"));

    const overlay = el("img", "review-overlay") as HTMLImageElement;
    overlay.src = review.overlayUrl();
    overlay.alt = "recognized page";
    this.root.append(overlay);

    const list = el("div", "review-list");
    review.report.recognized.forEach((glyph, i) => {
      const row = el("div", "review-row");
      const preview = el("img") as HTMLImageElement;
      preview.src = this.session.api.assetUrl(glyph.code);
      preview.alt = glyph.code;
      row.append(preview);
      row.append(el("span", "review-code", `${glyph.code} (${glyph.confidence.toFixed(2)})`));

      const choice = el("select") as HTMLSelectElement;
      const keep = el("option", undefined, "accept") as HTMLOptionElement;
      keep.value = "accept";
      choice.append(keep);
      for (const alternate of glyph.alternates) {
        const option = el("option", undefined, `replace → ${alternate}`) as HTMLOptionElement;
        option.value = alternate;
        choice.append(option);
      }
      const drop = el("option", undefined, "delete") as HTMLOptionElement;
      drop.value = "__delete__";
      choice.append(drop);
      choice.addEventListener("change", () => {
        if (choice.value === "accept") review.accept(i);
        else if (choice.value === "__delete__") review.remove(i);
        else review.replace(i, choice.value);
      });
      row.append(choice);
      list.append(row);
    });

    review.report.unresolved.forEach((blob, i) => {
      const row = el("div", "review-row unresolved");
      row.append(el("span", "review-code", `blob b${i} (${blob.area} px)`));
      const input = el("input") as HTMLInputElement;
      input.placeholder = "glyph code to assign";
      input.addEventListener("change", () => {
        if (input.value) review.resolveBlob(i, input.value.trim());
      });
      row.append(input);
      list.append(row);
    });
    this.root.append(list);

    const actions = el("div", "review-actions");
    const finalize = el("button", "icon-button", "✓ finalize");
    finalize.addEventListener("click", () => {
      void review.finalize().then(({ document: doc }) => {
        const first = doc.columns.flat()[0];
        if (first) {
          this.session.placements = first.placements.map((p) => ({ ...p }));
          void this.session.refreshHints();
        }
        this.close();
      });
    });
    const cancel = el("button", "icon-button", "✕ cancel");
    cancel.addEventListener("click", () => this.close());
    actions.append(finalize, cancel);
    this.root.append(actions);
  }
}
