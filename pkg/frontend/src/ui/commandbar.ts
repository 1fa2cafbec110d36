/**
 * Command bar: save/load documents, publish the sign to the corpus, start
 * an OGR upload, and go home. Icons first, minimal text.
 */

import { EditorSession } from "../session.js";
import { ReviewSession } from "../review.js";
import { el } from "./dom.js";
import { ReviewPanel } from "./reviewpanel.js";

export class CommandBar {
  readonly root: HTMLElement;
  private status: HTMLElement;

  constructor(
    private session: EditorSession,
    private reviewPanel: ReviewPanel,
  ) {
    this.root = el("div", "command-bar");
    this.status = el("span", "status");

    const save = this.button("💾", "save document", async () => {
      const docId = window.prompt("document id", "draft") ?? "";
      if (!docId) return;
      await this.session.save(docId);
      this.say(`saved ${docId}`);
    });
    const load = this.button("📂", "load document", async () => {
      const docId = window.prompt("document id", "draft") ?? "";
      if (!docId) return;
      await this.session.load(docId);
      this.say(`loaded ${docId}`);
    });
    const publish = this.button("📚", "store sign in corpus", async () => {
      const ids = await this.session.publishSign();
      await this.session.refreshHints();
      this.say(`stored (${ids.length})`);
    });
    const home = this.button("⌂", "home screen", async () => this.session.home());

    const upload = el("label", "icon-button");
    upload.title = "recognize a page image";
    upload.textContent = "📷";
    const file = el("input") as HTMLInputElement;
    file.type = "file";
    file.accept = "image/png,image/x-portable-graymap";
    file.style.display = "none";
    file.addEventListener("change", () => {
      const chosen = file.files?.[0];
      if (chosen) void this.startOgr(chosen);
      file.value = "";
    });
    upload.append(file);

    this.root.append(save, load, publish, upload, home, this.status);
  }

  private button(icon: string, title: string, action: () => Promise<void>): HTMLElement {
    const node = el("button", "icon-button", icon);
    node.title = title;
    node.addEventListener("click", () => {
      action().catch((err) => this.say(String(err), true));
    });
    return node;
  }

  private async startOgr(file: File): Promise<void> {
    this.say("recognizing…");
    const review = new ReviewSession(this.session.api);
    await review.upload(file);
    this.reviewPanel.open(review);
    this.say("review the recognition");
  }

  private say(text: string, isError = false): void {
    this.status.textContent = text;
    this.status.classList.toggle("error", isError);
  }
}
