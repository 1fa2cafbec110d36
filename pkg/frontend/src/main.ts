/**
 * Editor entry point: four functional areas (sign display, glyph menu with
 * the puppet, hint panel, command bar) wired to one session.
 */

import { ApiClient } from "./api.js";
import { EditorSession } from "./session.js";
import { CommandBar } from "./ui/commandbar.js";
import { SignDisplay } from "./ui/display.js";
import { el } from "./ui/dom.js";
import { HintPanel } from "./ui/hints.js";
import { GlyphMenu } from "./ui/menu.js";
import { PuppetPanel } from "./ui/puppet.js";
import { ReviewPanel } from "./ui/reviewpanel.js";

async function boot(): Promise<void> {
  const app = document.querySelector<HTMLDivElement>("#app");
  if (!app) throw new Error("missing #app container");

  const api = new ApiClient("");
  const session = new EditorSession(api);

  const menuArea = el("div", "menu-area");
  const puppet = new PuppetPanel(session, menuArea);
  const menu = new GlyphMenu(session);
  menuArea.append(puppet.root, menu.root);

  const display = new SignDisplay(session);
  const hints = new HintPanel(session);
  const reviewPanel = new ReviewPanel(session);
  const commands = new CommandBar(session, reviewPanel);

  app.append(commands.root, display.root, menuArea, hints.root, reviewPanel.root);

  await session.init();
  puppet.render(session.regions);
}

void boot();
