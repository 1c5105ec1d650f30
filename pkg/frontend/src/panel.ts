// Control panel: toolbar, goal buffer, message log, package progress.
// Goals always sit above messages; below the breakpoint the panel drops
// from a side column to a block under the document.

import type { ProgressRow } from "./core";

const CSS = `
#pd-panel { position: fixed; top: 0; right: 0; width: 22rem; height: 100vh;
  overflow-y: auto; box-sizing: border-box; padding: 0.75rem;
  border-left: 1px solid #ccc; background: #fafafa; font-family: sans-serif;
  font-size: 0.9rem; display: flex; flex-direction: column; gap: 0.5rem; }
#pd-panel.pd-theme-dark { background: #1e1e24; color: #ddd; border-color: #444; }
@media (max-width: 800px) {
  #pd-panel { position: static; width: auto; height: auto; border-left: none;
    border-top: 1px solid #ccc; margin-top: 1rem; }
}
.pd-toolbar { display: flex; gap: 0.25rem; align-items: center; }
.pd-toolbar button { font: inherit; padding: 0.15rem 0.5rem; }
.pd-status { margin-left: auto; font-style: italic; color: #666; }
.pd-goals { background: #fff; border: 1px solid #ddd; padding: 0.5rem; margin: 0;
  min-height: 6rem; white-space: pre-wrap; font-family: monospace; flex: 0 1 auto; }
#pd-panel.pd-theme-dark .pd-goals { background: #26262e; border-color: #444; }
.pd-messages { list-style: none; margin: 0; padding: 0; overflow-y: auto; flex: 1 1 8rem; }
.pd-messages li { border-bottom: 1px solid #eee; padding: 0.2rem 0;
  font-family: monospace; white-space: pre-wrap; }
.pd-messages li.pd-msg-error { color: #b00020; }
.pd-messages li.pd-msg-warning { color: #8a6d00; }
.pd-progress { border-collapse: collapse; width: 100%; }
.pd-progress td, .pd-progress th { border: 1px solid #ddd; padding: 0.15rem 0.4rem;
  text-align: left; }
.pd-boot-error { background: #b00020; color: #fff; padding: 0.5rem; }
.pd-editor { position: relative; }
.pd-editor .pd-overlay { position: absolute; inset: 0; margin: 0; padding: 0.5rem;
  border: 1px solid transparent; overflow: hidden; pointer-events: none;
  font-family: monospace; font-size: 0.9rem; line-height: inherit;
  white-space: pre-wrap; word-wrap: break-word; }
.pd-editor .pd-input { position: relative; background: transparent;
  color: transparent; caret-color: #111; }
.pd-s-processing { background: #fff3c4; }
.pd-s-processed { background: #d4edd4; }
.pd-s-error { background: #f6d3d3; }
.pd-err { text-decoration: underline wavy #b00020; }
.pd-static .pd-s-processed { background: #d4edd4; }
main { margin-right: 23rem; }
@media (max-width: 800px) { main { margin-right: auto; } }
`;

export class Panel {
  readonly root: HTMLElement;
  readonly stepBack: HTMLButtonElement;
  readonly stepForward: HTMLButtonElement;
  readonly toCursor: HTMLButtonElement;
  private status: HTMLElement;
  private goals: HTMLElement;
  private messages: HTMLElement;
  private progress: HTMLTableSectionElement;
  private doc: Document;

  constructor(doc: Document, theme?: string) {
    this.doc = doc;
    const style = doc.createElement("style");
    style.textContent = CSS;
    doc.head.append(style);

    this.root = doc.createElement("aside");
    this.root.id = "pd-panel";
    if (theme !== undefined) this.root.classList.add(`pd-theme-${theme}`);

    const toolbar = doc.createElement("div");
    toolbar.className = "pd-toolbar";
    this.stepBack = this.button("▲", "step back (Alt+Up)");
    this.stepForward = this.button("▼", "step forward (Alt+Down)");
    this.toCursor = this.button("⤓", "run to cursor (Alt+Enter)");
    this.status = doc.createElement("span");
    this.status.className = "pd-status";
    toolbar.append(this.stepBack, this.stepForward, this.toCursor, this.status);

    this.goals = doc.createElement("pre");
    this.goals.className = "pd-goals";
    this.goals.textContent = "no goals yet";

    this.messages = doc.createElement("ul");
    this.messages.className = "pd-messages";

    const table = doc.createElement("table");
    table.className = "pd-progress";
    this.progress = doc.createElement("tbody");
    table.append(this.progress);

    this.root.append(toolbar, this.goals, this.messages, table);
    doc.body.append(this.root);
  }

  private button(label: string, title: string): HTMLButtonElement {
    const b = this.doc.createElement("button");
    b.type = "button";
    b.textContent = label;
    b.title = title;
    return b;
  }

  setGoals(text: string, count: number): void {
    this.goals.textContent = count === 0 && text === "" ? "no goals" : text;
  }

  addMessage(level: string, text: string): void {
    const li = this.doc.createElement("li");
    li.className = `pd-msg-${level.toLowerCase()}`;
    li.textContent = text;
    this.messages.append(li);
    while (this.messages.childNodes.length > 200) {
      this.messages.removeChild(this.messages.firstChild as Node);
    }
  }

  setStatus(text: string): void {
    this.status.textContent = text;
  }

  setProgress(rows: ProgressRow[]): void {
    this.progress.textContent = "";
    for (const row of rows) {
      const tr = this.doc.createElement("tr");
      const name = this.doc.createElement("td");
      name.textContent = row.pkgId.join(".");
      const state = this.doc.createElement("td");
      state.textContent = row.done
        ? "loaded"
        : `${row.filesLoaded}/${row.filesTotal}`;
      tr.append(name, state);
      this.progress.append(tr);
    }
  }

  bootError(text: string): void {
    const div = this.doc.createElement("div");
    div.className = "pd-boot-error";
    div.textContent = text;
    this.root.prepend(div);
  }
}
