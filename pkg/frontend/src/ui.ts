// Public entry point: wraps the listed page elements in snippet
// providers, attaches the control panel, connects a transport, and
// boots the manager core.

import { ManagerCore, type ManagerDelegate, type ProviderRole } from "./core";
import { EditableSnippet, StaticSnippet, type Snippet } from "./provider";
import { Panel } from "./panel";
import { WebSocketTransport, type Transport } from "./transport";

export interface ManagerOptions {
  packages?: string[];
  base_path?: string;
  theme?: string;
  // websocket endpoint of a running `serve --listen` bridge
  server?: string;
  // injected by headless harnesses in place of a live websocket
  transport?: Transport;
  document?: Document;
}

const DEFAULT_SERVER = "ws://127.0.0.1:8111/";

export class ProofdeckManager {
  readonly panel: Panel;
  readonly core: ManagerCore | null = null;
  private snippets: Snippet[] = [];

  constructor(ids: string[], options: ManagerOptions = {}) {
    const doc = options.document ?? document;
    this.panel = new Panel(doc, options.theme);

    const found: { id: string; el: HTMLElement }[] = [];
    for (const id of ids) {
      const el = doc.getElementById(id);
      if (el === null) {
        this.panel.bootError(`cannot boot: no element with id "${id}"`);
        this.panel.setStatus("boot failed");
        return;
      }
      found.push({ id, el });
    }

    const docs: { id: string; role: ProviderRole; text: string }[] = [];
    const makeSnippet: ((core: ManagerCore) => Snippet)[] = [];
    for (let i = 0; i < found.length; i++) {
      const { id, el } = found[i];
      if (el.tagName === "TEXTAREA") {
        const area = el as HTMLTextAreaElement;
        docs.push({ id, role: "editable", text: area.value });
        makeSnippet.push((core) => new EditableSnippet(area, i, core));
      } else {
        docs.push({ id, role: "static", text: el.textContent ?? "" });
        makeSnippet.push(() => new StaticSnippet(el));
      }
    }

    const transport =
      options.transport ?? new WebSocketTransport(options.server ?? DEFAULT_SERVER);

    const delegate: ManagerDelegate = {
      providerChanged: (index) => {
        const core = this.core as ManagerCore;
        this.snippets[index].render(core.providers[index]);
      },
      goalsChanged: (text, count) => this.panel.setGoals(text, count),
      message: (level, text) => this.panel.addMessage(level, text),
      statusNote: (text) => this.panel.setStatus(text),
      progressChanged: (rows) => this.panel.setProgress(rows),
      connectionLost: (reason) => {
        this.panel.bootError(`connection lost: ${reason}`);
        this.panel.setStatus("disconnected");
      },
    };

    const core = new ManagerCore(docs, transport, delegate, {
      packages: options.packages ?? [],
      basePath: options.base_path ?? "./",
    });
    (this as { core: ManagerCore | null }).core = core;
    this.snippets = makeSnippet.map((mk) => mk(core));
    for (let i = 0; i < this.snippets.length; i++) {
      this.snippets[i].render(core.providers[i]);
    }

    this.panel.stepForward.addEventListener("click", () => core.stepForward());
    this.panel.stepBack.addEventListener("click", () => core.stepBack());
    this.panel.toCursor.addEventListener("click", () => this.gotoCursor());
    doc.addEventListener("keydown", (ev) => this.onKey(ev as KeyboardEvent));

    core.start();
    this.panel.setStatus("ready");
  }

  stepForward(): void {
    this.core?.stepForward();
  }

  stepBack(): void {
    this.core?.stepBack();
  }

  gotoCursor(): void {
    if (this.core === null) return;
    for (let i = 0; i < this.snippets.length; i++) {
      const at = this.snippets[i].cursorByteOffset();
      if (at !== null) {
        this.core.gotoCursor(i, at);
        return;
      }
    }
    this.panel.setStatus("place the cursor in an editable snippet first");
  }

  private onKey(ev: KeyboardEvent): void {
    if (!ev.altKey || ev.ctrlKey || ev.metaKey) return;
    if (ev.key === "ArrowDown") {
      ev.preventDefault();
      this.stepForward();
    } else if (ev.key === "ArrowUp") {
      ev.preventDefault();
      this.stepBack();
    } else if (ev.key === "Enter") {
      ev.preventDefault();
      this.gotoCursor();
    }
  }
}
