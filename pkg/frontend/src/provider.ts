// Snippet providers bind document elements to the manager core. An
// editable snippet wraps a textarea with a highlight overlay; a static
// snippet recolors its code element in place. All span math is done in
// byte offsets (the core and the engine agree on those) and converted
// to character offsets only at the DOM boundary.

import { byteOffsetOf } from "./lexer";
import type { ManagerCore, ProviderCore, UiSentence } from "./core";

const encoder = new TextEncoder();

// Walks a string once, mapping monotonically increasing byte offsets to
// character offsets.
class ByteCursor {
  private text: string;
  private char = 0;
  private byte = 0;

  constructor(text: string) {
    this.text = text;
  }

  charAt(byteOffset: number): number {
    while (this.byte < byteOffset && this.char < this.text.length) {
      const cp = this.text.codePointAt(this.char) as number;
      const width = cp > 0xffff ? 2 : 1;
      this.byte += encoder.encode(this.text.slice(this.char, this.char + width)).length;
      this.char += width;
    }
    return this.char;
  }
}

function spanFor(doc: Document, sent: UiSentence, body: string): HTMLElement {
  const span = doc.createElement("span");
  span.className = `pd-s pd-s-${sent.state}`;
  if (sent.state === "error" && sent.errorSpan !== null) {
    const cur = new ByteCursor(body);
    const a = cur.charAt(sent.errorSpan[0]);
    const b = cur.charAt(sent.errorSpan[1]);
    span.append(body.slice(0, a));
    const mark = doc.createElement("span");
    mark.className = "pd-err";
    mark.textContent = body.slice(a, b);
    span.append(mark, body.slice(b));
  } else {
    span.textContent = body;
  }
  return span;
}

function renderInto(doc: Document, host: HTMLElement, prov: ProviderCore): void {
  host.textContent = "";
  const cur = new ByteCursor(prov.text);
  let at = 0;
  for (const sent of prov.sentences) {
    const start = cur.charAt(sent.start);
    const end = cur.charAt(sent.end);
    if (start > at) host.append(prov.text.slice(at, start));
    host.append(spanFor(doc, sent, prov.text.slice(start, end)));
    at = end;
  }
  if (at < prov.text.length) host.append(prov.text.slice(at));
}

export interface Snippet {
  readonly editable: boolean;
  render(prov: ProviderCore): void;
  cursorByteOffset(): number | null;
}

export class StaticSnippet implements Snippet {
  readonly editable = false;
  private host: HTMLElement;

  constructor(host: HTMLElement) {
    this.host = host;
    this.host.classList.add("pd-static");
  }

  render(prov: ProviderCore): void {
    renderInto(this.host.ownerDocument, this.host, prov);
  }

  cursorByteOffset(): number | null {
    return null;
  }
}

export class EditableSnippet implements Snippet {
  readonly editable = true;
  private area: HTMLTextAreaElement;
  private overlay: HTMLPreElement;
  private lastText: string;

  constructor(
    area: HTMLTextAreaElement,
    private index: number,
    private core: ManagerCore,
  ) {
    this.area = area;
    this.lastText = area.value;
    const doc = area.ownerDocument;
    const box = doc.createElement("div");
    box.className = "pd-editor";
    this.overlay = doc.createElement("pre");
    this.overlay.className = "pd-overlay";
    this.overlay.setAttribute("aria-hidden", "true");
    area.replaceWith(box);
    box.append(this.overlay, area);
    area.classList.add("pd-input");
    area.addEventListener("input", () => this.onInput());
    area.addEventListener("scroll", () => {
      this.overlay.scrollTop = area.scrollTop;
      this.overlay.scrollLeft = area.scrollLeft;
    });
  }

  private onInput(): void {
    const before = this.lastText;
    const after = this.area.value;
    this.lastText = after;
    let prefix = 0;
    const limit = Math.min(before.length, after.length);
    while (prefix < limit && before[prefix] === after[prefix]) prefix += 1;
    // never split a surrogate pair at the edit point
    if (prefix > 0 && (before.charCodeAt(prefix - 1) & 0xfc00) === 0xd800) prefix -= 1;
    this.core.onEdit(this.index, after, byteOffsetOf(before, prefix));
  }

  render(prov: ProviderCore): void {
    if (this.area.value !== prov.text) {
      this.area.value = prov.text;
      this.lastText = prov.text;
    }
    renderInto(this.area.ownerDocument, this.overlay, prov);
    // keep the scroll box tall enough for the text it mirrors
    this.area.rows = Math.max(2, prov.text.split("\n").length);
  }

  cursorByteOffset(): number | null {
    const doc = this.area.ownerDocument;
    if (doc.activeElement !== this.area) return null;
    return byteOffsetOf(this.area.value, this.area.selectionStart ?? 0);
  }
}
