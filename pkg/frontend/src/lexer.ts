// Sentence lexer, behaviorally identical to the engine's: terminator dot
// followed by ASCII whitespace or end of input, nested (* *) comments,
// "..." strings with "" as the escaped quote. All offsets are byte
// offsets into the UTF-8 encoding, matching the Loc values the engine
// reports, so spans computed here can be compared with engine answers
// without conversion. Conformance is pinned by shared JSON vectors
// generated from the engine's own lexer.

export interface Sentence {
  text: string;
  start: number;
  end: number; // one past the terminator
}

export type Segment = {
  kind: "ws" | "comment" | "sentence";
  start: number;
  end: number;
  text: string;
};

export class LexError extends Error {
  reason: string;
  offset: number;

  constructor(reason: string, offset: number) {
    super(`${reason} at offset ${offset}`);
    this.reason = reason;
    this.offset = offset;
  }
}

const encoder = new TextEncoder();
const decoder = new TextDecoder();

const DOT = 0x2e;
const QUOTE = 0x22;
const OPEN = 0x28; // (
const STAR = 0x2a; // *
const CLOSE = 0x29; // )

function isWs(b: number): boolean {
  return b === 0x20 || b === 0x09 || b === 0x0d || b === 0x0a || b === 0x0c || b === 0x0b;
}

export function byteLength(text: string): number {
  return encoder.encode(text).length;
}

// Byte offset of a UTF-16 code unit index, for mapping editor positions
// to engine offsets.
export function byteOffsetOf(text: string, charIndex: number): number {
  return encoder.encode(text.slice(0, charIndex)).length;
}

function skipComment(data: Uint8Array, start: number): number {
  let depth = 1;
  let pos = start + 2;
  const n = data.length;
  while (depth > 0) {
    let found = -1;
    let open = false;
    for (let i = pos; i < n - 1; i++) {
      if (data[i] === OPEN && data[i + 1] === STAR) {
        found = i;
        open = true;
        break;
      }
      if (data[i] === STAR && data[i + 1] === CLOSE) {
        found = i;
        open = false;
        break;
      }
    }
    if (found < 0) throw new LexError("unterminated comment", start);
    depth += open ? 1 : -1;
    pos = found + 2;
  }
  return pos;
}

function skipString(data: Uint8Array, start: number): number {
  let pos = start + 1;
  const n = data.length;
  for (;;) {
    let q = -1;
    for (let i = pos; i < n; i++) {
      if (data[i] === QUOTE) {
        q = i;
        break;
      }
    }
    if (q < 0) throw new LexError("unterminated string", start);
    if (q + 1 < n && data[q + 1] === QUOTE) {
      pos = q + 2;
    } else {
      return q + 1;
    }
  }
}

function scanSentence(data: Uint8Array, start: number): number {
  let pos = start;
  const n = data.length;
  for (;;) {
    // next of: "(*", ".", or a quote, scanning left to right
    let at = -1;
    let tok: "comment" | "dot" | "quote" = "dot";
    for (let i = pos; i < n; i++) {
      const b = data[i];
      if (b === OPEN && i + 1 < n && data[i + 1] === STAR) {
        at = i;
        tok = "comment";
        break;
      }
      if (b === DOT) {
        at = i;
        tok = "dot";
        break;
      }
      if (b === QUOTE) {
        at = i;
        tok = "quote";
        break;
      }
    }
    if (at < 0) throw new LexError("unterminated sentence", start);
    if (tok === "dot") {
      if (at + 1 >= n || isWs(data[at + 1])) return at + 1;
      pos = at + 1;
    } else if (tok === "comment") {
      pos = skipComment(data, at);
    } else {
      pos = skipString(data, at);
    }
  }
}

export function* scan(src: string): Generator<Segment> {
  const data = encoder.encode(src);
  const n = data.length;
  let pos = 0;
  while (pos < n) {
    let solid = -1;
    for (let i = pos; i < n; i++) {
      if (!isWs(data[i])) {
        solid = i;
        break;
      }
    }
    if (solid < 0) {
      yield { kind: "ws", start: pos, end: n, text: decoder.decode(data.subarray(pos, n)) };
      return;
    }
    if (solid > pos) {
      yield { kind: "ws", start: pos, end: solid, text: decoder.decode(data.subarray(pos, solid)) };
    }
    pos = solid;
    let kind: Segment["kind"];
    let end: number;
    if (data[pos] === OPEN && pos + 1 < n && data[pos + 1] === STAR) {
      kind = "comment";
      end = skipComment(data, pos);
    } else {
      kind = "sentence";
      end = scanSentence(data, pos);
    }
    yield { kind, start: pos, end, text: decoder.decode(data.subarray(pos, end)) };
    pos = end;
  }
}

export function split(src: string): Sentence[] {
  const out: Sentence[] = [];
  for (const seg of scan(src)) {
    if (seg.kind === "sentence") out.push({ text: seg.text, start: seg.start, end: seg.end });
  }
  return out;
}

// Complete sentences plus the offset where the unconsumed remainder
// starts. Never throws: an unterminated construct ends the prefix.
export function splitPrefix(src: string): [Sentence[], number] {
  const out: Sentence[] = [];
  let end = 0;
  try {
    for (const seg of scan(src)) {
      if (seg.kind === "sentence") {
        out.push({ text: seg.text, start: seg.start, end: seg.end });
        end = seg.end;
      }
    }
  } catch (e) {
    if (!(e instanceof LexError)) throw e;
  }
  return [out, end];
}

// Index of the first sentence whose span ends at or after editOffset;
// sentences at smaller indices are unaffected by an edit there.
export function invalidateFrom(sentences: readonly Sentence[], editOffset: number): number {
  let lo = 0;
  let hi = sentences.length;
  while (lo < hi) {
    const mid = (lo + hi) >> 1;
    if (sentences[mid].end < editOffset) lo = mid + 1;
    else hi = mid;
  }
  return lo;
}
