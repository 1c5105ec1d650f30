// Document manager core, free of any DOM dependency so it can run under
// a headless driver. It owns the sentence bookkeeping for every
// provider, the single pending-ops queue toward the engine, and the
// mirror state that must match the engine chain at all times.
//
// Queue discipline: at most one command is on the wire at a time; the
// next op is sent only after the previous one received its terminal
// answer. Ops build their command lazily at send time, so a command
// always sees the chain as the engine will, and an op whose premise
// disappeared (sentence already cancelled, nothing left to add) skips
// itself instead of sending garbage.

import { invalidateFrom, splitPrefix, type Sentence } from "./lexer";
import {
  decodeAnswer,
  encodeCommand,
  type Answer,
  type Command,
  type Feedback,
  type OptionValue,
  type Path,
} from "./protocol";
import type { Transport } from "./transport";

export type VisualState = "fresh" | "processing" | "processed" | "error";

export interface UiSentence {
  text: string;
  start: number;
  end: number;
  sid: number | null;
  state: VisualState;
  // parse errors carry a span relative to the sentence text
  errorSpan: [number, number] | null;
}

export type ProviderRole = "editable" | "static";

export interface ProviderCore {
  id: string;
  role: ProviderRole;
  text: string;
  sentences: UiSentence[];
}

export interface ProgressRow {
  bundle: string;
  pkgId: string[];
  filesLoaded: number;
  filesTotal: number;
  done: boolean;
}

export interface ManagerDelegate {
  providerChanged(index: number): void;
  goalsChanged(text: string, count: number): void;
  message(level: string, text: string): void;
  statusNote(text: string): void;
  progressChanged(rows: ProgressRow[]): void;
  connectionLost(reason: string): void;
}

export interface CoreOptions {
  packages?: string[];
  basePath?: string;
}

interface Op {
  make: () => Command | null;
  consume: (a: Answer) => "more" | "done";
  tag?: string;
}

function sentencesOf(text: string): UiSentence[] {
  const [sents] = splitPrefix(text);
  return sents.map((s: Sentence) => ({
    text: s.text,
    start: s.start,
    end: s.end,
    sid: null,
    state: "fresh" as VisualState,
    errorSpan: null,
  }));
}

export class ManagerCore {
  readonly providers: ProviderCore[];
  private transport: Transport;
  private delegate: ManagerDelegate;
  private options: CoreOptions;

  private queue: Op[] = [];
  private inflight: Op | null = null;
  private pumpScheduled = false;
  private idleWaiters: (() => void)[] = [];

  private chain: number[] = [];
  // sid -> position of its sentence; null while a cancel is in flight
  // for a sentence that an edit already re-lexed away
  private located = new Map<number, { p: number; s: number } | null>();
  private nextEid = 100;
  private lastGood = 1;
  private progress = new Map<string, ProgressRow>();

  constructor(
    docs: { id: string; role: ProviderRole; text: string }[],
    transport: Transport,
    delegate: ManagerDelegate,
    options: CoreOptions = {},
  ) {
    this.providers = docs.map((d) => ({
      id: d.id,
      role: d.role,
      text: d.text,
      sentences: sentencesOf(d.text),
    }));
    this.transport = transport;
    this.delegate = delegate;
    this.options = options;
    transport.onLine((line) => this.handleLine(line));
    transport.onClose((reason) => this.delegate.connectionLost(reason));
  }

  // -- lifecycle

  start(): void {
    const packages = this.options.packages ?? [];
    this.enqueue({
      make: () => ({
        kind: "Init",
        loadpath: packages.map((n) => [n] as Path),
        initMods: [],
      }),
      consume: (a) => {
        if (a.kind === "Observed") {
          this.lastGood = a.sid;
        } else {
          this.report(a);
        }
        return "done";
      },
    });
    if (packages.length > 0) {
      let answered = 0;
      this.enqueue({
        make: () => ({
          kind: "InfoPkg",
          base: this.options.basePath ?? "",
          names: packages,
        }),
        consume: (a) => {
          answered += 1;
          if (a.kind === "LibInfo") {
            const total = a.bundle.pkgs.reduce((n, p) => n + p.voFiles.length, 0);
            this.progress.set(a.name, {
              bundle: a.name,
              pkgId: [a.name],
              filesLoaded: 0,
              filesTotal: total,
              done: false,
            });
            this.delegate.progressChanged(this.progressRows());
          } else {
            this.report(a);
          }
          return answered >= packages.length ? "done" : "more";
        },
      });
    }
  }

  loadPackage(name: string): void {
    this.enqueue({
      make: () => ({ kind: "LoadPkg", base: this.options.basePath ?? "", name }),
      consume: (a) => {
        if (a.kind === "LibProgress") return "more";
        if (a.kind === "LibLoaded") {
          const row = this.progress.get(a.name);
          if (row !== undefined) {
            row.done = true;
            row.filesLoaded = row.filesTotal;
          }
          this.delegate.progressChanged(this.progressRows());
        } else {
          this.report(a);
        }
        return "done";
      },
    });
  }

  setOption(path: Path, value: OptionValue): void {
    this.enqueue({
      make: () => ({ kind: "SetOpt", glob: null, path, value }),
      consume: (a) => {
        if (a.kind !== "CoqOpt") this.report(a);
        return "done";
      },
    });
  }

  // -- user operations

  stepForward(): void {
    this.enqueueAddOf(() => this.nextUnassigned());
    this.enqueueObserve();
    this.enqueueGoals();
  }

  stepBack(): void {
    this.enqueue({
      make: () => {
        const sid = this.chain[this.chain.length - 1];
        if (sid === undefined) {
          this.delegate.statusNote("already at the start of the document");
          return null;
        }
        return { kind: "Cancel", sid };
      },
      consume: (a) => {
        if (a.kind === "Cancelled") this.clearCancelled(a.sids);
        else this.report(a);
        return "done";
      },
    });
    this.enqueueGoals();
  }

  gotoCursor(providerIndex: number, byteOffset: number): void {
    const targets: { p: number; s: number }[] = [];
    for (let p = 0; p <= providerIndex && p < this.providers.length; p++) {
      const prov = this.providers[p];
      for (let s = 0; s < prov.sentences.length; s++) {
        const sent = prov.sentences[s];
        if (p === providerIndex && sent.start >= byteOffset) break;
        if (sent.sid === null) targets.push({ p, s });
      }
    }
    if (targets.length === 0) {
      this.delegate.statusNote("nothing to do before the cursor");
      return;
    }
    for (const t of targets) {
      this.enqueueAddOf(() => {
        const next = this.nextUnassigned();
        // the batch stops advancing if an earlier add failed or an edit
        // rewrote the plan
        if (next === null || next.p !== t.p || next.s !== t.s) return null;
        return next;
      });
    }
    this.enqueueObserve();
    this.enqueueGoals();
  }

  onEdit(providerIndex: number, newText: string, editOffset: number): void {
    const prov = this.providers[providerIndex];
    if (prov.role !== "editable") return;
    const old = prov.sentences;
    const idx = invalidateFrom(old, editOffset);

    let cancelSid: number | null = null;
    for (let i = idx; i < old.length; i++) {
      const sid = old[i].sid;
      if (sid !== null) {
        cancelSid = sid;
        break;
      }
    }

    prov.text = newText;
    const fresh = sentencesOf(newText);
    for (let i = 0; i < idx && i < fresh.length; i++) {
      fresh[i].sid = old[i].sid;
      fresh[i].state = old[i].state;
      fresh[i].errorSpan = old[i].errorSpan;
    }
    // sentences past the edit point lose their identity now; their sids
    // stay in the chain as zombies until the engine confirms the cancel
    for (let i = idx; i < old.length; i++) {
      const sid = old[i].sid;
      if (sid !== null) this.located.set(sid, null);
    }
    prov.sentences = fresh;
    this.delegate.providerChanged(providerIndex);

    if (cancelSid === null) return;

    const queued = this.queue.find((op) => op.tag === "edit-cancel") as
      | (Op & { target?: number })
      | undefined;
    if (queued !== undefined && queued.target !== undefined) {
      queued.target = Math.min(queued.target, cancelSid);
      return;
    }
    const op: Op & { target: number } = {
      tag: "edit-cancel",
      target: cancelSid,
      make: () => {
        if (!this.chain.includes(op.target)) return null;
        return { kind: "Cancel", sid: op.target };
      },
      consume: (a) => {
        if (a.kind === "Cancelled") this.clearCancelled(a.sids);
        else this.report(a);
        return "done";
      },
    };
    this.enqueue(op);
  }

  // -- queries

  snapshot(): {
    chain: number[];
    tip: number;
    sentences: { provider: string; text: string; sid: number | null; state: VisualState }[];
  } {
    const sentences = [];
    for (const prov of this.providers) {
      for (const s of prov.sentences) {
        sentences.push({ provider: prov.id, text: s.text, sid: s.sid, state: s.state });
      }
    }
    return { chain: [...this.chain], tip: this.tip(), sentences };
  }

  tip(): number {
    return this.chain.length > 0 ? this.chain[this.chain.length - 1] : 1;
  }

  whenIdle(): Promise<void> {
    if (this.inflight === null && this.queue.length === 0 && !this.pumpScheduled) {
      return Promise.resolve();
    }
    return new Promise((resolve) => this.idleWaiters.push(resolve));
  }

  progressRows(): ProgressRow[] {
    return [...this.progress.values()];
  }

  // -- op helpers

  private nextUnassigned(): { p: number; s: number } | null {
    for (let p = 0; p < this.providers.length; p++) {
      const sents = this.providers[p].sentences;
      for (let s = 0; s < sents.length; s++) {
        if (sents[s].sid === null) return { p, s };
      }
    }
    return null;
  }

  private enqueueAddOf(pick: () => { p: number; s: number } | null): void {
    let chosen: { p: number; s: number } | null = null;
    this.enqueue({
      make: () => {
        chosen = pick();
        if (chosen === null) {
          this.delegate.statusNote("no sentence to step over");
          return null;
        }
        const sent = this.providers[chosen.p].sentences[chosen.s];
        return { kind: "Add", sid: this.tip(), eid: this.nextEid++, text: sent.text };
      },
      consume: (a) => {
        if (chosen === null) return "done";
        const sent = this.providers[chosen.p].sentences[chosen.s];
        if (a.kind === "Added") {
          sent.sid = a.sid;
          sent.state = "fresh";
          sent.errorSpan = null;
          this.chain.push(a.sid);
          this.located.set(a.sid, chosen);
        } else if (a.kind === "CoqExn") {
          sent.state = "error";
          sent.errorSpan = a.loc === null ? null : [a.loc.start, a.loc.end];
          this.delegate.message("Error", a.message);
        } else {
          this.report(a);
        }
        this.delegate.providerChanged(chosen.p);
        return "done";
      },
    });
  }

  private enqueueObserve(): void {
    this.enqueue({
      make: () => {
        if (this.chain.length === 0) return null;
        return { kind: "Observe", sid: this.tip() };
      },
      consume: (a) => {
        if (a.kind === "Observed") {
          this.lastGood = a.sid;
        } else if (a.kind === "CoqExn") {
          if (a.pair !== null) {
            this.lastGood = a.pair[0];
            this.markError(a.pair[1]);
          }
          this.delegate.message("Error", a.message);
        } else {
          this.report(a);
        }
        return "done";
      },
    });
  }

  private enqueueGoals(): void {
    this.enqueue({
      make: () => ({ kind: "Goals", sid: this.goalsTarget() }),
      consume: (a) => {
        if (a.kind === "GoalInfo") this.delegate.goalsChanged(a.text, a.goalCount);
        else this.report(a);
        return "done";
      },
    });
  }

  private goalsTarget(): number {
    for (let i = this.chain.length - 1; i >= 0; i--) {
      const sid = this.chain[i];
      const loc = this.located.get(sid);
      if (loc != null && this.providers[loc.p].sentences[loc.s].state === "processed") {
        return sid;
      }
    }
    return 1;
  }

  // -- answer plumbing

  private enqueue(op: Op): void {
    this.queue.push(op);
    this.schedulePump();
  }

  private schedulePump(): void {
    if (this.pumpScheduled) return;
    this.pumpScheduled = true;
    queueMicrotask(() => {
      this.pumpScheduled = false;
      this.pump();
    });
  }

  private pump(): void {
    while (this.inflight === null && this.queue.length > 0) {
      const op = this.queue.shift() as Op;
      const cmd = op.make();
      if (cmd === null) continue;
      this.inflight = op;
      this.transport.send(encodeCommand(cmd));
    }
    if (this.inflight === null && this.queue.length === 0) {
      const waiters = this.idleWaiters;
      this.idleWaiters = [];
      for (const w of waiters) w();
    }
  }

  private handleLine(line: string): void {
    const a = decodeAnswer(line);
    if (a.kind === "Feedback") {
      this.routeFeedback(a.feedback);
      return;
    }
    if (a.kind === "LibProgress") {
      this.progress.set(a.info.bundle + "/" + a.info.pkgId.join("."), {
        bundle: a.info.bundle,
        pkgId: a.info.pkgId,
        filesLoaded: a.info.filesLoaded,
        filesTotal: a.info.filesTotal,
        done: a.info.filesLoaded >= a.info.filesTotal,
      });
      this.delegate.progressChanged(this.progressRows());
    }
    if (this.inflight === null) {
      this.delegate.message("Warning", `unsolicited answer: ${line}`);
      return;
    }
    if (this.inflight.consume(a) === "done") {
      this.inflight = null;
      this.schedulePump();
    }
  }

  private routeFeedback(fb: Feedback): void {
    const c = fb.contents;
    if (c.kind === "Message") {
      this.delegate.message(c.level, c.text);
      return;
    }
    const loc = this.located.get(fb.id);
    if (loc == null) return;
    const sent = this.providers[loc.p].sentences[loc.s];
    sent.state = c.kind === "ProcessingStarted" ? "processing" : "processed";
    this.delegate.providerChanged(loc.p);
  }

  private markError(sid: number): void {
    const loc = this.located.get(sid);
    if (loc == null) return;
    const sent = this.providers[loc.p].sentences[loc.s];
    sent.state = "error";
    sent.errorSpan = null;
    this.delegate.providerChanged(loc.p);
  }

  private clearCancelled(sids: number[]): void {
    const dying = new Set(sids);
    const touched = new Set<number>();
    for (const sid of sids) {
      const loc = this.located.get(sid);
      this.located.delete(sid);
      if (loc == null) continue;
      const sent = this.providers[loc.p].sentences[loc.s];
      if (sent.sid === sid) {
        sent.sid = null;
        sent.state = "fresh";
        sent.errorSpan = null;
        touched.add(loc.p);
      }
    }
    this.chain = this.chain.filter((sid) => !dying.has(sid));
    if (!this.chain.includes(this.lastGood)) this.lastGood = this.tip();
    for (const p of touched) this.delegate.providerChanged(p);
  }

  private report(a: Answer): void {
    if (a.kind === "CoqExn" || a.kind === "JsonExn") {
      this.delegate.message("Error", a.message);
    } else {
      this.delegate.message("Warning", `unexpected answer ${a.kind}`);
    }
  }
}
