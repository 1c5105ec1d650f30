// Mirror invariant, checked against the real engine: a headless driver
// boots the manager core on a live stdio engine, fires 50 seeded
// step/edit events, and at the end the UI bookkeeping must equal the
// engine chain. The recorded traffic is then replayed into a fresh
// engine and must reproduce the answer stream byte for byte.

import { spawn } from "node:child_process";
import { describe, expect, it } from "vitest";
import { ManagerCore, type ManagerDelegate, type ProgressRow } from "../src/core";
import { byteLength } from "../src/lexer";
import { NodeProcessTransport } from "../src/transport_node";
import type { Transport } from "../src/transport";

const ENGINE = ["python3", "-m", "proofdeck", "serve", "--stdio"];

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

// wraps the real transport, recording traffic and asserting the queue
// discipline: a command may only go out once the previous one got its
// terminal answer
class CheckedTransport implements Transport {
  sent: string[] = [];
  received: string[] = [];
  violations: string[] = [];
  private outstanding = 0;

  constructor(private inner: Transport) {}

  send(line: string): void {
    if (this.outstanding > 0) {
      this.violations.push(`sent ${line} with ${this.outstanding} outstanding`);
    }
    this.outstanding += 1;
    this.sent.push(line);
    this.inner.send(line);
  }

  onLine(cb: (line: string) => void): void {
    this.inner.onLine((line) => {
      this.received.push(line);
      const kind = JSON.parse(line)[0] as string;
      if (kind !== "Feedback" && kind !== "LibProgress") this.outstanding -= 1;
      cb(line);
    });
  }

  onClose(cb: (reason: string) => void): void {
    this.inner.onClose(cb);
  }

  close(): void {
    this.inner.close();
  }
}

class NullDelegate implements ManagerDelegate {
  providerChanged(): void {}
  goalsChanged(): void {}
  message(): void {}
  statusNote(): void {}
  progressChanged(_rows: ProgressRow[]): void {}
  connectionLost(): void {}
}

// replay a command log into a fresh engine and capture the same number
// of answer lines
function replay(commands: string[], expectLines: number): Promise<string[]> {
  return new Promise((resolve, reject) => {
    const proc = spawn(ENGINE[0], ENGINE.slice(1), {
      stdio: ["pipe", "pipe", "inherit"],
    });
    const lines: string[] = [];
    let buffer = "";
    const timer = setTimeout(() => {
      proc.kill();
      reject(new Error(`replay timed out with ${lines.length}/${expectLines} lines`));
    }, 20000);
    proc.stdout.setEncoding("utf-8");
    proc.stdout.on("data", (chunk: string) => {
      buffer += chunk;
      for (;;) {
        const nl = buffer.indexOf("\n");
        if (nl < 0) break;
        const line = buffer.slice(0, nl);
        buffer = buffer.slice(nl + 1);
        if (line.trim() === "") continue;
        lines.push(line);
        if (lines.length === expectLines) {
          clearTimeout(timer);
          proc.kill();
          resolve(lines);
        }
      }
    });
    proc.on("error", (err) => {
      clearTimeout(timer);
      reject(err);
    });
    proc.stdin.write(commands.map((c) => c + "\n").join(""));
  });
}

// the expected chain is what the answer stream says it should be
function chainFromAnswers(lines: string[]): number[] {
  let chain: number[] = [];
  for (const line of lines) {
    const arr = JSON.parse(line) as unknown[];
    if (arr[0] === "Added") chain.push(arr[1] as number);
    if (arr[0] === "Cancelled") {
      const dying = new Set(arr[1] as number[]);
      chain = chain.filter((sid) => !dying.has(sid));
    }
  }
  return chain;
}

const DOC_A = [
  "Lemma one : True.",
  "Proof.",
  "exact I.",
  "Qed.",
  "Lemma two : A -> A.",
  "Proof.",
  "intro H.",
  "exact H.",
  "Qed.",
].join(" ");

const DOC_B = [
  "Check one.",
  "Lemma three : B /\\ C -> C.",
  "Proof.",
  "intro HBC.",
  "destruct HBC as [HB HC].",
  "exact HC.",
  "Qed.",
].join("\n");

describe("live engine mirror", () => {
  it(
    "50 seeded events leave the UI equal to the engine chain",
    { timeout: 60000 },
    async () => {
      const wire = new CheckedTransport(new NodeProcessTransport(ENGINE));
      const core = new ManagerCore(
        [
          { id: "a", role: "editable", text: DOC_A },
          { id: "b", role: "editable", text: DOC_B },
        ],
        wire,
        new NullDelegate(),
        {},
      );
      const rand = mulberry32(0x5eed);
      const texts = [DOC_A, DOC_B];

      core.start();
      await core.whenIdle();

      const applied: string[] = [];
      for (let i = 0; i < 50; i++) {
        const roll = rand();
        if (roll < 0.55) {
          applied.push("forward");
          core.stepForward();
        } else if (roll < 0.75) {
          applied.push("back");
          core.stepBack();
        } else {
          const p = rand() < 0.5 ? 0 : 1;
          const at = Math.floor(rand() * (byteLength(texts[p]) + 1));
          applied.push(`edit ${p}@${at}`);
          core.onEdit(p, texts[p], at);
        }
        await core.whenIdle();

        // the document-order sid sequence must equal the chain at every
        // quiescent point, not only at the end
        const snap = core.snapshot();
        const docSids = snap.sentences
          .map((s) => s.sid)
          .filter((sid): sid is number => sid !== null);
        expect(docSids, `after event ${i}: ${applied[i]}`).toEqual(snap.chain);
      }
      await core.whenIdle();

      const snap = core.snapshot();
      expect(wire.violations).toEqual([]);

      // chain derived from the engine's own answers
      expect(snap.chain).toEqual(chainFromAnswers(wire.received));

      // sids are strictly increasing along the document
      for (let i = 1; i < snap.chain.length; i++) {
        expect(snap.chain[i]).toBeGreaterThan(snap.chain[i - 1]);
      }

      // every surviving sentence has been processed; cancelled ones are
      // back to fresh with no sid
      for (const s of snap.sentences) {
        if (s.sid !== null) expect(s.state).toBe("processed");
        else expect(s.state === "fresh" || s.state === "error").toBe(true);
      }

      // at least one of each event class actually ran
      expect(applied.some((e) => e === "forward")).toBe(true);
      expect(applied.some((e) => e === "back")).toBe(true);
      expect(applied.some((e) => e.startsWith("edit"))).toBe(true);
      // and the edits really caused cancels beyond the step-backs
      expect(
        wire.sent.filter((l) => l.startsWith('["Cancel"')).length,
      ).toBeGreaterThan(applied.filter((e) => e === "back").length);

      console.info(
        `mirror: ${wire.sent.length} commands, ${wire.received.length} answers, ` +
          `chain length ${snap.chain.length}, events: ` +
          `${applied.filter((e) => e === "forward").length}f/` +
          `${applied.filter((e) => e === "back").length}b/` +
          `${applied.filter((e) => e.startsWith("edit")).length}e`,
      );

      // a fresh engine fed the same commands answers the same bytes
      const fresh = await replay(wire.sent, wire.received.length);
      expect(fresh).toEqual(wire.received);

      wire.close();
    },
  );
});
