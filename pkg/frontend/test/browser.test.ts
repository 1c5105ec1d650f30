// The whole deployment stack at once: a standalone page with the built
// loader baked in, executed inside a jsdom window, talking through the
// real websocket transport to the bridge, which forwards to the engine's
// TCP server. Everything the browser would do except paint.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync } from "node:fs";
import { connect } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { JSDOM, VirtualConsole } from "jsdom";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

const REPO = join(__dirname, "..", "..");
const FRONTEND = join(__dirname, "..");
const ENGINE_ADDR = "127.0.0.1:48171";
// the page boots with empty options, so the bridge must sit on the
// transport's default port
const BRIDGE_PORT = 8111;

const scratch = mkdtempSync(join(tmpdir(), "pd-browser-"));
let engine: ChildProcess | null = null;
let bridge: ChildProcess | null = null;

function until<T>(
  probe: () => T | null | undefined | false,
  what: string,
  timeoutMs = 15000,
): Promise<T> {
  const t0 = Date.now();
  return new Promise((resolve, reject) => {
    const poll = () => {
      let got: T | null | undefined | false = null;
      let err: unknown = null;
      try {
        got = probe();
      } catch (e) {
        err = e;
      }
      if (got) return resolve(got);
      if (Date.now() - t0 > timeoutMs) {
        return reject(new Error(`timed out waiting for ${what}${err ? `: ${err}` : ""}`));
      }
      setTimeout(poll, 50);
    };
    poll();
  });
}

function portOpen(port: number): Promise<boolean> {
  return new Promise((resolve) => {
    const sock = connect({ host: "127.0.0.1", port }, () => {
      sock.destroy();
      resolve(true);
    });
    sock.on("error", () => resolve(false));
  });
}

async function waitPort(port: number, what: string): Promise<void> {
  const t0 = Date.now();
  while (!(await portOpen(port))) {
    if (Date.now() - t0 > 15000) throw new Error(`${what} never came up on :${port}`);
    await new Promise((r) => setTimeout(r, 100));
  }
}

beforeAll(async () => {
  if (!existsSync(join(FRONTEND, "dist", "proofdeck-loader.js"))) {
    execFileSync("node", ["scripts/bundle.mjs"], { cwd: FRONTEND });
  }
  engine = spawn("python3", ["-m", "proofdeck", "serve", "--listen", ENGINE_ADDR], {
    stdio: "ignore",
  });
  await waitPort(48171, "engine");
  bridge = spawn(
    "node",
    ["scripts/ws-bridge.mjs", "--engine", ENGINE_ADDR, "--port", String(BRIDGE_PORT)],
    { cwd: FRONTEND, stdio: "ignore" },
  );
  await waitPort(BRIDGE_PORT, "bridge");
}, 40000);

afterAll(() => {
  bridge?.kill();
  engine?.kill();
  rmSync(scratch, { recursive: true, force: true });
});

describe("standalone page in a scripted window", () => {
  it("boots over the bridge, steps to Qed, and survives an edit", { timeout: 60000 }, async () => {
    const out = join(scratch, "intro.html");
    execFileSync("python3", [
      "-m",
      "proofdeck",
      "doc",
      join(REPO, "tests", "fixtures", "docs", "intro.v"),
      "-o",
      out,
      "--standalone",
      "--loader",
      join(FRONTEND, "dist", "proofdeck-loader.js"),
    ]);
    const html = readFileSync(out, "utf-8");
    expect(html).toContain("loadProofdeck('./')");
    expect(html).not.toContain('src="');

    const virtualConsole = new VirtualConsole();
    const pageErrors: string[] = [];
    virtualConsole.on("jsdomError", (e) => pageErrors.push(String(e)));
    const dom = new JSDOM(html, {
      url: "http://127.0.0.1/",
      runScripts: "dangerously",
      virtualConsole,
      beforeParse(window) {
        // jsdom leaves these off the window; the bundle needs them
        const w = window as unknown as Record<string, unknown>;
        if (!("TextEncoder" in window)) w.TextEncoder = TextEncoder;
        if (!("TextDecoder" in window)) w.TextDecoder = TextDecoder;
      },
    });
    const doc = dom.window.document;

    try {
      // the page's own tail script builds the manager once the DOM is
      // ready and the panel appears
      await until(() => doc.querySelector("#pd-panel .pd-toolbar"), "panel boot");
      const buttons = doc.querySelectorAll<HTMLButtonElement>(".pd-toolbar button");
      expect(buttons.length).toBe(3);
      const forward = buttons[1];
      expect(forward.title).toContain("step forward");

      // five clicks run the whole document: four proof sentences plus
      // the Check in the second snippet
      for (let i = 0; i < 5; i++) forward.click();
      await until(
        () => doc.querySelectorAll(".pd-overlay .pd-s-processed").length === 5 || null,
        "all five sentences processed",
      );
      const goals = doc.querySelector(".pd-goals") as HTMLElement;
      expect(goals.textContent).toBe("no goals");
      // the Check answered through the message log
      const logged = [...doc.querySelectorAll(".pd-messages li")].map(
        (li) => li.textContent ?? "",
      );
      expect(logged.some((t) => t.includes("hello"))).toBe(true);

      // a real input event through the page's own listener rewinds the
      // trailing sentences
      const area = doc.getElementById("pd-snippet-0") as HTMLTextAreaElement;
      const value = area.value;
      const at = value.indexOf("exact I.");
      area.value = value.slice(0, at) + "exact  I." + value.slice(at + 8);
      area.dispatchEvent(new dom.window.Event("input"));
      await until(() => {
        const over = area.parentElement?.querySelectorAll(".pd-overlay .pd-s-fresh");
        return over !== undefined && over.length === 2 ? over : null;
      }, "two sentences rewound");
      // the lemma statement and Proof. stayed processed
      const kept = area.parentElement?.querySelectorAll(".pd-overlay .pd-s-processed");
      expect(kept?.length).toBe(2);

      // stepping again re-runs the edited sentence over the same wire
      forward.click();
      await until(() => {
        const over = area.parentElement?.querySelectorAll(".pd-overlay .pd-s-processed");
        return over !== undefined && over.length === 3 ? over : null;
      }, "edited sentence reprocessed");

      expect(pageErrors).toEqual([]);
    } finally {
      dom.window.close();
    }
  });
});
