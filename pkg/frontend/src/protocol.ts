// Wire protocol: one JSON value per line, constructor-tagged arrays for
// commands and answers, plain objects for records. Encodings are
// byte-compatible with the engine's (compact separators, no ASCII
// escaping), pinned by shared round-trip vectors.

export type Path = string[];

export type OptionValue =
  | { kind: "Bool"; value: boolean }
  | { kind: "Int"; value: number }
  | { kind: "String"; value: string };

export interface Loc {
  start: number;
  end: number;
}

export type FeedbackContents =
  | { kind: "ProcessingStarted" }
  | { kind: "Processed" }
  | { kind: "Message"; level: "Info" | "Warning" | "Error"; text: string };

export interface Feedback {
  id: number;
  contents: FeedbackContents;
}

export interface PackageInfo {
  pkgId: string[];
  voFiles: string[];
  cmaFiles: string[];
}

export interface BundleInfo {
  desc: string;
  deps: string[];
  pkgs: PackageInfo[];
}

export interface ProgressInfo {
  bundle: string;
  pkgId: string[];
  filesLoaded: number;
  filesTotal: number;
}

export type Command =
  | { kind: "Init"; loadpath: Path[]; initMods: Path[] }
  | { kind: "Add"; sid: number; eid: number; text: string }
  | { kind: "Cancel"; sid: number }
  | { kind: "Observe"; sid: number }
  | { kind: "Goals"; sid: number }
  | { kind: "SetOpt"; glob: boolean | null; path: Path; value: OptionValue }
  | { kind: "GetOpt"; path: Path }
  | { kind: "InfoPkg"; base: string; names: string[] }
  | { kind: "LoadPkg"; base: string; name: string }
  | { kind: "GetInfo" };

export type Answer =
  | { kind: "Added"; sid: number }
  | { kind: "Cancelled"; sids: number[] }
  | { kind: "Observed"; sid: number }
  | { kind: "GoalInfo"; sid: number; text: string; goalCount: number }
  | { kind: "Feedback"; feedback: Feedback }
  | { kind: "CoqOpt"; value: OptionValue }
  | { kind: "CoqExn"; loc: Loc | null; pair: [number, number] | null; message: string }
  | { kind: "JsonExn"; message: string }
  | { kind: "LibInfo"; name: string; bundle: BundleInfo }
  | { kind: "LibProgress"; info: ProgressInfo }
  | { kind: "LibLoaded"; name: string };

class DecodeError extends Error {}

function fail(msg: string): never {
  throw new DecodeError(msg);
}

function asInt(j: unknown): number {
  if (typeof j !== "number" || !Number.isInteger(j)) fail("expected an integer");
  return j;
}

function asStr(j: unknown): string {
  if (typeof j !== "string") fail("expected a string");
  return j;
}

function asBool(j: unknown): boolean {
  if (typeof j !== "boolean") fail("expected a boolean");
  return j;
}

function asStrList(j: unknown): string[] {
  if (!Array.isArray(j)) fail("expected an array");
  return j.map(asStr);
}

function asPathList(j: unknown): Path[] {
  if (!Array.isArray(j)) fail("expected an array");
  return j.map(asStrList);
}

function asIntList(j: unknown): number[] {
  if (!Array.isArray(j)) fail("expected an array");
  return j.map(asInt);
}

function asPair(j: unknown): [number, number] {
  if (!Array.isArray(j) || j.length !== 2) fail("expected a two-element array");
  return [asInt(j[0]), asInt(j[1])];
}

function asOptionValue(j: unknown): OptionValue {
  if (!Array.isArray(j) || j.length !== 2 || typeof j[0] !== "string") fail("expected [kind, value]");
  const [kind, value] = j;
  if (kind === "Bool") return { kind, value: asBool(value) };
  if (kind === "Int") return { kind, value: asInt(value) };
  if (kind === "String") return { kind, value: asStr(value) };
  fail(`unknown option kind ${kind}`);
}

function isRecord(j: unknown): j is Record<string, unknown> {
  return typeof j === "object" && j !== null && !Array.isArray(j);
}

function asLoc(j: unknown): Loc {
  if (!isRecord(j) || Object.keys(j).length !== 2 || !("start" in j) || !("end" in j)) {
    fail("expected {start, end}");
  }
  const start = asInt(j.start);
  const end = asInt(j.end);
  if (start < 0 || end < start) fail("expected 0 <= start <= end");
  return { start, end };
}

const LEVELS = ["Info", "Warning", "Error"] as const;

function asFeedback(j: unknown): Feedback {
  if (!isRecord(j) || Object.keys(j).length !== 2 || !("id" in j) || !("contents" in j)) {
    fail("expected {id, contents}");
  }
  const id = asInt(j.id);
  if (id < 1) fail("feedback id must be a positive integer");
  const c = j.contents;
  if (!Array.isArray(c) || c.length === 0 || typeof c[0] !== "string") {
    fail("feedback contents must be a tagged array");
  }
  const tag = c[0];
  if (tag === "ProcessingStarted" && c.length === 1) return { id, contents: { kind: tag } };
  if (tag === "Processed" && c.length === 1) return { id, contents: { kind: tag } };
  if (tag === "Message") {
    if (
      c.length === 3 &&
      Array.isArray(c[1]) &&
      c[1].length === 1 &&
      (LEVELS as readonly string[]).includes(c[1][0]) &&
      typeof c[2] === "string"
    ) {
      return { id, contents: { kind: "Message", level: c[1][0], text: c[2] } };
    }
    fail("malformed Message contents");
  }
  fail(`unknown feedback contents ${tag}`);
}

function asPackage(j: unknown): PackageInfo {
  if (!isRecord(j)) fail("package must be an object");
  const keys = Object.keys(j).sort();
  if (keys.join(",") !== "cma_files,pkg_id,vo_files") fail("bad package keys");
  return {
    pkgId: asStrList(j.pkg_id),
    voFiles: asStrList(j.vo_files),
    cmaFiles: asStrList(j.cma_files),
  };
}

function asBundle(j: unknown): BundleInfo {
  if (!isRecord(j)) fail("bundle must be an object");
  const keys = Object.keys(j).sort();
  if (keys.join(",") !== "deps,desc,pkgs") fail("bad bundle keys");
  if (!Array.isArray(j.pkgs)) fail("pkgs must be an array");
  return { desc: asStr(j.desc), deps: asStrList(j.deps), pkgs: j.pkgs.map(asPackage) };
}

function asProgress(j: unknown): ProgressInfo {
  if (!isRecord(j)) fail("progress must be an object");
  const keys = Object.keys(j).sort();
  if (keys.join(",") !== "bundle,files_loaded,files_total,pkg_id") fail("bad progress keys");
  const filesLoaded = asInt(j.files_loaded);
  const filesTotal = asInt(j.files_total);
  if (filesLoaded < 0 || filesTotal < filesLoaded) fail("bad progress counts");
  return { bundle: asStr(j.bundle), pkgId: asStrList(j.pkg_id), filesLoaded, filesTotal };
}

function encFeedback(fb: Feedback): unknown {
  const c = fb.contents;
  let contents: unknown[];
  if (c.kind === "Message") contents = ["Message", [c.level], c.text];
  else contents = [c.kind];
  return { id: fb.id, contents };
}

function encBundle(b: BundleInfo): unknown {
  return {
    desc: b.desc,
    deps: b.deps,
    pkgs: b.pkgs.map((p) => ({ pkg_id: p.pkgId, vo_files: p.voFiles, cma_files: p.cmaFiles })),
  };
}

function encProgress(p: ProgressInfo): unknown {
  return {
    bundle: p.bundle,
    pkg_id: p.pkgId,
    files_loaded: p.filesLoaded,
    files_total: p.filesTotal,
  };
}

export function encodeCommand(cmd: Command): string {
  let payload: unknown[];
  switch (cmd.kind) {
    case "Init":
      payload = ["Init", cmd.loadpath, cmd.initMods];
      break;
    case "Add":
      payload = ["Add", cmd.sid, cmd.eid, cmd.text];
      break;
    case "Cancel":
      payload = ["Cancel", cmd.sid];
      break;
    case "Observe":
      payload = ["Observe", cmd.sid];
      break;
    case "Goals":
      payload = ["Goals", cmd.sid];
      break;
    case "SetOpt":
      payload = ["SetOpt", cmd.glob, cmd.path, [cmd.value.kind, cmd.value.value]];
      break;
    case "GetOpt":
      payload = ["GetOpt", cmd.path];
      break;
    case "InfoPkg":
      payload = ["InfoPkg", cmd.base, cmd.names];
      break;
    case "LoadPkg":
      payload = ["LoadPkg", cmd.base, cmd.name];
      break;
    case "GetInfo":
      payload = ["GetInfo"];
      break;
  }
  return JSON.stringify(payload);
}

export function encodeAnswer(ans: Answer): string {
  let payload: unknown[];
  switch (ans.kind) {
    case "Added":
      payload = ["Added", ans.sid];
      break;
    case "Cancelled":
      payload = ["Cancelled", ans.sids];
      break;
    case "Observed":
      payload = ["Observed", ans.sid];
      break;
    case "GoalInfo":
      payload = ["GoalInfo", ans.sid, ans.text, ans.goalCount];
      break;
    case "Feedback":
      payload = ["Feedback", encFeedback(ans.feedback)];
      break;
    case "CoqOpt":
      payload = ["CoqOpt", [ans.value.kind, ans.value.value]];
      break;
    case "CoqExn":
      payload = [
        "CoqExn",
        ans.loc === null ? null : { start: ans.loc.start, end: ans.loc.end },
        ans.pair,
        ans.message,
      ];
      break;
    case "JsonExn":
      payload = ["JsonExn", ans.message];
      break;
    case "LibInfo":
      payload = ["LibInfo", ans.name, encBundle(ans.bundle)];
      break;
    case "LibProgress":
      payload = ["LibProgress", encProgress(ans.info)];
      break;
    case "LibLoaded":
      payload = ["LibLoaded", ans.name];
      break;
  }
  return JSON.stringify(payload);
}

type Decoder<T> = (args: unknown[]) => T;

const COMMAND_DECODERS: Record<string, [number, Decoder<Command>]> = {
  Init: [2, (a) => ({ kind: "Init", loadpath: asPathList(a[0]), initMods: asPathList(a[1]) })],
  Add: [3, (a) => ({ kind: "Add", sid: asInt(a[0]), eid: asInt(a[1]), text: asStr(a[2]) })],
  Cancel: [1, (a) => ({ kind: "Cancel", sid: asInt(a[0]) })],
  Observe: [1, (a) => ({ kind: "Observe", sid: asInt(a[0]) })],
  Goals: [1, (a) => ({ kind: "Goals", sid: asInt(a[0]) })],
  SetOpt: [
    3,
    (a) => ({
      kind: "SetOpt",
      glob: a[0] === null ? null : asBool(a[0]),
      path: asStrList(a[1]),
      value: asOptionValue(a[2]),
    }),
  ],
  GetOpt: [1, (a) => ({ kind: "GetOpt", path: asStrList(a[0]) })],
  InfoPkg: [2, (a) => ({ kind: "InfoPkg", base: asStr(a[0]), names: asStrList(a[1]) })],
  LoadPkg: [2, (a) => ({ kind: "LoadPkg", base: asStr(a[0]), name: asStr(a[1]) })],
  GetInfo: [0, () => ({ kind: "GetInfo" })],
};

const ANSWER_DECODERS: Record<string, [number, Decoder<Answer>]> = {
  Added: [1, (a) => ({ kind: "Added", sid: asInt(a[0]) })],
  Cancelled: [1, (a) => ({ kind: "Cancelled", sids: asIntList(a[0]) })],
  Observed: [1, (a) => ({ kind: "Observed", sid: asInt(a[0]) })],
  GoalInfo: [
    3,
    (a) => ({ kind: "GoalInfo", sid: asInt(a[0]), text: asStr(a[1]), goalCount: asInt(a[2]) }),
  ],
  Feedback: [1, (a) => ({ kind: "Feedback", feedback: asFeedback(a[0]) })],
  CoqOpt: [1, (a) => ({ kind: "CoqOpt", value: asOptionValue(a[0]) })],
  CoqExn: [
    3,
    (a) => ({
      kind: "CoqExn",
      loc: a[0] === null ? null : asLoc(a[0]),
      pair: a[1] === null ? null : asPair(a[1]),
      message: asStr(a[2]),
    }),
  ],
  JsonExn: [1, (a) => ({ kind: "JsonExn", message: asStr(a[0]) })],
  LibInfo: [2, (a) => ({ kind: "LibInfo", name: asStr(a[0]), bundle: asBundle(a[1]) })],
  LibProgress: [1, (a) => ({ kind: "LibProgress", info: asProgress(a[0]) })],
  LibLoaded: [1, (a) => ({ kind: "LibLoaded", name: asStr(a[0]) })],
};

function decodeTagged<T>(
  text: string,
  registry: Record<string, [number, Decoder<T>]>,
  other: Record<string, unknown>,
  role: string,
): T | { kind: "JsonExn"; message: string } {
  let arr: unknown;
  try {
    arr = JSON.parse(text);
  } catch (e) {
    return { kind: "JsonExn", message: `invalid JSON: ${(e as Error).message}` };
  }
  if (!Array.isArray(arr) || arr.length === 0) {
    return { kind: "JsonExn", message: "message must be a non-empty JSON array" };
  }
  const tag = arr[0];
  if (typeof tag !== "string") {
    return { kind: "JsonExn", message: "constructor tag must be a string" };
  }
  const spec = registry[tag];
  if (spec === undefined) {
    if (tag in other) return { kind: "JsonExn", message: `${tag} is not ${role}` };
    return { kind: "JsonExn", message: `unknown constructor ${tag}` };
  }
  const [arity, dec] = spec;
  const args = arr.slice(1);
  if (args.length !== arity) {
    return {
      kind: "JsonExn",
      message: `${tag} expects ${arity} argument(s), got ${args.length}`,
    };
  }
  try {
    return dec(args);
  } catch (e) {
    if (e instanceof DecodeError) return { kind: "JsonExn", message: `${tag}: ${e.message}` };
    throw e;
  }
}

export function decodeCommand(text: string): Command | { kind: "JsonExn"; message: string } {
  return decodeTagged(text, COMMAND_DECODERS, ANSWER_DECODERS, "a command");
}

export function decodeAnswer(text: string): Answer {
  return decodeTagged(text, ANSWER_DECODERS, COMMAND_DECODERS, "an answer") as Answer;
}
