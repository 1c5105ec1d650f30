// Wire codec conformance: every line the engine emits must decode here
// and re-encode to the identical bytes, and vice versa for commands.
// Vectors come from the engine's own codec via scripts/gen-vectors.py.

import { describe, expect, it } from "vitest";
import {
  decodeAnswer,
  decodeCommand,
  encodeAnswer,
  encodeCommand,
  type Answer,
  type Command,
} from "../src/protocol";
import rawWire from "./vectors/wire.json";
import rawMalformed from "./vectors/malformed.json";

const wire = rawWire as { role: "command" | "answer"; line: string }[];
const malformed = rawMalformed as { line: string; command: string; answer: string }[];

describe("wire vectors", () => {
  it("has a healthy mix", () => {
    expect(wire.filter((v) => v.role === "command").length).toBe(300);
    expect(wire.filter((v) => v.role === "answer").length).toBe(300);
  });

  it("commands round-trip byte for byte", () => {
    for (const v of wire) {
      if (v.role !== "command") continue;
      const cmd = decodeCommand(v.line);
      expect(cmd.kind, v.line).not.toBe("JsonExn");
      expect(encodeCommand(cmd as Command)).toBe(v.line);
    }
  });

  it("answers round-trip byte for byte", () => {
    for (const v of wire) {
      if (v.role !== "answer") continue;
      const ans = decodeAnswer(v.line);
      if (ans.kind === "JsonExn") {
        // the only JsonExn lines an engine emits are real JsonExn answers
        expect(v.line.startsWith('["JsonExn"')).toBe(true);
      }
      expect(encodeAnswer(ans as Answer)).toBe(v.line);
    }
  });
});

describe("malformed vectors", () => {
  it("every malformed line yields JsonExn with the engine's message", () => {
    for (const v of malformed) {
      const cmd = decodeCommand(v.line);
      const ans = decodeAnswer(v.line);
      expect(cmd.kind, v.line).toBe("JsonExn");
      expect(ans.kind, v.line).toBe("JsonExn");
      // json parser phrasing differs between runtimes; structural
      // messages must match exactly
      if (cmd.kind === "JsonExn" && !v.command.startsWith("invalid JSON:")) {
        expect(cmd.message).toBe(v.command);
      } else if (cmd.kind === "JsonExn") {
        expect(cmd.message.startsWith("invalid JSON:")).toBe(true);
      }
      if (ans.kind === "JsonExn" && !v.answer.startsWith("invalid JSON:")) {
        expect(ans.message).toBe(v.answer);
      }
    }
  });
});

describe("hand encodings", () => {
  it("commands encode exactly like the engine expects", () => {
    expect(encodeCommand({ kind: "Cancel", sid: 3 })).toBe('["Cancel",3]');
    expect(encodeCommand({ kind: "Observe", sid: 2 })).toBe('["Observe",2]');
    expect(
      encodeCommand({ kind: "Init", loadpath: [["Lib"]], initMods: [["Lib", "Base"]] }),
    ).toBe('["Init",[["Lib"]],[["Lib","Base"]]]');
    expect(
      encodeCommand({ kind: "Add", sid: 1, eid: 100, text: "Check ⊢." }),
    ).toBe('["Add",1,100,"Check ⊢."]');
    expect(
      encodeCommand({
        kind: "SetOpt",
        glob: null,
        path: ["Printing", "Compact"],
        value: { kind: "Bool", value: true },
      }),
    ).toBe('["SetOpt",null,["Printing","Compact"],["Bool",true]]');
    expect(encodeCommand({ kind: "GetInfo" })).toBe('["GetInfo"]');
  });

  it("answers encode exactly like the engine emits", () => {
    expect(encodeAnswer({ kind: "Added", sid: 7 })).toBe('["Added",7]');
    expect(encodeAnswer({ kind: "Cancelled", sids: [3, 4] })).toBe(
      '["Cancelled",[3,4]]',
    );
    expect(
      encodeAnswer({
        kind: "Feedback",
        feedback: { id: 2, contents: { kind: "ProcessingStarted" } },
      }),
    ).toBe('["Feedback",{"id":2,"contents":["ProcessingStarted"]}]');
    expect(
      encodeAnswer({
        kind: "Feedback",
        feedback: { id: 2, contents: { kind: "Message", level: "Info", text: "ok" } },
      }),
    ).toBe('["Feedback",{"id":2,"contents":["Message",["Info"],"ok"]}]');
    expect(
      encodeAnswer({
        kind: "CoqExn",
        loc: { start: 6, end: 7 },
        pair: [2, 3],
        message: "boom",
      }),
    ).toBe('["CoqExn",{"start":6,"end":7},[2,3],"boom"]');
    expect(
      encodeAnswer({ kind: "CoqExn", loc: null, pair: null, message: "x" }),
    ).toBe('["CoqExn",null,null,"x"]');
  });

  it("decode distinguishes commands from answers", () => {
    expect(decodeCommand('["Added",1]').kind).toBe("JsonExn");
    expect(decodeAnswer('["Cancel",1]').kind).toBe("JsonExn");
    const wrong = decodeCommand('["Added",1]');
    if (wrong.kind === "JsonExn") {
      expect(wrong.message).toBe("Added is not a command");
    }
  });

  it("validators reject structural garbage", () => {
    const bad = [
      "",
      "   ",
      "{}",
      "[]",
      "[1]",
      '["Nope"]',
      '["Add","x",2,"y"]',
      '["Add",1]',
      '["Cancel",1,2]',
      '["CoqExn",{"start":9,"end":3},null,"m"]',
      '["Feedback",{"id":0,"contents":["Processed"]}]',
      '["Feedback",{"id":1,"contents":["Unknown"]}]',
    ];
    for (const line of bad) {
      expect(decodeAnswer(line).kind, line).toBe("JsonExn");
    }
  });

  it("non-ascii text stays literal in both directions", () => {
    const line = '["GoalInfo",4,"⊢ True",1]';
    const ans = decodeAnswer(line);
    expect(ans.kind).toBe("GoalInfo");
    expect(encodeAnswer(ans as Answer)).toBe(line);
  });
});
