// Node-only transport: the engine as a child process on stdio. Kept in
// its own module so the browser bundle never touches node builtins.

import { spawn } from "node:child_process";
import type { Readable, Writable } from "node:stream";
import type { ChildProcessByStdio } from "node:child_process";

import type { Transport } from "./transport";

export class NodeProcessTransport implements Transport {
  private proc: ChildProcessByStdio<Writable, Readable, null>;
  private lineCb: (line: string) => void = () => {};
  private closeCb: (reason: string) => void = () => {};
  private buffer = "";

  constructor(argv: string[]) {
    this.proc = spawn(argv[0], argv.slice(1), { stdio: ["pipe", "pipe", "inherit"] });
    this.proc.stdout.setEncoding("utf-8");
    this.proc.stdout.on("data", (chunk: string) => {
      this.buffer += chunk;
      for (;;) {
        const nl = this.buffer.indexOf("\n");
        if (nl < 0) break;
        const line = this.buffer.slice(0, nl);
        this.buffer = this.buffer.slice(nl + 1);
        if (line.trim() !== "") this.lineCb(line);
      }
    });
    this.proc.on("exit", (code) => this.closeCb(`engine exited with code ${code}`));
  }

  send(line: string): void {
    this.proc.stdin.write(line + "\n");
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (reason: string) => void): void {
    this.closeCb = cb;
  }

  close(): void {
    this.proc.stdin.end();
  }
}
