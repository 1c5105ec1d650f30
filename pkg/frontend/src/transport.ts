// Engine transports. One line of JSON each way, whatever the carrier.
// In the browser the supported carrier is a websocket bridged to
// `proofdeck serve --listen`; tests and headless drivers inject their
// own transport instead.

export interface Transport {
  send(line: string): void;
  onLine(cb: (line: string) => void): void;
  onClose(cb: (reason: string) => void): void;
  close(): void;
}

export class WebSocketTransport implements Transport {
  private ws: WebSocket;
  private lineCb: (line: string) => void = () => {};
  private closeCb: (reason: string) => void = () => {};
  private pending: string[] = [];
  private open = false;

  constructor(url: string) {
    this.ws = new WebSocket(url);
    this.ws.onopen = () => {
      this.open = true;
      for (const line of this.pending) this.ws.send(line);
      this.pending = [];
    };
    this.ws.onmessage = (ev) => {
      for (const line of String(ev.data).split("\n")) {
        if (line.trim() !== "") this.lineCb(line);
      }
    };
    this.ws.onclose = () => this.closeCb("connection closed");
    this.ws.onerror = () => this.closeCb("connection error");
  }

  send(line: string): void {
    if (this.open) this.ws.send(line);
    else this.pending.push(line);
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (reason: string) => void): void {
    this.closeCb = cb;
  }

  close(): void {
    this.ws.close();
  }
}

// In-memory transport for tests: the test plays the engine by reading
// sent lines and pushing answer lines back.
export class LoopbackTransport implements Transport {
  sent: string[] = [];
  private lineCb: (line: string) => void = () => {};
  private closeCb: (reason: string) => void = () => {};

  send(line: string): void {
    this.sent.push(line);
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: (reason: string) => void): void {
    this.closeCb = cb;
  }

  push(line: string): void {
    this.lineCb(line);
  }

  close(): void {
    this.closeCb("closed");
  }
}
