/** Newline-delimited JSON worker loop.
 *
 * One JSON object per stdin line; one JSON object per stdout line.
 * A bad sentence produces a result with an error field and the stream keeps
 * going; only transport-level problems exit nonzero. `--manifest` prints the
 * worker manifest and exits, without loading anything.
 */

import * as readline from "node:readline";
import * as os from "node:os";

export const PROTOCOL_VERSION = "1";

export interface WorkerManifest {
  backend: string;
  version: string;
  protocol_version: string;
  engines: Record<string, string>;
  decoding: Record<string, string | number | boolean>;
  device: string;
}

export interface RewriteOutput {
  text: string;
  intermediate?: string;
  pivot?: string;
}

export type RewriteFn = (text: string) => RewriteOutput;

export function runWorker(manifest: WorkerManifest, rewriteFn: RewriteFn): void {
  if (process.argv.includes("--manifest")) {
    process.stdout.write(JSON.stringify(manifest, null, 2) + "\n");
    return;
  }

  const emit = (obj: unknown) => process.stdout.write(JSON.stringify(obj) + "\n");
  const rl = readline.createInterface({ input: process.stdin, terminal: false });

  rl.on("line", (line: string) => {
    line = line.trim();
    if (!line) return;
    let message: any;
    try {
      message = JSON.parse(line);
    } catch {
      emit({ op: "result", id: null, error: "request is not valid JSON" });
      return;
    }
    if (message.op === "hello") {
      emit({
        op: "hello",
        backend: manifest.backend,
        version: manifest.version,
        protocol_version: manifest.protocol_version,
      });
      return;
    }
    if (message.op !== "rewrite") {
      emit({ op: "result", id: message.id ?? null, error: `unknown op ${String(message.op)}` });
      return;
    }
    const text = typeof message.text === "string" ? message.text : "";
    if (!text.trim()) {
      emit({ op: "result", id: message.id, error: "empty text" });
      return;
    }
    try {
      const output = rewriteFn(text);
      emit({ op: "result", id: message.id, ...output });
    } catch (err) {
      emit({ op: "result", id: message.id, error: String(err instanceof Error ? err.message : err) });
    }
  });
}

export function deviceString(): string {
  return `cpu/${os.platform()}-${os.arch()}`;
}

export function makeManifest(
  backend: string,
  engines: Record<string, string>,
  decoding: Record<string, string | number | boolean> = {},
): WorkerManifest {
  // fold engine identifiers and decoding settings into the version string so
  // any engine change invalidates cached responses
  const blob = JSON.stringify({ engines, decoding });
  let hash = 0;
  for (let i = 0; i < blob.length; i++) {
    hash = (hash * 31 + blob.charCodeAt(i)) >>> 0;
  }
  return {
    backend,
    version: `1.0.0+${hash.toString(16)}`,
    protocol_version: PROTOCOL_VERSION,
    engines,
    decoding,
    device: deviceString(),
  };
}
