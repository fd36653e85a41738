import * as fs from "node:fs";
import { ENGINES, alignCorpora, parseCorpus, scoreAligned } from "../scorer";

function usage(): never {
  process.stderr.write(
    "usage: score --outputs FILE --references FILE [--system-id NAME] [--out FILE]\n",
  );
  process.exit(2);
}

function main(): void {
  const args = process.argv.slice(2);
  const opts: Record<string, string> = {};
  for (let i = 0; i < args.length; i += 2) {
    if (!args[i].startsWith("--") || i + 1 >= args.length) usage();
    opts[args[i].slice(2)] = args[i + 1];
  }
  if (!opts.outputs || !opts.references) usage();

  try {
    const outputs = parseCorpus(fs.readFileSync(opts.outputs, "utf-8"));
    const references = parseCorpus(fs.readFileSync(opts.references, "utf-8"));
    const pairs = alignCorpora(outputs, references);
    const report = scoreAligned(opts["system-id"] ?? "system", pairs);
    const payload = JSON.stringify(report, null, 2) + "\n";
    if (opts.out) fs.writeFileSync(opts.out, payload);
    process.stdout.write(payload);
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    process.exit(1);
  }
}

main();

export { ENGINES };
