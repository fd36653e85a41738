import { rewrite } from "../engines/paraphrase";
import { makeManifest, runWorker } from "../protocol";

const manifest = makeManifest(
  "para-bart",
  { paraphraser: "rulebased-paraphrase/1" },
  { variant: "bart", brevity: true, deterministic: true },
);

runWorker(manifest, (text) => ({ text: rewrite(text, "bart") }));
