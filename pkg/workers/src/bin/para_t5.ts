import { rewrite } from "../engines/paraphrase";
import { makeManifest, runWorker } from "../protocol";

const manifest = makeManifest(
  "para-t5",
  { paraphraser: "rulebased-paraphrase/1" },
  { variant: "t5", brevity: false, deterministic: true },
);

runWorker(manifest, (text) => ({ text: rewrite(text, "t5") }));
