import { rewrite } from "../engines/amrPtg";
import { makeManifest, runWorker } from "../protocol";

const manifest = makeManifest(
  "amr-ptg",
  { parser: "rulebased-text2graph/1", generator: "rulebased-graph2text/1" },
  { deterministic: true },
);

runWorker(manifest, (text) => {
  const { penman, generated } = rewrite(text);
  return { text: generated, intermediate: penman };
});
