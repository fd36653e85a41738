import { rewrite } from "../engines/mtRoundtrip";
import { makeManifest, runWorker } from "../protocol";

const manifest = makeManifest(
  "mt-roundtrip",
  { forward: "dictionary-en-fr/1", backward: "dictionary-fr-en/1" },
  { pivot: "fr", deterministic: true },
);

runWorker(manifest, (text) => {
  const { text: english, pivot } = rewrite(text);
  return { text: english, pivot };
});
