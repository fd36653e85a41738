/** Two paraphrasing profiles behind one engine.
 *
 * "t5": conservative lexical substitution plus contraction expansion.
 * "bart": the same substitutions plus hard brevity - long sentences are cut
 * at a clause boundary, mirroring the over-summarizing behaviour such models
 * show on parliamentary prose.
 */

import { capitalize, tokenize } from "../text";

export type Variant = "bart" | "t5";

const SYNONYMS: Record<string, string> = {
  however: "but",
  nevertheless: "still",
  furthermore: "also",
  moreover: "also",
  therefore: "so",
  consequently: "so",
  "very": "really",
  important: "key",
  necessary: "needed",
  demonstrate: "show",
  purchase: "buy",
  commence: "begin",
  assist: "help",
  numerous: "many",
  sufficient: "enough",
  additional: "extra",
  ensure: "make sure",
  congratulate: "praise",
  magnificent: "great",
  excellent: "great",
};

const CONTRACTIONS: Record<string, string> = {
  "n't": "not",
  "'re": "are",
  "'ve": "have",
  "'ll": "will",
  "'m": "am",
};

const BART_CUT_MIN_TOKENS = 12;

export function rewrite(text: string, variant: Variant): string {
  let tokens = tokenize(text);
  if (tokens.length === 0) throw new Error("empty input");

  if (variant === "bart" && tokens.length > BART_CUT_MIN_TOKENS) {
    // cut at the first clause boundary past the midpoint-ish anchor
    const anchor = Math.max(8, Math.floor(tokens.length / 3));
    const cut = tokens.findIndex((t, i) => i >= anchor && (t === "," || t === ";"));
    if (cut !== -1) tokens = tokens.slice(0, cut);
  }

  const out: string[] = [];
  for (const token of tokens) {
    const low = token.toLowerCase();
    if (low in CONTRACTIONS) {
      out.push(CONTRACTIONS[low]);
      continue;
    }
    if (low === "wo" || low === "ca") {
      out.push(low === "wo" ? "will" : "can");
      continue;
    }
    const sub = SYNONYMS[low];
    out.push(sub ?? token);
  }
  let result = out.join(" ");
  if (!/[.!?]$/.test(result)) result += " .";
  return capitalize(result);
}
