/** Shared tokenization and word lists for the rule-based engines. */

const CLITICS = ["n't", "'s", "'m", "'d", "'ll", "'re", "'ve"];

const PUNCT = /[!-\/:-@\[-`{-~]/;

function isPunct(ch: string): boolean {
  return PUNCT.test(ch);
}

function splitChunk(chunk: string): string[] {
  const head: string[] = [];
  const tail: string[] = [];
  while (chunk.length > 0) {
    if (chunk.length === 1 || /^[0-9]+([.,][0-9]+)*$/.test(chunk)) {
      head.push(chunk);
      break;
    }
    const low = chunk.toLowerCase();
    if (CLITICS.includes(low)) {
      head.push(chunk);
      break;
    }
    if (isPunct(chunk[0])) {
      head.push(chunk[0]);
      chunk = chunk.slice(1);
      continue;
    }
    if (isPunct(chunk[chunk.length - 1])) {
      tail.push(chunk[chunk.length - 1]);
      chunk = chunk.slice(0, -1);
      continue;
    }
    const clitic = CLITICS.find((c) => low.endsWith(c) && chunk.length > c.length);
    if (clitic) {
      tail.push(chunk.slice(-clitic.length));
      chunk = chunk.slice(0, -clitic.length);
      continue;
    }
    head.push(chunk);
    break;
  }
  return head.concat(tail.reverse());
}

export function tokenize(text: string): string[] {
  const out: string[] = [];
  for (const chunk of text.split(/\s+/)) {
    if (chunk) out.push(...splitChunk(chunk));
  }
  return out;
}

export function isPunctToken(token: string): boolean {
  return [...token].every((ch) => isPunct(ch));
}

/** Discourse connectives; multiword entries matched longest-first on token boundaries. */
export const COHESIVE_MARKERS: string[][] = [
  ["on", "the", "other", "hand"],
  ["on", "the", "contrary"],
  ["on", "account", "of"],
  ["in", "other", "words"],
  ["as", "a", "result"],
  ["for", "example"],
  ["for", "instance"],
  ["in", "addition"],
  ["in", "conclusion"],
  ["even", "though"],
  ["in", "spite"],
  ["in", "fact"],
  ["even", "if"],
  ["is", "to", "say"],
  ["referring", "to"],
  ["the", "former"],
  ["the", "latter"],
  ["as", "for"],
  ["as", "to"],
  ["besides"],
  ["but"],
  ["consequently"],
  ["despite"],
  ["except"],
  ["further"],
  ["furthermore"],
  ["hence"],
  ["however"],
  ["indeed"],
  ["instead"],
  ["maybe"],
  ["meanwhile"],
  ["moreover"],
  ["nevertheless"],
  ["otherwise"],
  ["similarly"],
  ["since"],
  ["therefore"],
  ["thus"],
  ["yet"],
].sort((a, b) => b.length - a.length);

/** Connectives that carry meaning the graph keeps as a root concept. */
export const MARKER_CONCEPTS: Record<string, string> = {
  but: "contrast-01",
  however: "contrast-01",
  nevertheless: "contrast-01",
  "on the contrary": "contrast-01",
  "on the other hand": "contrast-01",
  yet: "contrast-01",
  because: "cause-01",
  consequently: "cause-01",
  hence: "cause-01",
  since: "cause-01",
  therefore: "cause-01",
  thus: "cause-01",
  "as a result": "cause-01",
};

/** Function words abstracted away by the graph representation. */
export const STOPWORDS = new Set([
  "the", "a", "an", "this", "that", "these", "those", "some", "any", "each",
  "every", "no", "such",
  "is", "are", "was", "were", "be", "been", "being", "am",
  "has", "have", "had", "having",
  "do", "does", "did", "doing",
  "will", "would", "shall", "should", "may", "might", "must", "can", "could",
  "of", "in", "on", "at", "by", "for", "with", "from", "to", "as", "into",
  "onto", "over", "under", "before", "after", "between", "through", "during",
  "about", "against", "within", "without", "upon", "among", "towards", "toward",
  "and", "or", "nor", "so", "'s", "'ll", "'re", "'ve", "'d", "'m", "n't",
  "which", "who", "whom", "whose", "where", "when", "there", "here",
  "also", "very", "too", "more", "most", "only", "just", "then",
  "not", "up", "out", "if", "than", "both", "while",
]);

const VERB_HINTS = new Set([
  "adopt", "support", "present", "consider", "propose", "reject", "examine",
  "discuss", "welcome", "emphasise", "emphasize", "congratulate", "ensure",
  "believe", "agree", "go", "appeal", "prosecute", "vote", "accept", "improve",
  "note", "say", "make", "take", "give", "call", "ask", "thank", "want",
  "need", "like", "approve", "implement", "guarantee", "protect",
]);

/** Crude lemmatizer: depluralize nouns, strip verbal inflection. */
export function stem(word: string): string {
  let w = word;
  if (w.length > 5 && w.endsWith("ing")) {
    w = w.slice(0, -3);
    if (w.length >= 3 && w[w.length - 1] === w[w.length - 2]) w = w.slice(0, -1);
    else if (VERB_HINTS.has(w + "e")) w = w + "e";
  } else if (w.length > 4 && w.endsWith("ied")) {
    w = w.slice(0, -3) + "y";
  } else if (w.length > 4 && w.endsWith("ed")) {
    w = w.slice(0, -2);
    if (w.length >= 3 && w[w.length - 1] === w[w.length - 2]) w = w.slice(0, -1);
    else if (VERB_HINTS.has(w + "e")) w = w + "e";
  } else if (w.length > 3 && w.endsWith("ies")) {
    w = w.slice(0, -3) + "y";
  } else if (w.length > 3 && w.endsWith("es") && !w.endsWith("ses")) {
    if (VERB_HINTS.has(w.slice(0, -2)) || /[cs]hes$|xes$/.test(w)) w = w.slice(0, -2);
    else w = w.slice(0, -1);
  } else if (w.length > 3 && w.endsWith("s") && !w.endsWith("ss")) {
    w = w.slice(0, -1);
  }
  return w;
}

export function isVerbish(stemmed: string): boolean {
  return VERB_HINTS.has(stemmed) || /(ise|ize|ate|ify)$/.test(stemmed);
}

export function capitalize(text: string): string {
  return text.length > 0 ? text[0].toUpperCase() + text.slice(1) : text;
}
