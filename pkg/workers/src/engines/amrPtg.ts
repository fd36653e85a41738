/** Parse-then-generate rewriting through a meaning-graph bottleneck.
 *
 * The parser abstracts a sentence into a rooted graph: punctuation, function
 * words and most discourse connectives are not represented; content words
 * become concept nodes (crudely lemmatized), repeated content words share a
 * node (reentrancy), and contrast/cause connectives survive as a root
 * concept. The generator realizes the graph back into a short sentence, so
 * everything the graph does not capture is gone from the output.
 */

import { AmrNode, GraphBuilder, conceptsInOrder, toPenman } from "../amr";
import {
  COHESIVE_MARKERS,
  MARKER_CONCEPTS,
  STOPWORDS,
  capitalize,
  isPunctToken,
  isVerbish,
  stem,
  tokenize,
} from "../text";

const ROLES = [":ARG0", ":ARG1", ":ARG2", ":ARG3", ":ARG4", ":mod", ":time", ":topic"];

export interface PtgResult {
  penman: string;
  generated: string;
}

function sanitizeConcept(word: string): string {
  return word.toLowerCase().replace(/[():/"\\\s]+/g, "");
}

/** Drop connective phrases; report the first meaning-bearing one. */
function stripMarkers(tokens: string[]): { kept: string[]; rootConcept: string | null } {
  const lowered = tokens.map((t) => t.toLowerCase());
  const kept: string[] = [];
  let rootConcept: string | null = null;
  let i = 0;
  while (i < lowered.length) {
    let matched: string[] | null = null;
    for (const marker of COHESIVE_MARKERS) {
      if (
        i + marker.length <= lowered.length &&
        marker.every((w, k) => lowered[i + k] === w)
      ) {
        matched = marker;
        break;
      }
    }
    if (matched) {
      const phrase = matched.join(" ");
      if (rootConcept === null && phrase in MARKER_CONCEPTS) {
        rootConcept = MARKER_CONCEPTS[phrase];
      }
      i += matched.length;
    } else {
      kept.push(tokens[i]);
      i += 1;
    }
  }
  return { kept, rootConcept };
}

export function parseToGraph(text: string): AmrNode {
  const tokens = tokenize(text).filter((t) => !isPunctToken(t));
  if (tokens.length === 0) {
    throw new Error("no content tokens to parse");
  }
  const { kept, rootConcept } = stripMarkers(tokens);

  const concepts: string[] = [];
  for (const token of kept) {
    const low = token.toLowerCase();
    if (STOPWORDS.has(low)) continue;
    if (low in MARKER_CONCEPTS) {
      concepts.push(MARKER_CONCEPTS[low]); // e.g. mid-sentence "because" -> cause-01
      continue;
    }
    const concept = sanitizeConcept(stem(low));
    if (concept) concepts.push(concept);
  }
  if (concepts.length === 0) {
    // everything was grammar; keep the most contentful surface token
    concepts.push(sanitizeConcept(stem(tokens[0].toLowerCase())) || "thing");
  }

  const builder = new GraphBuilder();
  let root: AmrNode;
  let attach: AmrNode;
  const frame = (c: string) => (isVerbish(c) ? `${c}-01` : c);

  if (rootConcept !== null) {
    root = builder.node(rootConcept);
    attach = root;
  } else {
    root = builder.node(frame(concepts[0]));
    attach = root;
    concepts.shift();
  }

  let roleIndex = 0;
  for (const concept of concepts) {
    const framed = frame(concept);
    const reentrant = builder.isKnown(framed);
    const node = builder.node(framed);
    const role = ROLES[Math.min(roleIndex, ROLES.length - 1)];
    attach.relations.push({ role, target: node, reentrant });
    roleIndex += 1;
    if (!reentrant && roleIndex % 3 === 0) {
      attach = node; // nest every third relation so graphs have depth
      roleIndex = 0;
    }
  }
  return root;
}

const ROOT_REALIZATION: Record<string, string> = {
  "contrast-01": "But",
  "cause-01": "So",
};

const INLINE_REALIZATION: Record<string, string> = {
  "cause-01": "because",
  "contrast-01": "but",
};

export function generateFromGraph(root: AmrNode): string {
  const concepts = conceptsInOrder(root);
  const words: string[] = [];
  let prefix = "";
  for (const [i, concept] of concepts.entries()) {
    if (i === 0 && concept in ROOT_REALIZATION) {
      prefix = ROOT_REALIZATION[concept];
      continue;
    }
    words.push(INLINE_REALIZATION[concept] ?? concept.replace(/-\d+$/, ""));
  }
  if (words.length === 0 && prefix === "") return "";
  const body = words.join(" ");
  const text = prefix ? (body ? `${prefix.toLowerCase()} ${body}` : prefix) : body;
  return capitalize(text) + " .";
}

export function rewrite(text: string): PtgResult {
  const graph = parseToGraph(text);
  return { penman: toPenman(graph), generated: generateFromGraph(graph) };
}
