/** Round-trip rewriting through a French pivot.
 *
 * Deterministic dictionary transfer in both directions; words without an
 * entry pass through unchanged. A handful of French entries translate back
 * to a different English synonym, which is where the rewriting comes from.
 */

import { capitalize, tokenize } from "../text";

const EN_FR: Record<string, string> = {
  the: "le", a: "un", an: "un", and: "et", or: "ou", but: "mais",
  however: "cependant", therefore: "donc", because: "parce-que",
  is: "est", are: "sont", was: "était", be: "être", has: "a", have: "ont",
  we: "nous", i: "je", he: "il", she: "elle", they: "ils", it: "cela",
  this: "ce", that: "que", of: "de", in: "dans", on: "sur", with: "avec",
  for: "pour", to: "à", from: "depuis", by: "par", at: "chez",
  not: "pas", no: "non", yes: "oui",
  committee: "comité", commission: "commission", report: "rapport",
  proposal: "proposition", parliament: "parlement", president: "président",
  policy: "politique", state: "état", member: "membre", council: "conseil",
  work: "travail", support: "soutien", debate: "débat", vote: "vote",
  must: "doit", should: "devrait", can: "peut", will: "va",
  people: "gens", country: "pays", countries: "pays", important: "important",
  necessary: "nécessaire", good: "bon", new: "nouveau", big: "grand",
  buy: "acheter", purchase: "acheter", begin: "commencer", start: "commencer",
  help: "aider", assist: "aider", ensure: "garantir", guarantee: "garantir",
  moreover: "de-plus", furthermore: "de-plus", nevertheless: "néanmoins",
  consequently: "donc", thus: "donc", hence: "donc",
};

const FR_EN: Record<string, string> = {
  le: "the", un: "a", et: "and", ou: "or", mais: "but",
  cependant: "however", donc: "therefore", "parce-que": "because",
  est: "is", sont: "are", "était": "was", "être": "be", a: "has", ont: "have",
  nous: "we", je: "i", il: "he", elle: "she", ils: "they", cela: "it",
  ce: "this", que: "that", de: "of", dans: "in", sur: "on", avec: "with",
  pour: "for", "à": "to", depuis: "from", par: "by", chez: "at",
  pas: "not", non: "no", oui: "yes",
  "comité": "committee", commission: "commission", rapport: "report",
  proposition: "proposal", parlement: "parliament", "président": "president",
  politique: "policy", "état": "state", membre: "member", conseil: "council",
  travail: "work", soutien: "support", "débat": "debate", vote: "vote",
  doit: "must", devrait: "should", peut: "can", va: "will",
  gens: "people", pays: "country", important: "important",
  "nécessaire": "necessary", bon: "good", nouveau: "new", grand: "big",
  acheter: "buy", commencer: "begin", aider: "help", garantir: "ensure",
  "de-plus": "moreover", "néanmoins": "nevertheless",
};

function transfer(tokens: string[], dictionary: Record<string, string>): string[] {
  return tokens.map((token) => dictionary[token.toLowerCase()] ?? token);
}

export interface RoundTripResult {
  text: string;
  pivot: string;
}

export function rewrite(text: string): RoundTripResult {
  const tokens = tokenize(text);
  if (tokens.length === 0) throw new Error("empty input");
  const french = transfer(tokens, EN_FR);
  const english = transfer(french, FR_EN);
  return {
    text: capitalize(english.join(" ")),
    pivot: french.join(" "),
  };
}
