import { describe, expect, it } from "vitest";
import { alignCorpora, bigramF, chrf, parseCorpus, scoreAligned, tokenF1 } from "../src/scorer";

const SENTENCES = [
  "The committee adopted the proposal on state aid .",
  "However , the rapporteur presented a different report .",
  "We must ensure that the data is accurate .",
  "The commission welcomes this debate on policy .",
  "Members of parliament voted against the amendment .",
];

describe("pairwise metrics", () => {
  it("self-similarity is maximal", () => {
    for (const s of SENTENCES) {
      expect(chrf(s, s)).toBeCloseTo(1.0, 12);
      expect(tokenF1(s, s)).toBe(1);
      expect(bigramF(s, s)).toBe(1);
    }
  });

  it("disjoint sentences score near zero", () => {
    expect(tokenF1("aaa bbb ccc", "xxx yyy zzz")).toBe(0);
    expect(bigramF("aaa bbb ccc", "xxx yyy zzz")).toBe(0);
    expect(chrf("aaa bbb", "xyz qrs")).toBeLessThan(0.05);
  });

  it("stays within [0, 1]", () => {
    for (const a of SENTENCES) {
      for (const b of SENTENCES) {
        for (const metric of [chrf, tokenF1, bigramF]) {
          const v = metric(a, b);
          expect(v).toBeGreaterThanOrEqual(0);
          expect(v).toBeLessThanOrEqual(1);
        }
      }
    }
  });
});

describe("scoreAligned", () => {
  it("identical corpora score (near) 100 on every metric", () => {
    const pairs = SENTENCES.map((s) => [s, s] as [string, string]);
    const report = scoreAligned("self", pairs);
    expect(report.scores.chrf).toBe(100);
    expect(report.scores.token_f1).toBe(100);
    expect(report.scores.bigram_f).toBe(100);
    expect(report.sentence_count).toBe(5);
  });

  it("misaligned references score strictly below the aligned run", () => {
    const aligned = SENTENCES.map((s) => [s, s] as [string, string]);
    const shuffled = SENTENCES.map(
      (s, i) => [s, SENTENCES[(i + 2) % SENTENCES.length]] as [string, string],
    );
    const alignedReport = scoreAligned("x", aligned);
    const shuffledReport = scoreAligned("x", shuffled);
    for (const key of Object.keys(alignedReport.scores)) {
      expect(shuffledReport.scores[key]).toBeLessThan(alignedReport.scores[key]);
    }
  });

  it("names its engines", () => {
    const report = scoreAligned("x", [["a b", "a b"]]);
    expect(report.engines.chrf).toContain("char-ngram-f");
  });
});

describe("corpus parsing and alignment", () => {
  it("reads explicit ids and aligns by id", () => {
    const outputs = parseCorpus("b\tsecond text\na\tfirst text\n");
    const references = parseCorpus("a\tfirst ref\nb\tsecond ref\n");
    expect(alignCorpora(outputs, references)).toEqual([
      ["second text", "second ref"],
      ["first text", "first ref"],
    ]);
  });

  it("falls back to positional alignment for bare lines", () => {
    const outputs = parseCorpus("one\ntwo\n");
    const references = parseCorpus("ref one\nref two\n");
    expect(alignCorpora(outputs, references)).toEqual([
      ["one", "ref one"],
      ["two", "ref two"],
    ]);
  });

  it("rejects unalignable corpora", () => {
    const outputs = parseCorpus("x\tone\n");
    const references = parseCorpus("L1\ta\nL2\tb\n");
    expect(() => alignCorpora(outputs, references)).toThrow(/cannot align/);
  });
});
