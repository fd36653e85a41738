"""Command-line entry point.

Exit status: 0 on success, 1 on a typed domain error (message on stderr),
2 on usage errors. All randomness flows from --seed flags, and no command
writes outside its --out / cache locations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, corpus as corpus_mod, metrics as metrics_mod, penman, report as report_mod
from .errors import LabError
from .evalharness import (
    aggregate,
    load_judgments_csv,
    make_sheets,
    spearman_iaa,
    write_sheets,
)
from .corpus import AlignedSet
from .pipeline import load_backend_spec, run_pipeline
from .postag import load_model, load_pretagged, save_model, tag as tag_sentence, train
from .textnorm import tokenize

CACHE_ENV_VAR = "TRANSLATIONESE_LAB_CACHE"


def _tokenized(corpus):
    return [tokenize(text, sent_id=sid) for sid, text in corpus.sentences]


def _parse_system_arg(value: str) -> tuple[str, str]:
    if "=" not in value:
        raise LabError(f"--system expects NAME=PATH, got {value!r}")
    name, path = value.split("=", 1)
    return name, path


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_ingest(args) -> int:
    loaded = corpus_mod.load_corpus(
        args.path, role=args.role, name=args.name, system_id=args.system_id
    )
    if args.out:
        corpus_mod.save_corpus(loaded, args.out)
    print(f"{loaded.name}: {len(loaded)} sentences ({loaded.role})")
    return 0


def cmd_tokenize(args) -> int:
    loaded = corpus_mod.load_corpus(args.input, role="translation", name="input")
    out_lines = [f"{s.id}\t{s.joined()}" for s in _tokenized(loaded)]
    text = "\n".join(out_lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_train_tagger(args) -> int:
    treebank = load_pretagged(args.treebank)
    model = train(treebank, epochs=args.epochs, seed=args.seed)
    save_model(model, args.out)
    n_tokens = sum(len(s) for s in treebank)
    print(f"trained on {len(treebank)} sentences / {n_tokens} tokens -> {args.out}")
    return 0


def cmd_tag(args) -> int:
    model = load_model(args.model)
    loaded = corpus_mod.load_corpus(args.input, role="translation", name="input")
    from .postag import save_pretagged

    tagged = []
    for sent in _tokenized(loaded):
        tags = tag_sentence(model, sent)
        tagged.append(list(zip(sent.surfaces, tags)))
    save_pretagged(tagged, args.out)
    print(f"tagged {len(tagged)} sentences -> {args.out}")
    return 0


def cmd_metrics(args) -> int:
    loaded = corpus_mod.load_corpus(args.corpus, role="translation", name=args.name or "corpus")
    sentences = _tokenized(loaded)
    lexicon = (
        metrics_mod.load_lexicon(args.lexicon) if args.lexicon else metrics_mod.default_lexicon()
    )
    tagged = None
    tagger_label = ""
    if args.tagged:
        tagged = load_pretagged(args.tagged)
        if len(tagged) != len(sentences):
            raise LabError(
                f"tagged file has {len(tagged)} sentences but corpus has {len(sentences)}"
            )
        tagger_label = f"pretagged:{Path(args.tagged).name}"
    elif args.model:
        model = load_model(args.model)
        tagged = [list(zip(s.surfaces, tag_sentence(model, s))) for s in sentences]
        tagger_label = f"perceptron:{Path(args.model).name}"
    report = metrics_mod.compute_report(
        corpus_name=loaded.name,
        sentences=sentences,
        lexicon=lexicon,
        tagged_sentences=tagged,
        tagger_model=tagger_label,
    )
    payload = report.to_json()
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


def cmd_compare(args) -> int:
    def read_report(path):
        return metrics_mod.MetricReport.from_json(Path(path).read_text(encoding="utf-8"))

    baseline = read_report(args.baseline)
    systems = {}
    for value in args.system or []:
        name, path = _parse_system_arg(value)
        systems[name] = read_report(path)
    original = read_report(args.original) if args.original else None
    comparison = report_mod.Comparison(baseline=baseline, systems=systems, original_ref=original)
    doc = report_mod.build_report(comparison, pos_tags=args.tags.split(",") if args.tags else None)
    if args.similarity:
        tables = {}
        for value in args.similarity:
            name, path = _parse_system_arg(value)
            tables[name] = json.loads(Path(path).read_text(encoding="utf-8"))
        report_mod.attach_similarity(doc, tables)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report_mod.render_json(doc), encoding="utf-8")
    (out_dir / "report.md").write_text(report_mod.render_markdown(doc), encoding="utf-8")
    (out_dir / "report.tsv").write_text(report_mod.render_tsv(doc), encoding="utf-8")
    print(f"wrote {out_dir}/report.json, report.md, report.tsv")
    return 0


def cmd_run(args) -> int:
    spec = load_backend_spec(args.backend)
    loaded = corpus_mod.load_corpus(args.input, role="translation", name="input")
    cache_dir = os.environ.get(CACHE_ENV_VAR) or args.cache
    result = run_pipeline(loaded, spec, cache_dir)
    corpus_mod.save_corpus(result.output, args.out)
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            for record in result.records:
                fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
    summary = result.summary()
    if args.summary:
        Path(args.summary).write_text(
            json.dumps(summary, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    print(json.dumps(summary, sort_keys=True))
    return 0 if not result.failed else 1


def cmd_amr_check(args) -> int:
    graphs = penman.load_amr_file(args.path)
    if args.normalize:
        graphs = [penman.normalize_inverse_roles(g) for g in graphs]
        for graph in graphs:
            penman.validate(graph)
    print(f"{args.path}: {len(graphs)} graph(s), all valid")
    return 0


def cmd_amr_stats(args) -> int:
    graphs = penman.load_amr_file(args.path)
    for i, graph in enumerate(graphs):
        if args.normalize:
            graph = penman.normalize_inverse_roles(graph)
        stats = penman.graph_stats(graph)
        print(json.dumps({"graph": i, "root": graph.nodes[graph.root], **stats}, sort_keys=True))
    return 0


def cmd_eval_sheets(args) -> int:
    baseline = corpus_mod.load_corpus(args.baseline, role="translation", name="baseline")
    aligned = AlignedSet(baseline=baseline)
    for value in args.system or []:
        name, path = _parse_system_arg(value)
        aligned.add_output(
            corpus_mod.load_corpus(path, role="system_output", name=name, system_id=name)
        )
    if args.items:
        item_ids = [i.strip() for i in args.items.split(",") if i.strip()]
    else:
        item_ids = baseline.ids
    annotators = [a.strip() for a in args.annotators.split(",") if a.strip()]
    sheets, blinding = make_sheets(aligned, item_ids, annotators, args.dimension, args.seed)
    write_sheets(sheets, blinding, args.out_dir)
    print(f"wrote {len(sheets)} sheet(s) to {args.out_dir}")
    return 0


def cmd_eval_aggregate(args) -> int:
    judgments = load_judgments_csv(args.judgments)
    table = aggregate(judgments)
    doc = {"scores": table}
    try:
        doc["spearman_iaa"] = spearman_iaa(judgments)
    except LabError:
        doc["spearman_iaa"] = None  # not doubly annotated; means are still valid
    payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    sys.stdout.write(payload)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="translationese-lab",
        description="Measure translationese, drive reduction backends, evaluate output.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and normalize a corpus file")
    p.add_argument("path")
    p.add_argument("--role", required=True, choices=corpus_mod.ROLES)
    p.add_argument("--name", required=True)
    p.add_argument("--system-id", default=None)
    p.add_argument("--out", default=None, help="write normalized id<TAB>text file")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("tokenize", help="tokenize a corpus, one sentence per line")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("train-tagger", help="train the averaged-perceptron POS tagger")
    p.add_argument("--treebank", required=True, help="10-column tagged file")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_tagger)

    p = sub.add_parser("tag", help="tag a corpus with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("metrics", help="compute the translationese metric report")
    p.add_argument("--corpus", required=True)
    p.add_argument("--name", default=None)
    p.add_argument("--tagged", default=None, help="pretagged file for POS frequencies")
    p.add_argument("--model", default=None, help="tagger model for POS frequencies")
    p.add_argument("--lexicon", default=None, help="cohesive-marker lexicon file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", help="render comparison tables from metric reports")
    p.add_argument("--baseline", required=True, help="baseline (translations) report JSON")
    p.add_argument("--original", default=None, help="originally-English report JSON")
    p.add_argument("--system", action="append", metavar="NAME=PATH")
    p.add_argument("--tags", default=None, help="comma-separated POS tags (default ADP,ADV,DET)")
    p.add_argument(
        "--similarity", action="append", metavar="NAME=PATH",
        help="externally-scored similarity JSON to attach as an auxiliary table",
    )
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="run a reduction backend over a corpus")
    p.add_argument("--backend", required=True, help="backend spec TOML")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cache", default=".cache")
    p.add_argument("--records", default=None, help="write per-sentence records JSONL")
    p.add_argument("--summary", default=None, help="write run summary JSON")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("amr", help="PENMAN file utilities")
    amr_sub = p.add_subparsers(dest="amr_command", required=True)
    pc = amr_sub.add_parser("check", help="validate every graph in a file")
    pc.add_argument("path")
    pc.add_argument("--normalize", action="store_true", help="also validate after inverse-role normalization")
    pc.set_defaults(func=cmd_amr_check)
    ps = amr_sub.add_parser("stats", help="per-graph statistics")
    ps.add_argument("path")
    ps.add_argument("--normalize", action="store_true", help="normalize inverse roles first")
    ps.set_defaults(func=cmd_amr_stats)

    p = sub.add_parser("eval", help="human evaluation harness")
    eval_sub = p.add_subparsers(dest="eval_command", required=True)
    pe = eval_sub.add_parser("sheets", help="build randomized blinded annotation sheets")
    pe.add_argument("--baseline", required=True)
    pe.add_argument("--system", action="append", metavar="NAME=PATH")
    pe.add_argument("--items", default=None, help="comma-separated item ids (default: all)")
    pe.add_argument("--annotators", required=True, help="comma-separated annotator ids")
    pe.add_argument("--dimension", required=True, choices=["adequacy", "fluency"])
    pe.add_argument("--seed", type=int, required=True)
    pe.add_argument("--out-dir", required=True)
    pe.set_defaults(func=cmd_eval_sheets)
    pa = eval_sub.add_parser("aggregate", help="aggregate judgments CSV")
    pa.add_argument("--judgments", required=True)
    pa.add_argument("--out", default=None)
    pa.set_defaults(func=cmd_eval_aggregate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LabError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"FileNotFound: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
