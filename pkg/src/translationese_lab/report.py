"""Comparison reports: improvement checkmarks and baseline-closeness tables.

TTR improves when it rises above the baseline translations (richer lexicon);
cohesive-marker count improves when it falls (less explicitation). POS tags
have no universal "good" direction, so a system improves on a tag when its
relative frequency moves strictly closer to the originally-English reference
than the baseline was. All comparisons refuse mismatched provenance: a TTR
computed under one tokenizer or a marker count under a different lexicon is
not comparable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import LabError, ProvenanceMismatch
from .metrics import MetricReport

CHECK = "✓"


@dataclass
class Comparison:
    baseline: MetricReport
    systems: dict[str, MetricReport] = field(default_factory=dict)
    original_ref: MetricReport | None = None

    def __post_init__(self):
        for report in self._all_reports():
            _check_provenance(self.baseline, report, "tokenizer_version")
            _check_provenance(self.baseline, report, "lexicon_source")
        tagged = [r for r in [self.baseline, *self._all_reports()] if r.pos_freq is not None]
        for report in tagged[1:]:
            _check_provenance(tagged[0], report, "tagger_model")

    def _all_reports(self):
        out = list(self.systems.values())
        if self.original_ref is not None:
            out.append(self.original_ref)
        return out


def _check_provenance(a: MetricReport, b: MetricReport, fieldname: str) -> None:
    left, right = getattr(a, fieldname), getattr(b, fieldname)
    if left != right:
        raise ProvenanceMismatch(fieldname, left, right)


def ttr_improved(system: MetricReport, baseline: MetricReport) -> bool:
    _check_provenance(system, baseline, "tokenizer_version")
    return system.ttr > baseline.ttr


def cohesive_improved(system: MetricReport, baseline: MetricReport) -> bool:
    _check_provenance(system, baseline, "lexicon_source")
    return system.cohesive_count < baseline.cohesive_count


def pos_closeness(
    system: MetricReport,
    baseline: MetricReport,
    original_ref: MetricReport,
    tags: list[str],
) -> dict[str, bool]:
    """Per tag: did the system move strictly closer to the original-English frequency?"""
    for report in (system, baseline, original_ref):
        if report.pos_freq is None:
            raise LabError(f"report {report.corpus_name!r} has no POS frequencies")
    _check_provenance(system, baseline, "tagger_model")
    _check_provenance(system, original_ref, "tagger_model")
    out = {}
    for tag in tags:
        sys_d = abs(system.pos_freq[tag] - original_ref.pos_freq[tag])
        base_d = abs(baseline.pos_freq[tag] - original_ref.pos_freq[tag])
        out[tag] = sys_d < base_d
    return out


def build_report(comparison: Comparison, pos_tags: list[str] | None = None) -> dict:
    """All raw values, improvement booleans, and the provenance block."""
    baseline = comparison.baseline
    pos_tags = pos_tags or ["ADP", "ADV", "DET"]
    systems = {}
    for system_id in sorted(comparison.systems):
        report = comparison.systems[system_id]
        entry = {
            "ttr": report.ttr,
            "ttr_improved": ttr_improved(report, baseline),
            "cohesive_count": report.cohesive_count,
            "cohesive_improved": cohesive_improved(report, baseline),
            "token_count": report.token_count,
            "avg_sentence_length": report.avg_sentence_length,
        }
        if comparison.original_ref is not None and report.pos_freq is not None:
            entry["pos_closer_to_original"] = pos_closeness(
                report, baseline, comparison.original_ref, pos_tags
            )
            entry["pos_freq"] = {t: report.pos_freq[t] for t in pos_tags}
        systems[system_id] = entry
    doc = {
        "baseline": {
            "name": baseline.corpus_name,
            "ttr": baseline.ttr,
            "cohesive_count": baseline.cohesive_count,
            "token_count": baseline.token_count,
            "avg_sentence_length": baseline.avg_sentence_length,
            "pos_freq": {t: baseline.pos_freq[t] for t in pos_tags}
            if baseline.pos_freq
            else None,
        },
        "original_ref": None,
        "systems": systems,
        "pos_tags": pos_tags,
        "provenance": {
            "tokenizer_version": baseline.tokenizer_version,
            "lexicon_source": baseline.lexicon_source,
            "tagger_model": baseline.tagger_model,
        },
    }
    if comparison.original_ref is not None:
        ref = comparison.original_ref
        doc["original_ref"] = {
            "name": ref.corpus_name,
            "ttr": ref.ttr,
            "cohesive_count": ref.cohesive_count,
            "pos_freq": {t: ref.pos_freq[t] for t in pos_tags} if ref.pos_freq else None,
        }
    return doc


def attach_similarity(doc: dict, tables: dict[str, dict]) -> dict:
    """Attach reference-based similarity scores (an external scorer's JSON)
    as an auxiliary table keyed by system id."""
    aux = {}
    for system_id, payload in sorted(tables.items()):
        scores = payload.get("scores")
        if not isinstance(scores, dict) or not scores:
            raise LabError(f"similarity payload for {system_id!r} has no scores")
        aux[system_id] = {
            "scores": {k: float(v) for k, v in sorted(scores.items())},
            "engines": payload.get("engines", {}),
            "sentence_count": payload.get("sentence_count"),
        }
    doc["similarity"] = aux
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_markdown(doc: dict) -> str:
    lines = ["# Translationese comparison", ""]
    lines.append(f"Baseline: {doc['baseline']['name']}")
    prov = doc["provenance"]
    lines.append(
        f"Provenance: tokenizer={prov['tokenizer_version']}"
        f" lexicon={prov['lexicon_source']} tagger={prov['tagger_model'] or 'n/a'}"
    )
    lines.append("")
    lines.append("| System | TTR (↑) | | Cohesive markers (↓) | |")
    lines.append("|---|---|---|---|---|")
    base = doc["baseline"]
    lines.append(f"| {base['name']} | {base['ttr']:.4f} | | {base['cohesive_count']} | |")
    for system_id, entry in doc["systems"].items():
        t_mark = CHECK if entry["ttr_improved"] else ""
        c_mark = CHECK if entry["cohesive_improved"] else ""
        lines.append(
            f"| {system_id} | {entry['ttr']:.4f} | {t_mark} | {entry['cohesive_count']} | {c_mark} |"
        )
    lines.append("")
    if doc["original_ref"] is not None and any(
        "pos_closer_to_original" in e for e in doc["systems"].values()
    ):
        tags = doc["pos_tags"]
        lines.append("| System | " + " | ".join(f"{t} freq | closer" for t in tags) + " |")
        lines.append("|---|" + "---|" * (2 * len(tags)))
        ref = doc["original_ref"]
        base_cells = " | ".join(f"{base['pos_freq'][t]:.4f} | " for t in tags)
        lines.append(f"| {base['name']} (baseline) | {base_cells}|")
        ref_cells = " | ".join(f"{ref['pos_freq'][t]:.4f} | " for t in tags)
        lines.append(f"| {ref['name']} (original English) | {ref_cells}|")
        for system_id, entry in doc["systems"].items():
            if "pos_closer_to_original" not in entry:
                continue
            cells = " | ".join(
                f"{entry['pos_freq'][t]:.4f} | {CHECK if entry['pos_closer_to_original'][t] else ''}"
                for t in tags
            )
            lines.append(f"| {system_id} | {cells} |")
        lines.append("")
    lines.append("Length statistics (tokens):")
    lines.append("")
    lines.append("| Corpus | tokens | avg sentence length |")
    lines.append("|---|---|---|")
    lines.append(
        f"| {base['name']} | {base['token_count']} | {base['avg_sentence_length']:.2f} |"
    )
    for system_id, entry in doc["systems"].items():
        lines.append(
            f"| {system_id} | {entry['token_count']} | {entry['avg_sentence_length']:.2f} |"
        )
    if doc.get("similarity"):
        metric_names = sorted({m for e in doc["similarity"].values() for m in e["scores"]})
        lines.append("")
        lines.append("Reference-based similarity (externally scored, 0-100):")
        lines.append("")
        lines.append("| System | " + " | ".join(metric_names) + " |")
        lines.append("|---|" + "---|" * len(metric_names))
        for system_id, entry in doc["similarity"].items():
            cells = " | ".join(
                f"{entry['scores'][m]:.2f}" if m in entry["scores"] else ""
                for m in metric_names
            )
            lines.append(f"| {system_id} | {cells} |")
    return "\n".join(lines) + "\n"


def render_tsv(doc: dict) -> str:
    """Flat export for external plotting."""
    rows = [["corpus", "ttr", "cohesive_count", "token_count", "avg_sentence_length"]]
    base = doc["baseline"]
    rows.append(
        [
            base["name"],
            repr(base["ttr"]),
            str(base["cohesive_count"]),
            str(base["token_count"]),
            repr(base["avg_sentence_length"]),
        ]
    )
    for system_id, entry in doc["systems"].items():
        rows.append(
            [
                system_id,
                repr(entry["ttr"]),
                str(entry["cohesive_count"]),
                str(entry["token_count"]),
                repr(entry["avg_sentence_length"]),
            ]
        )
    return "\n".join("\t".join(r) for r in rows) + "\n"
