"""Human-evaluation harness: blinded sheets, judgment aggregation, agreement.

Fluency sheets put the baseline translation among the candidates under the
reserved system id "original"; adequacy sheets show it as the reference only,
so "original" never receives an adequacy judgment. Candidate order is drawn
per (annotator, item) from an RNG derived from the run seed, and the
label->system blinding map is persisted for de-blinding.

Spearman agreement uses average ranks for ties (integer 1-4 scales guarantee
heavy ties, where the textbook 1 - 6*sum(d^2)/(n(n^2-1)) formula is wrong)
and exact rational arithmetic, so tie-free inputs reproduce the textbook
formula exactly and identical/reversed annotators give exactly +/-1.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from pathlib import Path

from .corpus import AlignedSet
from .errors import (
    BadJudgmentFile,
    DuplicateJudgment,
    LabError,
    MissingSystemOutput,
    ScoreOutOfRange,
    UnpairedJudgments,
)

DIMENSIONS = ("adequacy", "fluency")
ORIGINAL_ID = "original"
JUDGMENTS_CSV_HEADER = ["annotator", "item_id", "system_id", "dimension", "score"]


@dataclass(frozen=True)
class Judgment:
    annotator: str
    item_id: str
    system_id: str
    dimension: str
    score: int

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise LabError(f"unknown dimension {self.dimension!r}")
        if not isinstance(self.score, int) or not 1 <= self.score <= 4:
            raise ScoreOutOfRange(self.score)
        if self.dimension == "adequacy" and self.system_id == ORIGINAL_ID:
            raise LabError("originals are references, not judged for adequacy")

    def key(self) -> tuple[str, str, str, str]:
        return (self.annotator, self.item_id, self.system_id, self.dimension)


@dataclass
class SheetItem:
    item_id: str
    reference: str | None  # shown for adequacy only
    candidates: list[tuple[str, str]]  # (blinded label, text)


@dataclass
class AnnotationSheet:
    annotator: str
    dimension: str
    seed: int
    items: list[SheetItem]


def _item_rng(seed: int, annotator: str, item_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}|{annotator}|{item_id}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def shuffled_candidate_order(seed: int, annotator: str, item_id: str, system_ids) -> list[str]:
    """The seeded candidate order for one sheet entry (exposed for replay checks)."""
    order = sorted(system_ids)
    _item_rng(seed, annotator, item_id).shuffle(order)
    return order


def make_sheets(
    aligned: AlignedSet,
    item_ids: list[str],
    annotators: list[str],
    dimension: str,
    seed: int,
) -> tuple[list[AnnotationSheet], dict]:
    """Build one sheet per annotator plus the blinding map for de-blinding."""
    if dimension not in DIMENSIONS:
        raise LabError(f"unknown dimension {dimension!r}")
    baseline_text = dict(aligned.baseline.sentences)
    for item_id in item_ids:
        if item_id not in baseline_text:
            raise MissingSystemOutput(item_id, aligned.baseline.name)
        for system_id, corpus in aligned.outputs.items():
            if item_id not in dict(corpus.sentences):
                raise MissingSystemOutput(item_id, system_id)

    candidate_systems = sorted(aligned.outputs)
    if dimension == "fluency":
        candidate_systems = candidate_systems + [ORIGINAL_ID]

    def text_of(system_id: str, item_id: str) -> str:
        if system_id == ORIGINAL_ID:
            return baseline_text[item_id]
        return dict(aligned.outputs[system_id].sentences)[item_id]

    sheets = []
    blinding: dict = {"seed": seed, "dimension": dimension, "assignments": {}}
    for annotator in annotators:
        items = []
        for item_id in item_ids:
            order = shuffled_candidate_order(seed, annotator, item_id, candidate_systems)
            labels = [chr(ord("A") + i) for i in range(len(order))]
            items.append(
                SheetItem(
                    item_id=item_id,
                    reference=baseline_text[item_id] if dimension == "adequacy" else None,
                    candidates=[(lab, text_of(sys, item_id)) for lab, sys in zip(labels, order)],
                )
            )
            blinding["assignments"].setdefault(annotator, {})[item_id] = dict(
                zip(labels, order)
            )
        sheets.append(
            AnnotationSheet(annotator=annotator, dimension=dimension, seed=seed, items=items)
        )
    return sheets, blinding


def render_sheet_text(sheet: AnnotationSheet) -> str:
    lines = [
        f"Annotator: {sheet.annotator}",
        f"Dimension: {sheet.dimension} (score each candidate 1-4)",
        "",
    ]
    for item in sheet.items:
        lines.append(f"=== Item {item.item_id} ===")
        if item.reference is not None:
            lines.append(f"Reference: {item.reference}")
        for label, text in item.candidates:
            lines.append(f"  [{label}] {text}")
        lines.append("")
    return "\n".join(lines) + "\n"


def write_sheets(sheets, blinding, out_dir) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for sheet in sheets:
        (out_dir / f"sheet_{sheet.annotator}.txt").write_text(
            render_sheet_text(sheet), encoding="utf-8"
        )
        payload = {
            "annotator": sheet.annotator,
            "dimension": sheet.dimension,
            "seed": sheet.seed,
            "items": [
                {
                    "item_id": it.item_id,
                    "reference": it.reference,
                    "candidates": [{"label": l, "text": t} for l, t in it.candidates],
                }
                for it in sheet.items
            ],
        }
        (out_dir / f"sheet_{sheet.annotator}.json").write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    (out_dir / f"blinding_{blinding['seed']}.json").write_text(
        json.dumps(blinding, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# judgments

def load_judgments_csv(path) -> list[Judgment]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"judgments file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != JUDGMENTS_CSV_HEADER:
            raise BadJudgmentFile(
                f"{path}: expected header {','.join(JUDGMENTS_CSV_HEADER)}"
            )
        judgments = []
        for row_no, row in enumerate(reader, start=2):
            try:
                score = int(row["score"])
            except (TypeError, ValueError):
                raise ScoreOutOfRange(row.get("score"))
            judgments.append(
                Judgment(
                    annotator=row["annotator"].strip(),
                    item_id=row["item_id"].strip(),
                    system_id=row["system_id"].strip(),
                    dimension=row["dimension"].strip(),
                    score=score,
                )
            )
    return judgments


def save_judgments_csv(judgments, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(JUDGMENTS_CSV_HEADER)
        for j in judgments:
            writer.writerow([j.annotator, j.item_id, j.system_id, j.dimension, j.score])


def validate_judgments(judgments: list[Judgment]) -> None:
    seen = set()
    for j in judgments:
        if j.key() in seen:
            raise DuplicateJudgment(j.key())
        seen.add(j.key())


def aggregate(judgments: list[Judgment]) -> dict[str, dict[str, dict]]:
    """Per dimension: system_id -> {mean, rank, n}. Ranks dense, ties share."""
    validate_judgments(judgments)
    sums: dict[tuple[str, str], list] = {}
    for j in judgments:
        entry = sums.setdefault((j.dimension, j.system_id), [0, 0])
        entry[0] += j.score
        entry[1] += 1
    result: dict[str, dict[str, dict]] = {}
    for dimension in DIMENSIONS:
        systems = {
            sys: {"mean": total / n, "n": n}
            for (dim, sys), (total, n) in sums.items()
            if dim == dimension
        }
        distinct_means = sorted({v["mean"] for v in systems.values()}, reverse=True)
        rank_of = {mean: i + 1 for i, mean in enumerate(distinct_means)}
        for v in systems.values():
            v["rank"] = rank_of[v["mean"]]
        if systems:
            result[dimension] = dict(sorted(systems.items(), key=lambda kv: (kv[1]["rank"], kv[0])))
    return result


# ---------------------------------------------------------------------------
# Spearman inter-annotator agreement

def _average_ranks(values) -> list[Fraction]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [Fraction(0)] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = Fraction(i + j + 2, 2)  # ranks are 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman(xs, ys) -> float:
    """Spearman rank correlation with average ranks for ties."""
    if len(xs) != len(ys):
        raise LabError("vectors differ in length")
    n = len(xs)
    if n < 2:
        raise LabError("need at least two paired observations")
    rx, ry = _average_ranks(list(xs)), _average_ranks(list(ys))
    mean_x = sum(rx, Fraction(0)) / n
    mean_y = sum(ry, Fraction(0)) / n
    num = sum((a - mean_x) * (b - mean_y) for a, b in zip(rx, ry))
    den_x = sum((a - mean_x) ** 2 for a in rx)
    den_y = sum((b - mean_y) ** 2 for b in ry)
    if den_x == 0 or den_y == 0:
        raise LabError("constant rank vector has no defined correlation")
    if den_x == den_y:
        return float(num / den_x)  # exact: covers every tie-free case and +/-1 extremes
    return float(num) / sqrt(float(den_x) * float(den_y))


def spearman_iaa(judgments: list[Judgment]) -> dict[str, float]:
    """Per dimension: correlation between the two annotators of each judged pair.

    Every (item_id, system_id, dimension) must be judged by exactly two
    annotators; within each pair the annotator with the smaller id supplies x.
    """
    validate_judgments(judgments)
    groups: dict[tuple[str, str, str], list[Judgment]] = {}
    for j in judgments:
        groups.setdefault((j.dimension, j.item_id, j.system_id), []).append(j)
    bad = sum(1 for js in groups.values() if len(js) != 2)
    if bad:
        raise UnpairedJudgments(bad)
    result = {}
    for dimension in DIMENSIONS:
        xs, ys = [], []
        for key in sorted(groups):
            if key[0] != dimension:
                continue
            first, second = sorted(groups[key], key=lambda j: j.annotator)
            xs.append(first.score)
            ys.append(second.score)
        if xs:
            result[dimension] = spearman(xs, ys)
    return result
