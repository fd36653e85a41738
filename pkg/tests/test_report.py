import json

import pytest

from translationese_lab.errors import ProvenanceMismatch
from translationese_lab.metrics import MetricReport
from translationese_lab.postag.tags import UNIVERSAL_TAGS
from translationese_lab.report import (
    Comparison,
    build_report,
    cohesive_improved,
    pos_closeness,
    render_json,
    render_markdown,
    render_tsv,
    ttr_improved,
)


def report_of(name, ttr=0.1, cohesive=100, pos=None, lexicon="lex@1", tokenizer="tok/1", tagger="tm"):
    pos_freq = None
    if pos is not None:
        pos_freq = dict.fromkeys(UNIVERSAL_TAGS, 0.0)
        pos_freq.update(pos)
    return MetricReport(
        corpus_name=name,
        token_count=1000,
        type_count=int(1000 * ttr),
        ttr=ttr,
        cohesive_count=cohesive,
        avg_sentence_length=20.0,
        sentence_count=50,
        pos_freq=pos_freq,
        tokenizer_version=tokenizer,
        lexicon_source=lexicon,
        tagger_model=tagger,
    )


def test_ttr_improved_strictly():
    base = report_of("base", ttr=0.0890)
    assert ttr_improved(report_of("amr", ttr=0.1002), base) is True
    assert ttr_improved(report_of("mt", ttr=0.0850), base) is False
    assert ttr_improved(report_of("same", ttr=0.0890), base) is False


def test_cohesive_improved_strictly():
    base = report_of("base", cohesive=461)
    assert cohesive_improved(report_of("amr", cohesive=348), base) is True
    assert cohesive_improved(report_of("mt", cohesive=483), base) is False
    assert cohesive_improved(report_of("t5", cohesive=446), base) is True
    assert cohesive_improved(report_of("same", cohesive=461), base) is False


def test_provenance_mismatch_refused():
    base = report_of("base", tokenizer="tok/1")
    other = report_of("sys", tokenizer="tok/2")
    with pytest.raises(ProvenanceMismatch):
        ttr_improved(other, base)
    with pytest.raises(ProvenanceMismatch):
        cohesive_improved(report_of("sys", lexicon="lex@2"), base)


def test_pos_closeness_hand_cases():
    base = report_of("base", pos={"ADP": 0.1129, "ADV": 0.0433, "DET": 0.0982})
    orig = report_of("orig", pos={"ADP": 0.1108, "ADV": 0.0389, "DET": 0.0984})
    amr = report_of("amr", pos={"ADP": 0.1103, "ADV": 0.0419, "DET": 0.0963})
    mt = report_of("mt", pos={"ADP": 0.1144, "ADV": 0.0413, "DET": 0.1004})
    assert pos_closeness(amr, base, orig, ["ADV"]) == {"ADV": True}
    assert pos_closeness(mt, base, orig, ["ADP"]) == {"ADP": False}
    exact = report_of("exact", pos={"ADP": 0.1108, "ADV": 0.0389, "DET": 0.0984})
    assert pos_closeness(exact, base, orig, ["ADP", "ADV"]) == {"ADP": True, "ADV": True}


def test_pos_closeness_tagger_mismatch():
    base = report_of("base", pos={"ADP": 0.1}, tagger="A")
    orig = report_of("orig", pos={"ADP": 0.1}, tagger="A")
    system = report_of("sys", pos={"ADP": 0.1}, tagger="B")
    with pytest.raises(ProvenanceMismatch):
        pos_closeness(system, base, orig, ["ADP"])


def paper_comparison():
    base = report_of("translations", ttr=0.0890, cohesive=461,
                     pos={"ADP": 0.1129, "ADV": 0.0433, "DET": 0.0982})
    orig = report_of("originally-english", ttr=0.11, cohesive=300,
                     pos={"ADP": 0.1108, "ADV": 0.0389, "DET": 0.0984})
    systems = {
        "mt": report_of("mt", ttr=0.0850, cohesive=483,
                        pos={"ADP": 0.1144, "ADV": 0.0413, "DET": 0.1004}),
        "para-bart": report_of("para-bart", ttr=0.1172, cohesive=277,
                               pos={"ADP": 0.1009, "ADV": 0.0457, "DET": 0.0960}),
        "para-t5": report_of("para-t5", ttr=0.0736, cohesive=446,
                             pos={"ADP": 0.1060, "ADV": 0.0333, "DET": 0.0958}),
        "amr-ptg": report_of("amr-ptg", ttr=0.1002, cohesive=348,
                             pos={"ADP": 0.1103, "ADV": 0.0419, "DET": 0.0963}),
    }
    return Comparison(baseline=base, systems=systems, original_ref=orig)


def test_checkmark_pattern_for_published_values():
    doc = build_report(paper_comparison())
    marks = {
        name: (entry["ttr_improved"], entry["cohesive_improved"])
        for name, entry in doc["systems"].items()
    }
    assert marks == {
        "mt": (False, False),
        "para-bart": (True, True),
        "para-t5": (False, True),
        "amr-ptg": (True, True),
    }


def test_single_system_renders_one_row():
    comparison = paper_comparison()
    single = Comparison(
        baseline=comparison.baseline, systems={"mt": comparison.systems["mt"]}
    )
    doc = build_report(single)
    assert list(doc["systems"]) == ["mt"]
    md = render_markdown(doc)
    assert md.count("| mt | 0.0850 |") == 1


def test_render_byte_stable_and_value_exact():
    doc1 = build_report(paper_comparison())
    doc2 = build_report(paper_comparison())
    assert render_json(doc1) == render_json(doc2)
    assert render_markdown(doc1) == render_markdown(doc2)
    assert render_tsv(doc1) == render_tsv(doc2)
    reparsed = json.loads(render_json(doc1))
    assert reparsed["systems"]["amr-ptg"]["ttr"] == 0.1002  # 64-bit exact round trip


def test_comparison_rejects_mixed_provenance():
    base = report_of("base")
    with pytest.raises(ProvenanceMismatch):
        Comparison(baseline=base, systems={"s": report_of("s", lexicon="other@9")})


def test_attach_similarity_table():
    from translationese_lab.report import attach_similarity

    doc = build_report(paper_comparison())
    attach_similarity(
        doc,
        {
            "amr-ptg": {
                "scores": {"chrf": 75.81, "token_f1": 84.95},
                "engines": {"chrf": "char-ngram-f/6-beta2"},
                "sentence_count": 1000,
            }
        },
    )
    assert doc["similarity"]["amr-ptg"]["scores"]["chrf"] == 75.81
    md = render_markdown(doc)
    assert "Reference-based similarity" in md
    assert "75.81" in md
