import json
import sys

import pytest

from conftest import ECHO_WORKER
from translationese_lab.cli import main


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(
        "However , this line was clearly translated .\n"
        "The second sentence is here .\n"
        "In other words , a third one .\n",
        encoding="utf-8",
    )
    return path


def test_no_args_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        run_cli()
    assert excinfo.value.code == 2


def test_unknown_subcommand_exit_2():
    with pytest.raises(SystemExit) as excinfo:
        run_cli("frobnicate")
    assert excinfo.value.code == 2


def test_missing_file_exit_1(tmp_path, capsys):
    status = run_cli("metrics", "--corpus", str(tmp_path / "nope.txt"))
    assert status == 1
    assert "nope.txt" in capsys.readouterr().err


def test_ingest_and_tokenize(tmp_path, corpus_file, capsys):
    out = tmp_path / "norm.txt"
    assert run_cli("ingest", str(corpus_file), "--role", "translation",
                   "--name", "enntt-trans", "--out", str(out)) == 0
    assert out.read_text(encoding="utf-8").startswith("L1\tHowever , this")
    tok_out = tmp_path / "tok.txt"
    assert run_cli("tokenize", "--in", str(corpus_file), "--out", str(tok_out)) == 0
    assert tok_out.read_text(encoding="utf-8").splitlines()[0].startswith("L1\tHowever ,")


def test_metrics_writes_report(tmp_path, corpus_file):
    out = tmp_path / "report.json"
    assert run_cli("metrics", "--corpus", str(corpus_file), "--out", str(out)) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["cohesive_count"] == 2
    assert report["sentence_count"] == 3
    assert report["ttr"] == report["type_count"] / report["token_count"]


def test_metrics_idempotent_output_bytes(tmp_path, corpus_file):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("metrics", "--corpus", str(corpus_file), "--out", str(a))
    run_cli("metrics", "--corpus", str(corpus_file), "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_train_tag_metrics_flow(tmp_path, corpus_file):
    treebank = tmp_path / "toy.tagged"
    rows = []
    for words, tags in [
        (["However", ",", "we", "agree", "."], ["ADV", "PUNCT", "PRON", "VERB", "PUNCT"]),
        (["The", "second", "sentence", "is", "here", "."],
         ["DET", "ADJ", "NOUN", "AUX", "ADV", "PUNCT"]),
    ]:
        for i, (w, t) in enumerate(zip(words, tags), 1):
            rows.append(f"{i}\t{w}\t_\t{t}\t_\t_\t_\t_\t_\t_")
        rows.append("")
    treebank.write_text("\n".join(rows) + "\n", encoding="utf-8")

    model = tmp_path / "m.apt"
    assert run_cli("train-tagger", "--treebank", str(treebank), "--epochs", "5",
                   "--seed", "42", "--out", str(model)) == 0
    tagged = tmp_path / "c.tagged"
    assert run_cli("tag", "--model", str(model), "--in", str(corpus_file),
                   "--out", str(tagged)) == 0
    assert len(tagged.read_text(encoding="utf-8").strip().split("\n\n")) == 3

    report = tmp_path / "r.json"
    assert run_cli("metrics", "--corpus", str(corpus_file), "--tagged", str(tagged),
                   "--out", str(report)) == 0
    data = json.loads(report.read_text(encoding="utf-8"))
    assert abs(sum(data["pos_freq"].values()) - 1.0) < 1e-9


def test_run_pipeline_cli(tmp_path, corpus_file):
    backend = tmp_path / "echo.toml"
    backend.write_text(
        f'id = "echo"\ntransport = "subprocess"\n'
        f'command = ["{sys.executable}", "{ECHO_WORKER}"]\ntimeout = 10.0\nbatch_size = 2\n',
        encoding="utf-8",
    )
    out = tmp_path / "out.txt"
    summary = tmp_path / "summary.json"
    records = tmp_path / "records.jsonl"
    assert run_cli("run", "--backend", str(backend), "--in", str(corpus_file),
                   "--out", str(out), "--cache", str(tmp_path / "cache"),
                   "--summary", str(summary), "--records", str(records)) == 0
    data = json.loads(summary.read_text(encoding="utf-8"))
    assert data["cache_hits"] == 0 and data["dispatched"] == 3
    assert len(records.read_text(encoding="utf-8").splitlines()) == 3
    # rerun: all cache hits
    assert run_cli("run", "--backend", str(backend), "--in", str(corpus_file),
                   "--out", str(out), "--cache", str(tmp_path / "cache"),
                   "--summary", str(summary)) == 0
    data = json.loads(summary.read_text(encoding="utf-8"))
    assert data["cache_hits"] == 3 and data["dispatched"] == 0


def test_cache_env_var_override(tmp_path, corpus_file, monkeypatch):
    backend = tmp_path / "echo.toml"
    backend.write_text(
        f'id = "echo"\ntransport = "subprocess"\n'
        f'command = ["{sys.executable}", "{ECHO_WORKER}"]\ntimeout = 10.0\n',
        encoding="utf-8",
    )
    env_cache = tmp_path / "env-cache"
    monkeypatch.setenv("TRANSLATIONESE_LAB_CACHE", str(env_cache))
    out = tmp_path / "out.txt"
    assert run_cli("run", "--backend", str(backend), "--in", str(corpus_file),
                   "--out", str(out), "--cache", str(tmp_path / "ignored")) == 0
    assert env_cache.is_dir() and list(env_cache.iterdir())
    assert not (tmp_path / "ignored").exists()


def test_amr_check_and_stats(tmp_path, fig1_amr, capsys):
    path = tmp_path / "f.amr"
    path.write_text(fig1_amr + "\n", encoding="utf-8")
    assert run_cli("amr", "check", str(path)) == 0
    assert run_cli("amr", "stats", str(path)) == 0
    line = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert line["node_count"] == 12 and line["edge_count"] == 11
    assert run_cli("amr", "stats", "--normalize", str(path)) == 0
    bad = tmp_path / "bad.amr"
    bad.write_text("(x / broken", encoding="utf-8")
    assert run_cli("amr", "check", str(bad)) == 1


def test_eval_sheets_and_aggregate(tmp_path, corpus_file, capsys):
    sys_out = tmp_path / "sys.txt"
    sys_out.write_text("L1\ta .\nL2\tb .\nL3\tc .\n", encoding="utf-8")
    sheets_dir = tmp_path / "sheets"
    assert run_cli("eval", "sheets", "--baseline", str(corpus_file),
                   "--system", f"amr={sys_out}", "--annotators", "ann1,ann2",
                   "--dimension", "fluency", "--seed", "7",
                   "--out-dir", str(sheets_dir)) == 0
    assert (sheets_dir / "sheet_ann1.txt").exists()
    assert (sheets_dir / "blinding_7.json").exists()

    judgments = tmp_path / "j.csv"
    judgments.write_text(
        "annotator,item_id,system_id,dimension,score\n"
        "a1,L1,amr,fluency,3\na2,L1,amr,fluency,4\n"
        "a1,L1,original,fluency,2\na2,L1,original,fluency,2\n",
        encoding="utf-8",
    )
    out = tmp_path / "agg.json"
    assert run_cli("eval", "aggregate", "--judgments", str(judgments), "--out", str(out)) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["scores"]["fluency"]["amr"]["mean"] == 3.5
    assert data["scores"]["fluency"]["amr"]["rank"] == 1
    assert data["scores"]["fluency"]["original"]["rank"] == 2
