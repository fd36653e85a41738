import pytest

from translationese_lab.corpus import AlignedSet, Corpus, align, load_corpus, save_corpus
from translationese_lab.errors import DuplicateId, IdMismatch, LabError, MalformedCorpus


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_default_line_ids(tmp_path):
    path = write(tmp_path, "c.txt", "one sentence\ntwo sentence\nthree sentence\n")
    corpus = load_corpus(path, role="translation", name="c")
    assert corpus.ids == ["L1", "L2", "L3"]
    assert corpus.text_of("L2") == "two sentence"


def test_explicit_id(tmp_path):
    path = write(tmp_path, "c.txt", "s7\tHello.\n")
    corpus = load_corpus(path, role="translation", name="c")
    assert corpus.ids == ["s7"]
    assert corpus.text_of("s7") == "Hello."


def test_crlf_and_trailing_whitespace(tmp_path):
    path = write(tmp_path, "c.txt", "a b c  \r\nx\ty z\r\n")
    corpus = load_corpus(path, role="translation", name="c")
    assert corpus.sentences[0] == ("L1", "a b c")
    assert corpus.sentences[1] == ("x", "y z")  # interior tab is an id separator


def test_blank_line_is_error(tmp_path):
    path = write(tmp_path, "c.txt", "one\n\ntwo\n")
    with pytest.raises(MalformedCorpus) as excinfo:
        load_corpus(path, role="translation", name="c")
    assert excinfo.value.line_no == 2


def test_duplicate_explicit_id(tmp_path):
    path = write(tmp_path, "c.txt", "a\tone\na\ttwo\n")
    with pytest.raises(DuplicateId):
        load_corpus(path, role="translation", name="c")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "nope.txt", role="translation", name="c")


def test_system_output_requires_system_id():
    with pytest.raises(LabError):
        Corpus(name="x", role="system_output", sentences=(("L1", "t"),))


def test_load_save_load_identity(tmp_path):
    path = write(tmp_path, "c.txt", "one two\nsecond line here\n")
    corpus = load_corpus(path, role="translation", name="c")
    out = tmp_path / "round.txt"
    save_corpus(corpus, out)
    again = load_corpus(out, role="translation", name="c")
    assert again.sentences == corpus.sentences


def test_align_success_and_order():
    base = Corpus(name="b", role="translation", sentences=(("L1", "a"), ("L2", "b")))
    out = Corpus(
        name="o",
        role="system_output",
        system_id="sys",
        sentences=(("L2", "B"), ("L1", "A")),  # permuted
    )
    aligned = align(base, out)
    assert aligned.ids == ["L1", "L2"]
    assert [t for _, t in aligned.sentences] == ["A", "B"]


def test_align_mismatch_lists_symmetric_difference():
    base = Corpus(name="b", role="translation", sentences=(("L1", "a"), ("L5", "b")))
    out = Corpus(
        name="o", role="system_output", system_id="sys", sentences=(("L1", "A"), ("L9", "X"))
    )
    with pytest.raises(IdMismatch) as excinfo:
        align(base, out)
    assert excinfo.value.missing == ["L5"]
    assert excinfo.value.extra == ["L9"]


def test_align_symmetric_failure():
    a = Corpus(name="a", role="translation", sentences=(("L1", "a"),))
    b = Corpus(name="b", role="system_output", system_id="s", sentences=(("L2", "b"),))
    with pytest.raises(IdMismatch):
        align(a, b)
    c = Corpus(name="c", role="translation", sentences=(("L2", "b"),))
    d = Corpus(name="d", role="system_output", system_id="s", sentences=(("L1", "a"),))
    with pytest.raises(IdMismatch):
        align(c, d)


def test_thousand_line_subset(tmp_path):
    path = write(
        tmp_path, "big.txt", "".join(f"translated sentence {k}\n" for k in range(1, 1001))
    )
    corpus = load_corpus(path, role="translation", name="enntt-trans")
    assert len(corpus) == 1000
    assert corpus.ids[0] == "L1" and corpus.ids[-1] == "L1000"


def test_aligned_set_add_output():
    base = Corpus(name="b", role="translation", sentences=(("L1", "a"),))
    aligned = AlignedSet(baseline=base)
    aligned.add_output(
        Corpus(name="o", role="system_output", system_id="amr", sentences=(("L1", "A"),))
    )
    assert set(aligned.outputs) == {"amr"}
