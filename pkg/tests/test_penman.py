import random

import pytest

from penman_gen import mutate, random_graph_text
from translationese_lab.errors import (
    DuplicateVariable,
    EmptyInput,
    InvalidGraph,
    PenmanError,
    UnbalancedParens,
    UndefinedVariable,
)
from translationese_lab.penman import (
    AmrGraph,
    Edge,
    graph_stats,
    is_isomorphic,
    load_amr_file,
    normalize_inverse_roles,
    parse_penman,
    serialize_penman,
)


def test_minimal_graph():
    g = parse_penman("(h / hello)")
    assert g.root == "h"
    assert g.nodes == {"h": "hello"}
    assert g.edges == ()


def test_fig1_graph_counts(fig1_amr):
    g = parse_penman(fig1_amr)
    assert g.node_count() == 12
    assert g.edge_count() == 11
    assert g.root == "c"
    assert g.nodes["c"] == "contrast-01"


def test_duplicate_variable(fig1_amr):
    with pytest.raises(DuplicateVariable):
        parse_penman("(a / alpha :ARG0 (a / alpha2))")


def test_unbalanced():
    with pytest.raises(UnbalancedParens):
        parse_penman("(x / thing")
    with pytest.raises(UnbalancedParens):
        parse_penman("(x / thing))")


def test_empty_input():
    with pytest.raises(EmptyInput):
        parse_penman("")
    with pytest.raises(EmptyInput):
        parse_penman("   \n# :: only a comment\n")


def test_undefined_variable_reentrancy():
    with pytest.raises(UndefinedVariable):
        parse_penman("(a / alpha :ARG0 b)")


def test_bare_symbols_classified_as_constants():
    g = parse_penman('(a / alpha :polarity - :quant 3 :mode imperative :value "New York")')
    assert set(g.constants()) == {"-", "3", "imperative", '"New York"'}
    assert g.node_count() == 1


def test_serialize_minimal():
    g = parse_penman("(h / hello)")
    assert serialize_penman(g) == "(h / hello)"


def test_fig1_roundtrip_isomorphic(fig1_amr):
    g = parse_penman(fig1_amr)
    again = parse_penman(serialize_penman(g))
    assert again.node_count() == 12
    assert is_isomorphic(g, again)


def test_serialize_rejects_invalid_graph():
    bad = AmrGraph(root="a", nodes={"a": "alpha"}, edges=(Edge("a", ":ARG0", "zz", "var"),))
    with pytest.raises(InvalidGraph):
        serialize_penman(bad)


def test_isomorphic_alpha_equivalence(fig1_amr):
    g = parse_penman(fig1_amr)
    renamed = parse_penman(serialize_penman(g).replace("(a ", "(x ").replace(" a\n", " x\n"))
    assert is_isomorphic(g, renamed)


def test_isomorphic_detects_role_change(fig1_amr):
    g = parse_penman(fig1_amr)
    altered = parse_penman(fig1_amr.replace(":ARG0 (h / he)", ":ARG1 (h / he)"))
    assert not is_isomorphic(g, altered)


def test_isomorphic_different_sizes():
    assert not is_isomorphic(parse_penman("(h / hello)"), parse_penman("(h / hello :mod (x / big))"))


def test_isomorphic_same_signature_needs_structure_match():
    g1 = parse_penman("(a / p :ARG0 (b / q :ARG0 (c / q)))")
    g2 = parse_penman("(a / p :ARG0 (b / q) :ARG0 (c / q))")
    assert not is_isomorphic(g1, g2)


def test_normalize_inverse_roles(fig1_amr):
    g = parse_penman(fig1_amr)
    n = normalize_inverse_roles(g)
    flipped = [e for e in n.edges if e.role in (":ARG1", ":ARG0") and e.source in ("c3", "p3", "p2")]
    assert ("c3", ":ARG1", "g") in [(e.source, e.role, e.target) for e in n.edges]
    assert not any(e.role.endswith("-of") for e in n.edges)
    assert flipped


def test_normalize_identity_without_inverse_roles():
    g = parse_penman("(w / want-01 :ARG0 (b / boy))")
    assert normalize_inverse_roles(g) == g


def test_normalize_idempotent(fig1_amr):
    g = parse_penman(fig1_amr)
    once = normalize_inverse_roles(g)
    assert normalize_inverse_roles(once) == once


def test_normalize_preserves_undirected_structure(fig1_amr):
    g = parse_penman(fig1_amr)
    n = normalize_inverse_roles(g)

    def undirected(graph):
        return sorted(
            (min(e.source, e.target), max(e.source, e.target))
            for e in graph.edges
            if e.kind == "var"
        )

    assert g.nodes == n.nodes
    assert sorted(g.constants()) == sorted(n.constants())
    assert undirected(g) == undirected(n)


def test_normalized_graph_reserializes_to_same_text(fig1_amr):
    g = parse_penman(fig1_amr)
    assert serialize_penman(normalize_inverse_roles(g)) == serialize_penman(g)


def test_stats_minimal():
    assert graph_stats(parse_penman("(h / hello)")) == {
        "node_count": 1,
        "edge_count": 0,
        "reentrancy_count": 0,
        "max_depth": 0,
    }


def test_stats_fig1(fig1_amr):
    # max_depth oracle: deepest nesting in the printed graph is p2/p3 at level 5
    stats = graph_stats(parse_penman(fig1_amr))
    assert stats == {
        "node_count": 12,
        "edge_count": 11,
        "reentrancy_count": 0,
        "max_depth": 5,
    }


def test_stats_reentrancy():
    g = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))")
    assert graph_stats(g)["reentrancy_count"] == 1


def test_forward_reference_mention():
    g = parse_penman("(a / alpha :ARG0 b :ARG1 (b / beta))")
    assert g.node_count() == 2
    assert graph_stats(g)["reentrancy_count"] == 1
    assert is_isomorphic(g, parse_penman(serialize_penman(g)))


def test_metadata_preserved(tmp_path):
    text = "# ::id 42\n# ::snt A sentence.\n(h / hello)\n\n(w / world)\n"
    path = tmp_path / "f.amr"
    path.write_text(text, encoding="utf-8")
    graphs = load_amr_file(path)
    assert len(graphs) == 2
    assert graphs[0].metadata == ("# ::id 42", "# ::snt A sentence.")
    out = serialize_penman(graphs[0])
    assert out.startswith("# ::id 42\n# ::snt A sentence.\n(h / hello")


def test_random_roundtrip_and_depth_oracle():
    rng = random.Random(99)
    for _ in range(150):
        text = random_graph_text(rng, max_nodes=25)
        g = parse_penman(text)
        reparsed = parse_penman(serialize_penman(g))
        assert is_isomorphic(g, reparsed)
        # independent depth oracle: paren nesting depth of the canonical text
        canon = serialize_penman(g)
        depth = 0
        max_depth = 0
        for ch in canon:
            if ch == "(":
                depth += 1
                max_depth = max(max_depth, depth)
            elif ch == ")":
                depth -= 1
        assert graph_stats(g)["max_depth"] == max_depth - 1


def test_random_graph_edge_identity():
    # edge relation: edge_count - constant_edges == node_count - 1 + reentrancy_count
    rng = random.Random(7)
    for _ in range(100):
        g = parse_penman(random_graph_text(rng, max_nodes=30))
        stats = graph_stats(g)
        n_const = len(g.constants())
        assert stats["edge_count"] - n_const == stats["node_count"] - 1 + stats["reentrancy_count"]


def test_constant_free_graphs_satisfy_spec_edge_identity():
    rng = random.Random(8)
    for _ in range(100):
        g = parse_penman(random_graph_text(rng, max_nodes=30, allow_constants=False))
        stats = graph_stats(g)
        assert stats["edge_count"] == stats["node_count"] - 1 + stats["reentrancy_count"]


def test_fuzz_never_crashes():
    rng = random.Random(1234)
    base = [random_graph_text(rng, max_nodes=12) for _ in range(20)]
    for _ in range(2000):
        text = mutate(rng.choice(base), rng)
        try:
            g = parse_penman(text)
        except PenmanError:
            continue
        assert g.node_count() >= 1
