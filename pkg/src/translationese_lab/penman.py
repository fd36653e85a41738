"""PENMAN notation for rooted, directed, labeled meaning graphs.

A graph like::

    (w / want-01
        :ARG0 (b / boy)
        :ARG1 (g / go-01
            :ARG0 b))

has variables (w, b, g) each defined exactly once with a concept, role-labeled
edges, and re-entrant bare mentions (the second ``b``). Targets may also be
attribute constants: quoted strings, numbers, or bare symbols such as the
polarity ``-``. Constants are not nodes.

A bare unquoted target is classified as a variable mention when it either
matches a variable already defined in the graph or looks like a variable name
(1-3 lowercase letters plus an optional numeric suffix). A variable-shaped
mention that never receives a concept raises UndefinedVariable; anything else
(``imperative``, ``-``, ``3``) is a constant.

Serialization is canonical: depth-first from the root, outgoing edges in
insertion order, 4 spaces per depth level. Edges are traversed in either
direction; traversing an edge against its stored orientation prints the
inverse role (``:ARG0`` <-> ``:ARG0-of``), so any connected graph serializes
from its root regardless of edge orientation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DuplicateVariable,
    EmptyInput,
    InvalidGraph,
    MalformedPenman,
    UnbalancedParens,
    UndefinedVariable,
)

_ROLE_RE = re.compile(r":[A-Za-z][A-Za-z0-9]*(?:-[A-Za-z0-9]+)*$")
_VAR_RE = re.compile(r"[a-z]{1,3}[0-9]*$")
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(?:\.[0-9]+)?$")

VARIABLE = "var"
CONSTANT = "const"


@dataclass(frozen=True)
class Edge:
    source: str
    role: str
    target: str
    kind: str  # VARIABLE or CONSTANT

    def is_node(self) -> bool:
        return self.kind == VARIABLE


@dataclass(frozen=True)
class AmrGraph:
    root: str
    nodes: dict[str, str]  # variable -> concept, in definition order
    edges: tuple[Edge, ...]
    metadata: tuple[str, ...] = ()  # verbatim "# ::" comment lines

    def constants(self) -> list[str]:
        return [e.target for e in self.edges if e.kind == CONSTANT]

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)


def invert_role(role: str) -> str:
    return role[:-3] if role.endswith("-of") else role + "-of"


def validate(graph: AmrGraph) -> None:
    """Raise InvalidGraph unless all AmrGraph invariants hold."""
    if not graph.nodes:
        raise InvalidGraph("graph has no nodes")
    if graph.root not in graph.nodes:
        raise InvalidGraph(f"root {graph.root!r} is not a defined variable")
    for var, concept in graph.nodes.items():
        if not var or not concept:
            raise InvalidGraph(f"empty variable or concept: ({var!r}, {concept!r})")
    for e in graph.edges:
        if e.source not in graph.nodes:
            raise InvalidGraph(f"edge source {e.source!r} is not a defined variable")
        if e.kind == VARIABLE and e.target not in graph.nodes:
            raise InvalidGraph(f"edge target {e.target!r} is not a defined variable")
        if not _ROLE_RE.fullmatch(e.role):
            raise InvalidGraph(f"bad role label {e.role!r}")
    # connectivity over undirected node-to-node edges
    if len(graph.nodes) > 1:
        adjacency: dict[str, set[str]] = {v: set() for v in graph.nodes}
        for e in graph.edges:
            if e.kind == VARIABLE:
                adjacency[e.source].add(e.target)
                adjacency[e.target].add(e.source)
        seen = {graph.root}
        stack = [graph.root]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if seen != set(graph.nodes):
            missing = sorted(set(graph.nodes) - seen)
            raise InvalidGraph(f"graph is disconnected; unreachable: {missing}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<lparen>\() | (?P<rparen>\)) | (?P<slash>/)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<symbol>[^\s()/]+)
    """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int]] = []  # (type, value, offset)
        pos = 0
        for m in _TOKEN_RE.finditer(text):
            if text[pos:m.start()].strip():
                raise MalformedPenman(
                    f"unexpected character at offset {pos}: {text[pos:m.start()].strip()[0]!r}"
                )
            pos = m.end()
            self.items.append((m.lastgroup, m.group(), m.start()))
        if text[pos:].strip():
            raise MalformedPenman(f"unexpected trailing characters at offset {pos}")
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, -1)

    def next(self, expect: str | None = None):
        kind, value, offset = self.peek()
        if kind is None:
            raise UnbalancedParens(-1)
        if expect is not None and kind != expect:
            if expect in ("lparen", "rparen"):
                raise UnbalancedParens(offset)
            raise MalformedPenman(f"expected {expect}, got {value!r} at offset {offset}")
        self.i += 1
        return kind, value, offset


def _split_metadata(text: str) -> tuple[list[str], str]:
    meta, body = [], []
    for line in text.split("\n"):
        if line.lstrip().startswith("#"):
            meta.append(line.rstrip())
        else:
            body.append(line)
    return meta, "\n".join(body)


def parse_penman(text: str) -> AmrGraph:
    """Parse one graph. Metadata comment lines ("# ..." ) are preserved verbatim."""
    if text is None or not text.strip():
        raise EmptyInput("no PENMAN content")
    meta, body = _split_metadata(text)
    if not body.strip():
        raise EmptyInput("only comments, no graph")
    tokens = _Tokens(body)

    nodes: dict[str, str] = {}
    edges: list[tuple[str, str, str, str, int]] = []  # source, role, target, tktype, offset
    pending: list[tuple[str, int]] = []  # bare symbol mentions to classify after pass 1
    _MAX_DEPTH = 500

    def parse_node(depth: int = 0) -> str:
        if depth > _MAX_DEPTH:
            raise MalformedPenman(f"nesting deeper than {_MAX_DEPTH}")
        _, _, lpos = tokens.next("lparen")
        kind, var, vpos = tokens.next()
        if kind != "symbol":
            raise MalformedPenman(f"expected variable, got {var!r} at offset {vpos}")
        kind, _, _ = tokens.next("slash")
        kind, concept, cpos = tokens.next()
        if kind != "symbol" and kind != "string":
            raise MalformedPenman(f"expected concept, got {concept!r} at offset {cpos}")
        if var in nodes:
            raise DuplicateVariable(var)
        nodes[var] = concept
        while True:
            kind, value, offset = tokens.peek()
            if kind == "rparen":
                tokens.next()
                return var
            if kind is None:
                raise UnbalancedParens(lpos)
            if kind != "symbol" or not value.startswith(":"):
                raise MalformedPenman(f"expected role or ')', got {value!r} at offset {offset}")
            role = value
            if not _ROLE_RE.fullmatch(role):
                raise MalformedPenman(f"bad role label {role!r} at offset {offset}")
            tokens.next()
            tkind, tvalue, toffset = tokens.peek()
            if tkind == "lparen":
                child = parse_node(depth + 1)
                edges.append((var, role, child, "node", toffset))
            elif tkind == "string":
                tokens.next()
                edges.append((var, role, tvalue, "string", toffset))
            elif tkind == "symbol":
                tokens.next()
                edges.append((var, role, tvalue, "bare", toffset))
                pending.append((tvalue, toffset))
            else:
                raise MalformedPenman(f"role {role} at offset {offset} has no target")

    root = parse_node()
    kind, value, offset = tokens.peek()
    if kind is not None:
        raise UnbalancedParens(offset)

    final_edges: list[Edge] = []
    for source, role, target, tktype, _ in edges:
        if tktype == "node":
            final_edges.append(Edge(source, role, target, VARIABLE))
        elif tktype == "string":
            final_edges.append(Edge(source, role, target, CONSTANT))
        else:
            if target in nodes:
                final_edges.append(Edge(source, role, target, VARIABLE))
            elif _NUMBER_RE.fullmatch(target) or target in ("-", "+") or not _VAR_RE.fullmatch(target):
                final_edges.append(Edge(source, role, target, CONSTANT))
            else:
                raise UndefinedVariable(target)

    graph = AmrGraph(root=root, nodes=nodes, edges=tuple(final_edges), metadata=tuple(meta))
    validate(graph)
    return graph


# ---------------------------------------------------------------------------
# serialization

def _spanning_tree(graph: AmrGraph) -> dict[int, tuple[str, str, str]]:
    """Choose the nesting structure: edge index -> (parent, child, printed role).

    Forward edges are preferred in insertion order, so graphs that came from
    text re-nest exactly as written; an edge is traversed backward (inverse
    role printed) only when its source is otherwise unreachable.
    """
    forward_out: dict[str, list[int]] = {v: [] for v in graph.nodes}
    for idx, e in enumerate(graph.edges):
        if e.kind == VARIABLE:
            forward_out[e.source].append(idx)

    tree: dict[int, tuple[str, str, str]] = {}
    reached = {graph.root}

    def forward_closure(var: str) -> None:
        for idx in forward_out[var]:
            e = graph.edges[idx]
            if e.target not in reached:
                reached.add(e.target)
                tree[idx] = (e.source, e.target, e.role)
                forward_closure(e.target)

    forward_closure(graph.root)
    while len(reached) < len(graph.nodes):
        for idx, e in enumerate(graph.edges):
            if e.kind != VARIABLE or idx in tree:
                continue
            if e.target in reached and e.source not in reached:
                reached.add(e.source)
                tree[idx] = (e.target, e.source, invert_role(e.role))
                forward_closure(e.source)
                break
        else:
            raise InvalidGraph("graph is disconnected")
    return tree


def serialize_penman(graph: AmrGraph) -> str:
    """Canonical text form.

    parse(serialize(g)) is isomorphic to g whenever every edge of g can be
    nested forward from the root (true of everything parse_penman returns).
    Edges stored against the traversal direction are printed with the inverse
    role, which preserves the undirected edge multiset but not exact roles.
    """
    validate(graph)
    tree = _spanning_tree(graph)

    # print order at each node: incident printable edges by insertion index
    site: dict[str, list[int]] = {v: [] for v in graph.nodes}
    for idx, e in enumerate(graph.edges):
        if idx in tree:
            site[tree[idx][0]].append(idx)
        else:
            site[e.source].append(idx)
    for indices in site.values():
        indices.sort()

    def emit(var: str, depth: int) -> str:
        indent = "    " * (depth + 1)
        parts = [f"({var} / {graph.nodes[var]}"]
        for idx in site[var]:
            e = graph.edges[idx]
            if idx in tree:
                _, child, role = tree[idx]
                parts.append(f"\n{indent}{role} {emit(child, depth + 1)}")
            else:
                parts.append(f"\n{indent}{e.role} {e.target}")
        parts.append(")")
        return "".join(parts)

    body = emit(graph.root, 0)
    if graph.metadata:
        return "\n".join(graph.metadata) + "\n" + body
    return body


# ---------------------------------------------------------------------------
# graph operations

def normalize_inverse_roles(graph: AmrGraph) -> AmrGraph:
    """Rewrite ``X :R-of Y`` as ``Y :R X`` for variable targets. Idempotent.

    The canonical serializer traverses edges in either direction, so flipping
    never disconnects the root-reachable orientation; every inverse role with
    a variable target is normalized unconditionally.
    """
    new_edges = []
    for e in graph.edges:
        if e.kind == VARIABLE and e.role.endswith("-of") and len(e.role) > 4:
            new_edges.append(Edge(e.target, e.role[:-3], e.source, VARIABLE))
        else:
            new_edges.append(e)
    return AmrGraph(
        root=graph.root, nodes=graph.nodes, edges=tuple(new_edges), metadata=graph.metadata
    )


def is_isomorphic(g1: AmrGraph, g2: AmrGraph) -> bool:
    """True iff a variable bijection maps (root, concepts, edges, constants) of g1 onto g2."""
    validate(g1)
    validate(g2)
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False
    if g1.nodes[g1.root] != g2.nodes[g2.root]:
        return False
    if sorted(g1.nodes.values()) != sorted(g2.nodes.values()):
        return False

    def signature(g: AmrGraph):
        sig = {v: [[], [], []] for v in g.nodes}  # out roles, in roles, const attrs
        for e in g.edges:
            if e.kind == CONSTANT:
                sig[e.source][2].append((e.role, e.target))
            else:
                sig[e.source][0].append(e.role)
                sig[e.target][1].append(e.role)
        return {
            v: (g.nodes[v], tuple(sorted(s[0])), tuple(sorted(s[1])), tuple(sorted(s[2])))
            for v, s in sig.items()
        }

    sig1, sig2 = signature(g1), signature(g2)
    candidates = {
        v1: [v2 for v2 in g2.nodes if sig2[v2] == sig1[v1]] for v1 in g1.nodes
    }
    if any(not c for c in candidates.values()):
        return False
    if g2.root not in candidates[g1.root]:
        return False
    candidates[g1.root] = [g2.root]

    edge_set2 = {}
    for e in g2.edges:
        key = (e.source, e.role, e.target, e.kind)
        edge_set2[key] = edge_set2.get(key, 0) + 1

    order = sorted(g1.nodes, key=lambda v: len(candidates[v]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    edges1_by_var: dict[str, list[Edge]] = {v: [] for v in g1.nodes}
    for e in g1.edges:
        edges1_by_var[e.source].append(e)
        if e.kind == VARIABLE:
            edges1_by_var[e.target].append(e)

    def consistent(v1: str, v2: str) -> bool:
        for e in edges1_by_var[v1]:
            if e.kind == CONSTANT:
                if (v2, e.role, e.target, CONSTANT) not in edge_set2:
                    return False
                continue
            src = mapping.get(e.source, v2 if e.source == v1 else None)
            tgt = mapping.get(e.target, v2 if e.target == v1 else None)
            if src is not None and tgt is not None:
                if (src, e.role, tgt, VARIABLE) not in edge_set2:
                    return False
        return True

    def assign(i: int) -> bool:
        if i == len(order):
            mapped = {}
            for e in g1.edges:
                tgt = mapping[e.target] if e.kind == VARIABLE else e.target
                key = (mapping[e.source], e.role, tgt, e.kind)
                mapped[key] = mapped.get(key, 0) + 1
            return mapped == edge_set2
        v1 = order[i]
        for v2 in candidates[v1]:
            if v2 in used:
                continue
            mapping[v1] = v2
            if consistent(v1, v2):
                used.add(v2)
                if assign(i + 1):
                    return True
                used.discard(v2)
            del mapping[v1]
        return False

    return assign(0)


def graph_stats(graph: AmrGraph) -> dict[str, int]:
    """Node/edge/reentrancy counts and the max nesting depth of the canonical form.

    reentrancy_count is the number of variable-target edges beyond each
    target's defining mention; for connected constant-free graphs,
    edge_count = node_count - 1 + reentrancy_count.
    """
    validate(graph)
    var_edges = sum(1 for e in graph.edges if e.kind == VARIABLE)
    reentrancy = var_edges - (len(graph.nodes) - 1)

    # depth of each node in the canonical serialization's nesting tree
    depth_of = {graph.root: 0}
    children: dict[str, list[str]] = {v: [] for v in graph.nodes}
    for parent, child, _ in _spanning_tree(graph).values():
        children[parent].append(child)
    stack = [graph.root]
    while stack:
        var = stack.pop()
        for child in children[var]:
            depth_of[child] = depth_of[var] + 1
            stack.append(child)
    return {
        "node_count": len(graph.nodes),
        "edge_count": len(graph.edges),
        "reentrancy_count": reentrancy,
        "max_depth": max(depth_of.values()),
    }


# ---------------------------------------------------------------------------
# multi-AMR files

def load_amr_file(path) -> list[AmrGraph]:
    """Read a standard multi-AMR file: graphs separated by blank lines,
    optional "# ::id"/"# ::snt" metadata comments attached to each graph."""
    from pathlib import Path

    text = Path(path).read_text(encoding="utf-8")
    graphs = []
    for block in re.split(r"\n\s*\n", text):
        if block.strip():
            graphs.append(parse_penman(block))
    if not graphs:
        raise EmptyInput(f"no graphs in {path}")
    return graphs


def save_amr_file(graphs, path) -> None:
    from pathlib import Path

    out = "\n\n".join(serialize_penman(g) for g in graphs) + "\n"
    Path(path).write_text(out, encoding="utf-8")
