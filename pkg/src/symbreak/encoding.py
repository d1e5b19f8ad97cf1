"""Colored-graph encoding whose automorphisms are the program's syntactic
symmetries.

Every atom contributes a positive node (color 1) and a negative node
(color 2) joined by an edge, so any automorphism maps literals
consistently.  Every rule contributes a head node and a body node wired to
the literals it mentions; choice heads, minimize statements, bounds and
weights get their own colors so that structurally different rules can
never be exchanged.  The graph is undirected throughout.

The reserved false atom is not represented: rules it heads (integrity
constraints) keep their head node but get no head-literal edge, which both
pins the false atom trivially and lets constraints only map onto other
constraints.
"""

from collections import Counter
from dataclasses import dataclass, replace
from functools import cached_property

from .smodels import (BasicRule, CardinalityRule, ChoiceRule, DisjunctiveRule,
                      GroundProgram, MinimizeStatement, WeightRule,
                      semantic_view)

ATOM_COLOR = 1
NEGATION_COLOR = 2
HEAD_COLOR = 3
BODY_COLOR = 4
CHOICE_HEAD_COLOR = 5
MINIMIZE_COLOR = 6
FIRST_VALUE_COLOR = 7


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected graph with integer node colors.

    Nodes are dense 0-based ids.  When built from a program, ``atoms``
    lists the encoded atom indices in node order: atom ``atoms[i]`` owns
    the positive node ``2*i`` and the negative node ``2*i + 1``; rule
    nodes follow.
    """

    colors: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]
    atoms: tuple[int, ...] = ()

    @property
    def n_nodes(self) -> int:
        return len(self.colors)

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(ns) for ns in self.neighbors)

    @cached_property
    def _atom_index(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    def atom_node(self, atom: int) -> int:
        return 2 * self._atom_index[atom]

    def negation_node(self, atom: int) -> int:
        return 2 * self._atom_index[atom] + 1

    def is_atom_node(self, node: int) -> bool:
        return node < 2 * len(self.atoms) and node % 2 == 0

    def node_atom(self, node: int) -> int:
        """The atom owning a literal node (positive or negative)."""
        if node >= 2 * len(self.atoms):
            raise ValueError(f"node {node} is not a literal node")
        return self.atoms[node // 2]

    def edges(self):
        for u, ns in enumerate(self.neighbors):
            for v in ns:
                if u < v:
                    yield u, v


def build_graph(colors, edges, atoms=()) -> ColoredGraph:
    """Construct a graph from an edge list, checking it is simple."""
    colors = tuple(colors)
    n = len(colors)
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self loop on node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return ColoredGraph(colors, tuple(tuple(sorted(ns)) for ns in nbrs),
                        tuple(atoms))


def encode_program(program: GroundProgram) -> ColoredGraph:
    """Encode a validated program (compute blocks become constraints)."""
    sem = semantic_view(program)
    atoms = sem.atoms
    index = {a: i for i, a in enumerate(atoms)}
    colors = []
    for _ in atoms:
        colors.append(ATOM_COLOR)
        colors.append(NEGATION_COLOR)
    edges = set()
    for i in range(len(atoms)):
        edges.add((2 * i, 2 * i + 1))

    values = set()
    for r in sem.rules:
        if isinstance(r, (CardinalityRule, WeightRule)):
            values.add(r.bound)
        if isinstance(r, (WeightRule, MinimizeStatement)):
            values.update(r.weights)
    value_color = {v: FIRST_VALUE_COLOR + i for i, v in enumerate(sorted(values))}

    def new_node(color: int) -> int:
        colors.append(color)
        return len(colors) - 1

    def pos_node(a: int) -> int:
        return 2 * index[a]

    def neg_node(a: int) -> int:
        return 2 * index[a] + 1

    def connect(u: int, v: int):
        edges.add((min(u, v), max(u, v)))

    def connect_heads(head_node: int, heads):
        for h in heads:
            if h != sem.false_atom:
                connect(head_node, pos_node(h))

    def connect_body(body_node: int, pos, neg):
        for a in pos:
            connect(body_node, pos_node(a))
        for b in neg:
            connect(body_node, neg_node(b))

    for r in sem.rules:
        if isinstance(r, (BasicRule, DisjunctiveRule)):
            heads = r.heads if isinstance(r, DisjunctiveRule) else (r.head,)
            hn = new_node(HEAD_COLOR)
            bn = new_node(BODY_COLOR)
            connect(hn, bn)
            connect_heads(hn, heads)
            connect_body(bn, r.pos, r.neg)
        elif isinstance(r, ChoiceRule):
            hn = new_node(CHOICE_HEAD_COLOR)
            bn = new_node(BODY_COLOR)
            connect(hn, bn)
            connect_heads(hn, r.heads)
            connect_body(bn, r.pos, r.neg)
        elif isinstance(r, CardinalityRule):
            hn = new_node(HEAD_COLOR)
            bn = new_node(value_color[r.bound])
            connect(hn, bn)
            connect_heads(hn, (r.head,))
            connect_body(bn, r.pos, r.neg)
        elif isinstance(r, WeightRule):
            hn = new_node(HEAD_COLOR)
            bn = new_node(value_color[r.bound])
            connect(hn, bn)
            connect_heads(hn, (r.head,))
            for a, is_pos, w in r.pairs():
                tn = new_node(value_color[w])
                connect(tn, pos_node(a) if is_pos else neg_node(a))
                connect(tn, bn)
        elif isinstance(r, MinimizeStatement):
            mn = new_node(MINIMIZE_COLOR)
            for a, is_pos, w in r.pairs():
                tn = new_node(value_color[w])
                connect(tn, pos_node(a) if is_pos else neg_node(a))
                connect(tn, mn)
        else:
            raise TypeError(f"not a rule: {r!r}")

    nbrs = [[] for _ in range(len(colors))]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return ColoredGraph(tuple(colors), tuple(tuple(sorted(ns)) for ns in nbrs),
                        atoms)


def color_census(graph: ColoredGraph) -> dict[int, int]:
    """Node count per color; values sum to the node count."""
    return dict(Counter(graph.colors))


def fix_nodes(graph: ColoredGraph, fixed) -> ColoredGraph:
    """Recolor each listed node with a fresh color.

    The automorphisms of the result are exactly the automorphisms of the
    input fixing every listed node pointwise.
    """
    fixed = list(fixed)
    if not fixed:
        return graph
    colors = list(graph.colors)
    fresh = max(colors) + 1
    for i, node in enumerate(fixed):
        colors[node] = fresh + i
    return replace(graph, colors=tuple(colors))


def dump_graph(graph: ColoredGraph) -> str:
    """Line-based debug dump: one ``node id color`` and ``edge u v`` per line."""
    out = [f"node {v} {c}" for v, c in enumerate(graph.colors)]
    out.extend(f"edge {u} {v}" for u, v in graph.edges())
    return "\n".join(out) + ("\n" if out else "")
