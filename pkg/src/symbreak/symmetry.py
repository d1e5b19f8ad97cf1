"""Atom-level symmetry analysis.

Node automorphisms get restricted to atom permutations, validated as
syntactic symmetries (a hard gate: nothing unsound can flow into
constraint synthesis), and post-processed for breaking power:
row-interchangeability matrices whose full subgroup can be broken
completely, an atom order that matches the generators, and binary
prefix symmetries from a pointwise-stabilizer chain.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .automorphism import (GeneratorSearch, find_generators,
                           orbit_with_witnesses)
from .encoding import ColoredGraph, fix_nodes
from .smodels import (BasicRule, CardinalityRule, ChoiceRule, DisjunctiveRule,
                      GroundProgram, MinimizeStatement, WeightRule,
                      semantic_view)


@dataclass(frozen=True)
class AtomPermutation:
    """A permutation of atoms, stored by its non-fixed points only."""

    moved: dict[int, int]

    def __post_init__(self):
        clean = {a: b for a, b in self.moved.items() if a != b}
        if set(clean) != set(clean.values()):
            raise ValueError("not a bijection on its support")
        object.__setattr__(self, "moved", clean)

    @classmethod
    def from_cycles(cls, *cycles) -> "AtomPermutation":
        moved = {}
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                moved[a] = b
        return cls(moved)

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(self.moved)

    @property
    def is_identity(self) -> bool:
        return not self.moved

    def image_of(self, atom: int) -> int:
        return self.moved.get(atom, atom)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition; cycles sorted by and starting at their minimum."""
        seen = set()
        out = []
        for start in sorted(self.moved):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            a = self.moved[start]
            while a != start:
                cycle.append(a)
                seen.add(a)
                a = self.moved[a]
            out.append(tuple(cycle))
        return out

    def cycle_of(self, atom: int) -> tuple[int, ...]:
        if atom not in self.moved:
            return (atom,)
        cycle = [atom]
        a = self.moved[atom]
        while a != atom:
            cycle.append(a)
            a = self.moved[a]
        return tuple(cycle)

    def is_involution(self) -> bool:
        return bool(self.moved) and all(self.moved[b] == a
                                        for a, b in self.moved.items())

    def compose(self, other: "AtomPermutation") -> "AtomPermutation":
        """Apply self, then other."""
        atoms = self.support | other.support
        return AtomPermutation({a: other.image_of(self.image_of(a)) for a in atoms})

    def inverse(self) -> "AtomPermutation":
        return AtomPermutation({b: a for a, b in self.moved.items()})

    def apply_to_set(self, interp) -> frozenset[int]:
        return frozenset(self.image_of(a) for a in interp)

    def key(self):
        return tuple(sorted(self.moved.items()))

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        if not self.moved:
            return "()"
        return "".join("(" + " ".join(str(a) for a in c) + ")"
                       for c in self.cycles())


def restrict_to_atoms(graph: ColoredGraph, node_perm) -> AtomPermutation:
    """Atom permutation induced by a graph automorphism.

    Atom nodes only ever map to atom nodes (color 1 is theirs alone), so
    the restriction is well defined; the reserved false atom has no node
    and can therefore never move.
    """
    moved = {}
    for i, a in enumerate(graph.atoms):
        image = node_perm[2 * i]
        b = graph.node_atom(image)
        if b != a:
            moved[a] = b
    return AtomPermutation(moved)


def permute_rule(rule, perm: AtomPermutation):
    """Apply an atom permutation to one rule."""
    f = perm.image_of
    if isinstance(rule, BasicRule):
        return BasicRule(f(rule.head), tuple(map(f, rule.pos)), tuple(map(f, rule.neg)))
    if isinstance(rule, CardinalityRule):
        return CardinalityRule(f(rule.head), rule.bound,
                               tuple(map(f, rule.pos)), tuple(map(f, rule.neg)))
    if isinstance(rule, ChoiceRule):
        return ChoiceRule(tuple(map(f, rule.heads)),
                          tuple(map(f, rule.pos)), tuple(map(f, rule.neg)))
    if isinstance(rule, WeightRule):
        return WeightRule(f(rule.head), rule.bound,
                          tuple(map(f, rule.pos)), tuple(map(f, rule.neg)),
                          rule.weights)
    if isinstance(rule, MinimizeStatement):
        return MinimizeStatement(tuple(map(f, rule.pos)), tuple(map(f, rule.neg)),
                                 rule.weights)
    if isinstance(rule, DisjunctiveRule):
        return DisjunctiveRule(tuple(map(f, rule.heads)),
                               tuple(map(f, rule.pos)), tuple(map(f, rule.neg)))
    raise TypeError(f"not a rule: {rule!r}")


def is_syntactic_symmetry(program: GroundProgram, perm: AtomPermutation) -> bool:
    """True when the permuted program equals the original as a rule multiset.

    Bodies compare as literal multisets, weight rules and minimize
    statements as multisets of (literal, weight) pairs plus the bound.
    Compute blocks take part through their constraint form, and a
    permutation moving the reserved false atom is never a symmetry.
    """
    sem = semantic_view(program)
    if sem.false_atom is not None and perm.image_of(sem.false_atom) != sem.false_atom:
        return False
    if any(a < 1 or a > sem.max_atom for a in perm.support):
        return False
    base = Counter(r.key() for r in sem.rules)
    mapped = Counter(permute_rule(r, perm).key() for r in sem.rules)
    return base == mapped


@dataclass(frozen=True)
class RowMatrix:
    """Equal-length disjoint atom tuples whose rows may be swapped freely.

    Columns are aligned: exchanging two whole rows, position by position,
    is a syntactic symmetry, so the full row-permutation subgroup is
    available for complete breaking.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("rows must share one length")
        flat = [a for r in self.rows for a in r]
        if len(set(flat)) != len(flat):
            raise ValueError("rows must be pairwise disjoint")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @cached_property
    def atoms(self) -> frozenset[int]:
        return frozenset(a for r in self.rows for a in r)

    def row_swap(self, i: int, j: int) -> AtomPermutation:
        moved = {}
        for a, b in zip(self.rows[i], self.rows[j]):
            moved[a] = b
            moved[b] = a
        return AtomPermutation(moved)

    def adjacent_swap(self, i: int) -> AtomPermutation:
        return self.row_swap(i, i + 1)

    def row_map_of(self, perm: AtomPermutation):
        """Row permutation realized by perm, or None.

        Returns the mapping row index -> row index when perm permutes the
        matrix rows column-consistently and moves nothing else; such a
        permutation is already broken completely by the row constraints.
        """
        if not perm.support <= self.atoms:
            return None
        first_col = {row[0]: i for i, row in enumerate(self.rows)}
        mapping = {}
        for i, row in enumerate(self.rows):
            j = first_col.get(perm.image_of(row[0]))
            if j is None:
                return None
            if any(perm.image_of(a) != b for a, b in zip(row, self.rows[j])):
                return None
            mapping[i] = j
        return mapping


def _swap_of(row_a, row_b) -> AtomPermutation:
    moved = {}
    for a, b in zip(row_a, row_b):
        moved[a] = b
        moved[b] = a
    return AtomPermutation(moved)


def _canonical_matrix(rows) -> RowMatrix:
    """Reorder rows/columns deterministically: the row holding the smallest
    atom comes first with its atoms ascending; other rows sort by column 0."""
    smallest = min(a for r in rows for a in r)
    first = next(r for r in rows if smallest in r)
    col_order = sorted(range(len(first)), key=lambda j: first[j])
    reordered = [tuple(r[j] for j in col_order) for r in rows]
    first = next(r for r in reordered if smallest in r)
    rest = sorted((r for r in reordered if r != first), key=lambda r: r[0])
    return RowMatrix((first, *rest))


def detect_rows(program: GroundProgram, gens) -> list[RowMatrix]:
    """Find row-interchangeability structure among validated generators.

    Seeds are generators that are involutions (disjoint 2-cycles read as
    two aligned rows); rows grow through images of the first row under
    other generators and products of two.  Every appended row is admitted
    only if the induced adjacent-row swap is itself a syntactic symmetry,
    so an unsound matrix cannot be produced.  Matrices need at least 3
    rows to beat plain per-generator breaking; overlapping candidates are
    resolved toward more atoms, then more rows.
    """
    pool = []
    pool_keys = set()
    for g in gens:
        if not g.is_identity and g.key() not in pool_keys:
            pool.append(g)
            pool_keys.add(g.key())
    for g in gens:
        for h in gens:
            prod = g.compose(h)
            if not prod.is_identity and prod.key() not in pool_keys:
                pool.append(prod)
                pool_keys.add(prod.key())

    candidates = []
    seen_matrices = set()
    for seed in gens:
        if not seed.is_involution():
            continue
        pairs = sorted(seed.cycles())
        row_one = tuple(a for a, _ in pairs)
        row_two = tuple(b for _, b in pairs)
        rows = [row_one, row_two]
        used = set(row_one) | set(row_two)
        grew = True
        while grew:
            grew = False
            for cand in pool:
                image = tuple(cand.image_of(a) for a in row_one)
                if len(set(image)) != len(image) or not used.isdisjoint(image):
                    continue
                swap = _swap_of(rows[-1], image)
                if is_syntactic_symmetry(program, swap):
                    rows.append(image)
                    used.update(image)
                    grew = True
        if len(rows) < 3:
            continue
        matrix = _canonical_matrix(rows)
        if matrix.rows in seen_matrices:
            continue
        if all(is_syntactic_symmetry(program, matrix.adjacent_swap(i))
               for i in range(matrix.n_rows - 1)):
            seen_matrices.add(matrix.rows)
            candidates.append(matrix)

    candidates.sort(key=lambda m: (-len(m.atoms), -m.n_rows, min(m.atoms), m.rows))
    chosen = []
    taken = set()
    for m in candidates:
        if taken.isdisjoint(m.atoms):
            chosen.append(m)
            taken |= m.atoms
    return chosen


@dataclass(frozen=True)
class AtomOrder:
    """Total order on atoms 1..max_atom, as the sequence of atoms by rank."""

    sequence: tuple[int, ...]

    @cached_property
    def rank(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.sequence)}

    def key(self, atom: int) -> int:
        return self.rank[atom]

    def sort_atoms(self, atoms) -> list[int]:
        return sorted(atoms, key=self.rank.__getitem__)


def choose_order(program: GroundProgram, gens, rows) -> AtomOrder:
    """Atom order matched to the detected symmetries.

    Matrix atoms come first in row-major layout, then the remaining
    support of each generator cycle by cycle (generators by ascending
    support size, then smallest support atom), then untouched atoms by
    index.
    """
    sequence = []
    seen = set()

    def push(a):
        if a not in seen:
            seen.add(a)
            sequence.append(a)

    for matrix in rows:
        for row in matrix.rows:
            for a in row:
                push(a)
    for g in sorted(gens, key=lambda g: (len(g.support), min(g.support, default=0))):
        for cycle in g.cycles():
            for a in cycle:
                push(a)
    for a in range(1, program.max_atom + 1):
        push(a)
    return AtomOrder(tuple(sequence))


class BinarySymmetry(NamedTuple):
    """A pair (first, second) plus a witnessing symmetry mapping first to
    second while moving nothing ranked below first."""

    first: int
    second: int
    witness: AtomPermutation


def stabilizer_binary_symmetries(graph: ColoredGraph, order: AtomOrder,
                                 levels: int = 5,
                                 search_budget: int = 10 ** 6,
                                 initial: GeneratorSearch = None) -> list[BinarySymmetry]:
    """Binary prefix symmetries from a pointwise-stabilizer chain.

    At each level the minimum moved atom v (by the given order) is paired
    with every other atom in its orbit, then v's node is fixed by
    recoloring and the search repeats on the stabilizer.  Each pair
    carries the orbit witness so callers can re-validate it as a
    syntactic symmetry before use.
    """
    out = []
    seen = set()
    current = graph
    result = initial if initial is not None else find_generators(current, search_budget)
    for _ in range(levels):
        gens = result.generators
        moved = set()
        for g in gens:
            for i, a in enumerate(current.atoms):
                if g[2 * i] != 2 * i:
                    moved.add(a)
        if not moved:
            break
        v = min(moved, key=order.key)
        start = current.atom_node(v)
        witnesses = orbit_with_witnesses(gens, start, current.n_nodes)
        for node in sorted(witnesses):
            if not current.is_atom_node(node):
                continue
            w = current.node_atom(node)
            if w == v or (v, w) in seen:
                continue
            seen.add((v, w))
            out.append(BinarySymmetry(v, w, restrict_to_atoms(current, witnesses[node])))
        current = fix_nodes(current, [start])
        result = find_generators(current, search_budget)
    return out
