"""Generation of stable-model-safe symmetry breaking rules.

A lex-leader fragment for a symmetry keeps exactly the interpretations
that are lexicographically no greater than their image, relative to a
chosen atom order with false below true.  Under stable semantics the
equality-prefix chain must be made of defined atoms (free auxiliaries do
not exist), so each chain atom gets its pair of defining rules and every
answer set of the input extends uniquely.

Positions that close a cycle of the permutation are skipped: once the
prefix chain has forced every other member of the cycle equal to its
image, the closing position is equal by transitivity, so its constraint
could never fire.  The chain is only built as far as the last emitted
constraint needs it, which keeps an involution's fragment at half its
naive size (a transposition becomes one bare constraint).
"""

from dataclasses import dataclass

from .smodels import BasicRule, GroundProgram, validate
from .symmetry import AtomOrder, AtomPermutation, RowMatrix


class FreshAtoms:
    """Allocator handing out atom indices above the input program."""

    def __init__(self, first: int):
        self.first = first
        self._next = first

    def fresh(self) -> int:
        atom = self._next
        self._next += 1
        return atom

    @property
    def count(self) -> int:
        return self._next - self.first


@dataclass(frozen=True)
class Fragment:
    """Rules and fresh atoms generated for one broken symmetry."""

    rules: tuple[BasicRule, ...]
    aux_atoms: tuple[int, ...] = ()


@dataclass(frozen=True)
class BreakingProgram:
    """Everything appended by symmetry breaking, for reporting and tests."""

    new_rules: tuple[BasicRule, ...]
    aux_atoms: tuple[int, ...]
    per_symmetry_aux_count: tuple[int, ...]
    new_max_atom: int


def lex_leader_rules(perm: AtomPermutation, order: AtomOrder, aux_limit: int,
                     alloc: FreshAtoms, constraint_head: int) -> Fragment:
    """Lex-leader fragment for one symmetry.

    Support atoms are laid out in ``order`` and truncated so at most
    ``aux_limit`` chain atoms are created.  Position i contributes the
    constraint ``<- e_{i-1}, v_i, not perm(v_i)`` unless its cycle is
    already closed by the prefix; chain atoms carry the two defining
    rules ``e_i <- e_{i-1}, v_i, perm(v_i)`` and
    ``e_i <- e_{i-1}, not v_i, not perm(v_i)``.
    """
    support = order.sort_atoms(perm.support)
    if not support:
        return Fragment(())
    points = support[:aux_limit + 1]
    prefix = set()
    emitted = []
    for i, v in enumerate(points):
        mates = set(perm.cycle_of(v)) - {v}
        if not mates <= prefix:
            emitted.append(i)
        prefix.add(v)
    last = emitted[-1]
    emit_at = set(emitted)

    rules = []
    aux = []
    chain = None
    for i, v in enumerate(points[:last + 1]):
        w = perm.image_of(v)
        if i in emit_at:
            body_pos = (v,) if chain is None else (chain, v)
            rules.append(BasicRule(constraint_head, body_pos, (w,)))
        if i < last:
            e = alloc.fresh()
            aux.append(e)
            if chain is None:
                rules.append(BasicRule(e, (v, w), ()))
                rules.append(BasicRule(e, (), (v, w)))
            else:
                rules.append(BasicRule(e, (chain, v, w), ()))
                rules.append(BasicRule(e, (chain,), (v, w)))
            chain = e
    return Fragment(tuple(rules), tuple(aux))


def break_rows(matrix: RowMatrix, order: AtomOrder, aux_limit: int,
               alloc: FreshAtoms, constraint_head: int) -> list[Fragment]:
    """Complete breaking of a row-interchangeability matrix.

    One lex-leader fragment per adjacent-row swap; with the matrix atoms
    laid out row-major in ``order`` each fragment reduces to the textbook
    ordering constraint between consecutive rows, and together they keep
    exactly one representative per multiset of row valuations.
    """
    return [lex_leader_rules(matrix.adjacent_swap(i), order, aux_limit,
                             alloc, constraint_head)
            for i in range(matrix.n_rows - 1)]


def binary_rules(pairs, constraint_head: int) -> Fragment:
    """One constraint ``<- v, not w`` per (v, w) pair, deduplicated."""
    seen = set()
    rules = []
    for v, w in pairs:
        if (v, w) in seen:
            continue
        seen.add((v, w))
        rules.append(BasicRule(constraint_head, (v,), (w,)))
    return Fragment(tuple(rules))


def assemble(program: GroundProgram, fragments, alloc: FreshAtoms,
             new_false: int = None) -> GroundProgram:
    """Append fragment rules to the program.

    Fresh atoms must be exactly the allocator's range above the input's
    max atom.  Duplicate constraints across fragments collapse to one
    occurrence.  When the input reserved no false atom and one had to be
    allocated, it is declared in B- so that downstream solvers treat the
    new constraint heads as underivable.
    """
    if alloc.first != program.max_atom + 1:
        raise ValueError("allocator does not start right above the program")
    allocated = set(range(alloc.first, alloc.first + alloc.count))
    claimed = set() if new_false is None else {new_false}
    for frag in fragments:
        claimed.update(frag.aux_atoms)
    if claimed != allocated:
        raise ValueError("aux atom indices collide or leave gaps")

    constraint_head = new_false if new_false is not None else program.false_atom
    appended = []
    seen_constraints = set()
    for frag in fragments:
        for r in frag.rules:
            if r.head == constraint_head:
                key = (r.head, tuple(sorted(r.pos)), tuple(sorted(r.neg)))
                if key in seen_constraints:
                    continue
                seen_constraints.add(key)
            appended.append(r)

    compute_minus = program.compute_minus
    if new_false is not None:
        compute_minus = compute_minus + (new_false,)
    out = GroundProgram(program.rules + tuple(appended), dict(program.symbols),
                        program.compute_plus, compute_minus,
                        program.model_count, program.max_atom + alloc.count)
    problems = validate(out)
    if problems:
        raise ValueError(f"assembled program is invalid: {problems}")
    return out
