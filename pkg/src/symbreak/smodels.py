"""Reader, writer, and validator for the lparse-smodels intermediate format.

A ground program arrives as whitespace-separated decimal integers, one rule
per line: a rules section (types 1, 2, 3, 5, 6 plus gringo's disjunctive
type 8) terminated by ``0``, a symbol table terminated by ``0``, the ``B+``
and ``B-`` compute blocks, and a final model count.

The wire format has no headless rule, so grounders emit integrity
constraints as basic rules whose head is a reserved atom that can never be
derived (conventionally atom 1, unnamed, placed in ``B-``).
``GroundProgram.false_atom`` recovers that convention and
``semantic_view`` folds the compute blocks into equivalent constraints for
everything downstream of parsing.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Union


class ParseError(ValueError):
    """Malformed smodels input, tagged with the 1-based source line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class BasicRule:
    """Wire type 1: ``head <- pos, not neg``."""

    head: int
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def atoms(self) -> Iterator[int]:
        yield self.head
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("basic", self.head, tuple(sorted(self.pos)), tuple(sorted(self.neg)))


@dataclass(frozen=True)
class CardinalityRule:
    """Wire type 2: ``head <- bound <= #{pos, not neg}`` (lower bound only)."""

    head: int
    bound: int
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def atoms(self) -> Iterator[int]:
        yield self.head
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("card", self.head, self.bound,
                tuple(sorted(self.pos)), tuple(sorted(self.neg)))


@dataclass(frozen=True)
class ChoiceRule:
    """Wire type 3: ``{heads} <- pos, not neg``."""

    heads: tuple[int, ...]
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def atoms(self) -> Iterator[int]:
        yield from self.heads
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("choice", tuple(sorted(self.heads)),
                tuple(sorted(self.pos)), tuple(sorted(self.neg)))


@dataclass(frozen=True)
class WeightRule:
    """Wire type 5: ``head <- bound <= sum{..=w..}``, weights neg-then-pos."""

    head: int
    bound: int
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()
    weights: tuple[int, ...] = ()

    @property
    def neg_weights(self) -> tuple[int, ...]:
        return self.weights[:len(self.neg)]

    @property
    def pos_weights(self) -> tuple[int, ...]:
        return self.weights[len(self.neg):]

    def pairs(self) -> list[tuple[int, bool, int]]:
        """Weighted literals as (atom, is_positive, weight), wire order."""
        out = [(b, False, w) for b, w in zip(self.neg, self.neg_weights)]
        out += [(a, True, w) for a, w in zip(self.pos, self.pos_weights)]
        return out

    def atoms(self) -> Iterator[int]:
        yield self.head
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("weight", self.head, self.bound, tuple(sorted(self.pairs())))


@dataclass(frozen=True)
class MinimizeStatement:
    """Wire type 6: weighted literal sum to minimize, weights neg-then-pos."""

    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()
    weights: tuple[int, ...] = ()

    @property
    def neg_weights(self) -> tuple[int, ...]:
        return self.weights[:len(self.neg)]

    @property
    def pos_weights(self) -> tuple[int, ...]:
        return self.weights[len(self.neg):]

    def pairs(self) -> list[tuple[int, bool, int]]:
        out = [(b, False, w) for b, w in zip(self.neg, self.neg_weights)]
        out += [(a, True, w) for a, w in zip(self.pos, self.pos_weights)]
        return out

    def atoms(self) -> Iterator[int]:
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("minimize", tuple(sorted(self.pairs())))


@dataclass(frozen=True)
class DisjunctiveRule:
    """Wire type 8: ``h1 | ... | hk <- pos, not neg``."""

    heads: tuple[int, ...]
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def atoms(self) -> Iterator[int]:
        yield from self.heads
        yield from self.pos
        yield from self.neg

    def key(self):
        return ("disj", tuple(sorted(self.heads)),
                tuple(sorted(self.pos)), tuple(sorted(self.neg)))


Rule = Union[BasicRule, CardinalityRule, ChoiceRule, WeightRule,
             MinimizeStatement, DisjunctiveRule]


@dataclass(frozen=True)
class GroundProgram:
    """A parsed smodels document.

    ``symbols`` maps visible atoms to their names in file order; atoms
    without an entry are hidden.  ``max_atom`` is the largest atom index
    in use and is computed from the contents when omitted.
    """

    rules: tuple[Rule, ...] = ()
    symbols: dict[int, str] = field(default_factory=dict)
    compute_plus: tuple[int, ...] = ()
    compute_minus: tuple[int, ...] = ()
    model_count: int = 1
    max_atom: int = None

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "compute_plus", tuple(self.compute_plus))
        object.__setattr__(self, "compute_minus", tuple(self.compute_minus))
        if self.max_atom is None:
            seen = 0
            for r in self.rules:
                for a in r.atoms():
                    if a > seen:
                        seen = a
            for a in self.symbols:
                seen = max(seen, a)
            for a in self.compute_plus + self.compute_minus:
                seen = max(seen, a)
            object.__setattr__(self, "max_atom", seen)

    @cached_property
    def false_atom(self):
        """The reserved constraint-head atom, or None.

        An atom named ``_false`` wins; otherwise atom 1 qualifies when it
        is unnamed and referenced only in single-head positions (where it
        can never be derived, making the rule a constraint) or in the B-
        block, which is how grounders reserve it.
        """
        for a, name in self.symbols.items():
            if name == "_false":
                return a
        if self.max_atom < 1 or 1 in self.symbols or 1 in self.compute_plus:
            return None
        for r in self.rules:
            if 1 in r.pos or 1 in r.neg:
                return None
            if isinstance(r, (ChoiceRule, DisjunctiveRule)) and 1 in r.heads:
                return None
        return 1

    def name_of(self, atom: int) -> str:
        """Display name for an atom; hidden atoms print as ``_<index>``."""
        return self.symbols.get(atom, f"_{atom}")


@dataclass(frozen=True)
class SemanticProgram:
    """A program with compute blocks folded into constraints.

    ``false_atom`` is the constraint head, synthesized one past the
    original ``max_atom`` when the compute blocks need one and the input
    reserved none.  All downstream semantics (graph encoding, syntactic
    symmetry checks, the oracle) work on this view; the wire-level
    program keeps its compute blocks verbatim.
    """

    rules: tuple[Rule, ...]
    max_atom: int
    false_atom: int  # or None when the program has no constraints at all

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.max_atom + 1)
                     if a != self.false_atom)


def semantic_view(program: GroundProgram) -> SemanticProgram:
    false = program.false_atom
    max_atom = program.max_atom
    plus = list(program.compute_plus)
    minus = [a for a in program.compute_minus if a != false]
    if (plus or minus) and false is None:
        max_atom += 1
        false = max_atom
    extra = [BasicRule(false, (), (a,)) for a in plus]
    extra += [BasicRule(false, (a,), ()) for a in minus]
    return SemanticProgram(program.rules + tuple(extra), max_atom, false)


def _int(tok: str, line_no: int) -> int:
    if not tok.isdigit():
        raise ParseError(line_no, f"malformed integer {tok!r}")
    return int(tok)


def _atom(v: int, line_no: int) -> int:
    if v < 1:
        raise ParseError(line_no, f"atom index {v} must be >= 1")
    return v


class _Cursor:
    """Token cursor over one rule line with truncation checks."""

    def __init__(self, values: list[int], line_no: int):
        self.values = values
        self.i = 0
        self.line_no = line_no

    def take(self) -> int:
        if self.i >= len(self.values):
            raise ParseError(self.line_no, "truncated rule")
        v = self.values[self.i]
        self.i += 1
        return v

    def take_atoms(self, n: int) -> tuple[int, ...]:
        return tuple(_atom(self.take(), self.line_no) for _ in range(n))

    def remaining(self) -> int:
        return len(self.values) - self.i

    def finish(self):
        if self.i != len(self.values):
            raise ParseError(self.line_no, "unexpected trailing tokens on rule line")


def _parse_rule(values: list[int], line_no: int) -> Rule:
    cur = _Cursor(values, line_no)
    kind = cur.take()
    if kind == 1:
        head = _atom(cur.take(), line_no)
        nlit, nneg = cur.take(), cur.take()
        if nneg > nlit:
            raise ParseError(line_no, f"negative count {nneg} exceeds literal count {nlit}")
        neg = cur.take_atoms(nneg)
        pos = cur.take_atoms(nlit - nneg)
        cur.finish()
        return BasicRule(head, pos, neg)
    if kind == 2:
        head = _atom(cur.take(), line_no)
        nlit, nneg, bound = cur.take(), cur.take(), cur.take()
        if nneg > nlit:
            raise ParseError(line_no, f"negative count {nneg} exceeds literal count {nlit}")
        neg = cur.take_atoms(nneg)
        pos = cur.take_atoms(nlit - nneg)
        cur.finish()
        return CardinalityRule(head, bound, pos, neg)
    if kind in (3, 8):
        nheads = cur.take()
        heads = cur.take_atoms(nheads)
        nlit, nneg = cur.take(), cur.take()
        if nneg > nlit:
            raise ParseError(line_no, f"negative count {nneg} exceeds literal count {nlit}")
        neg = cur.take_atoms(nneg)
        pos = cur.take_atoms(nlit - nneg)
        cur.finish()
        if kind == 3:
            return ChoiceRule(heads, pos, neg)
        return DisjunctiveRule(heads, pos, neg)
    if kind == 5:
        head = _atom(cur.take(), line_no)
        bound = cur.take()
        nlit, nneg = cur.take(), cur.take()
        if nneg > nlit:
            raise ParseError(line_no, f"negative count {nneg} exceeds literal count {nlit}")
        neg = cur.take_atoms(nneg)
        pos = cur.take_atoms(nlit - nneg)
        if cur.remaining() != nlit:
            raise ParseError(line_no,
                             f"weight count mismatch: {nlit} literals, {cur.remaining()} weights")
        weights = tuple(cur.take() for _ in range(nlit))
        cur.finish()
        return WeightRule(head, bound, pos, neg, weights)
    if kind == 6:
        zero = cur.take()
        if zero != 0:
            raise ParseError(line_no, f"minimize statement must carry a 0 head slot, got {zero}")
        nlit, nneg = cur.take(), cur.take()
        if nneg > nlit:
            raise ParseError(line_no, f"negative count {nneg} exceeds literal count {nlit}")
        neg = cur.take_atoms(nneg)
        pos = cur.take_atoms(nlit - nneg)
        if cur.remaining() != nlit:
            raise ParseError(line_no,
                             f"weight count mismatch: {nlit} literals, {cur.remaining()} weights")
        weights = tuple(cur.take() for _ in range(nlit))
        cur.finish()
        return MinimizeStatement(pos, neg, weights)
    raise ParseError(line_no, f"unknown rule type {kind}")


def parse_program(text) -> GroundProgram:
    """Parse an smodels document from a string or byte stream."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode()
    lines = text.splitlines()
    pos = 0

    def next_line(what: str) -> tuple[str, int]:
        nonlocal pos
        while pos < len(lines):
            line = lines[pos]
            pos += 1
            if line.strip():
                return line.strip(), pos
        raise ParseError(len(lines) + 1, f"unexpected end of input, expected {what}")

    rules = []
    while True:
        line, line_no = next_line("a rule or the rules terminator 0")
        toks = line.split()
        values = [_int(t, line_no) for t in toks]
        if values == [0]:
            break
        rules.append(_parse_rule(values, line_no))

    symbols: dict[int, str] = {}
    names_seen = set()
    while True:
        line, line_no = next_line("a symbol or the symbol terminator 0")
        if line == "0":
            break
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise ParseError(line_no, "symbol line must be '<atom> <name>'")
        atom = _atom(_int(parts[0], line_no), line_no)
        name = parts[1].strip()
        if name in names_seen:
            raise ParseError(line_no, f"duplicate symbol name {name!r}")
        if atom in symbols:
            raise ParseError(line_no, f"atom {atom} already has a name")
        names_seen.add(name)
        symbols[atom] = name

    def compute_block(header: str) -> tuple[int, ...]:
        line, line_no = next_line(f"the {header} header")
        if line != header:
            raise ParseError(line_no, f"expected {header} section header, got {line!r}")
        atoms = []
        while True:
            line, line_no = next_line(f"an atom or the {header} terminator 0")
            if line == "0":
                return tuple(atoms)
            toks = line.split()
            if len(toks) != 1:
                raise ParseError(line_no, f"{header} lines carry one atom each")
            atoms.append(_atom(_int(toks[0], line_no), line_no))

    plus = compute_block("B+")
    minus = compute_block("B-")

    line, line_no = next_line("the model count")
    toks = line.split()
    if len(toks) != 1:
        raise ParseError(line_no, "model count line carries one integer")
    models = _int(toks[0], line_no)

    while pos < len(lines):
        if lines[pos].strip():
            raise ParseError(pos + 1, "unexpected content after the model count")
        pos += 1

    return GroundProgram(tuple(rules), symbols, plus, minus, models)


def _wire_line(rule: Rule) -> str:
    if isinstance(rule, BasicRule):
        parts = [1, rule.head, len(rule.pos) + len(rule.neg), len(rule.neg),
                 *rule.neg, *rule.pos]
    elif isinstance(rule, CardinalityRule):
        parts = [2, rule.head, len(rule.pos) + len(rule.neg), len(rule.neg),
                 rule.bound, *rule.neg, *rule.pos]
    elif isinstance(rule, ChoiceRule):
        parts = [3, len(rule.heads), *rule.heads,
                 len(rule.pos) + len(rule.neg), len(rule.neg), *rule.neg, *rule.pos]
    elif isinstance(rule, WeightRule):
        parts = [5, rule.head, rule.bound, len(rule.pos) + len(rule.neg),
                 len(rule.neg), *rule.neg, *rule.pos, *rule.weights]
    elif isinstance(rule, MinimizeStatement):
        parts = [6, 0, len(rule.pos) + len(rule.neg), len(rule.neg),
                 *rule.neg, *rule.pos, *rule.weights]
    elif isinstance(rule, DisjunctiveRule):
        parts = [8, len(rule.heads), *rule.heads,
                 len(rule.pos) + len(rule.neg), len(rule.neg), *rule.neg, *rule.pos]
    else:
        raise TypeError(f"not a rule: {rule!r}")
    return " ".join(str(p) for p in parts)


def write_program(program: GroundProgram) -> str:
    """Serialize to canonical smodels text (single spaces, one final newline)."""
    out = [_wire_line(r) for r in program.rules]
    out.append("0")
    out.extend(f"{atom} {name}" for atom, name in program.symbols.items())
    out.append("0")
    out.append("B+")
    out.extend(str(a) for a in program.compute_plus)
    out.append("0")
    out.append("B-")
    out.extend(str(a) for a in program.compute_minus)
    out.append("0")
    out.append(str(program.model_count))
    return "\n".join(out) + "\n"


def validate(program: GroundProgram) -> list[str]:
    """Check every structural invariant; one diagnostic string per violation."""
    out = []

    def atom_ok(a, where):
        if a < 1:
            out.append(f"{where}: atom index {a} must be >= 1")
        elif a > program.max_atom:
            out.append(f"{where}: atom index {a} exceeds max atom {program.max_atom}")

    for i, r in enumerate(program.rules, 1):
        where = f"rule {i}"
        for a in r.atoms():
            atom_ok(a, where)
        if isinstance(r, (CardinalityRule, WeightRule)) and r.bound < 0:
            out.append(f"{where}: bound {r.bound} must be >= 0")
        if isinstance(r, (WeightRule, MinimizeStatement)):
            nlit = len(r.pos) + len(r.neg)
            if len(r.weights) != nlit:
                out.append(f"{where}: {nlit} literals but {len(r.weights)} weights")
            for w in r.weights:
                if w < 0:
                    out.append(f"{where}: weight {w} must be >= 0")
        if isinstance(r, (ChoiceRule, DisjunctiveRule)) and not r.heads:
            out.append(f"{where}: head list must not be empty")

    names = Counter(program.symbols.values())
    for name, count in names.items():
        if count > 1:
            out.append(f"symbol table: name {name!r} used {count} times")
    for a in program.symbols:
        atom_ok(a, "symbol table")
    for a in program.compute_plus:
        atom_ok(a, "B+ block")
    for a in program.compute_minus:
        atom_ok(a, "B- block")
    if program.model_count < 0:
        out.append(f"model count {program.model_count} must be >= 0")
    return out
