"""The full preprocessing pipeline: detect, post-process, break, assemble.

Every automorphism coming out of the graph search is converted to an atom
permutation and re-validated as a syntactic symmetry before anything is
built from it; permutations failing the gate are dropped and counted, so
a detection bug can only weaken the breaking, never corrupt it.
"""

import time
from dataclasses import dataclass

from .automorphism import GeneratorSearch, find_generators
from .breaking import (BreakingProgram, Fragment, FreshAtoms, assemble,
                       binary_rules, break_rows, lex_leader_rules)
from .encoding import ColoredGraph, encode_program
from .smodels import GroundProgram, validate
from .symmetry import (AtomOrder, AtomPermutation, RowMatrix, choose_order,
                       detect_rows, is_syntactic_symmetry, restrict_to_atoms,
                       stabilizer_binary_symmetries)


@dataclass
class BreakConfig:
    aux_limit: int = 50
    search_budget: int = 10 ** 6
    stabilizer_levels: int = 5
    row_detection: bool = True
    binary_clauses: bool = True
    oracle_budget: int = 20


@dataclass
class RunStats:
    generators: int = 0
    rules: int = 0
    aux: int = 0
    seconds: float = 0.0
    rows: int = 0
    binpairs: int = 0


@dataclass
class Detection:
    """Validated symmetries of one program."""

    graph: ColoredGraph
    search: GeneratorSearch
    generators: list[AtomPermutation]
    rejected: int


@dataclass
class BreakResult:
    program: GroundProgram
    stats: RunStats
    detection: Detection
    rows: list[RowMatrix]
    order: AtomOrder
    pairs: list[tuple[int, int]]
    breaking: BreakingProgram
    new_false: int = None


def detect_symmetries(program: GroundProgram, config: BreakConfig = None) -> Detection:
    config = config or BreakConfig()
    graph = encode_program(program)
    search = find_generators(graph, config.search_budget)
    generators = []
    rejected = 0
    for node_perm in search.generators:
        perm = restrict_to_atoms(graph, node_perm)
        if perm.is_identity:
            continue
        if is_syntactic_symmetry(program, perm):
            generators.append(perm)
        else:
            rejected += 1
    return Detection(graph, search, generators, rejected)


def break_program(program: GroundProgram, config: BreakConfig = None) -> BreakResult:
    config = config or BreakConfig()
    started = time.perf_counter()
    problems = validate(program)
    if problems:
        raise ValueError(f"invalid program: {problems}")

    detection = detect_symmetries(program, config)
    gens = detection.generators

    rows = detect_rows(program, gens) if config.row_detection else []
    order = choose_order(program, gens, rows)

    pairs = []
    if config.binary_clauses:
        for found in stabilizer_binary_symmetries(detection.graph, order,
                                                  config.stabilizer_levels,
                                                  config.search_budget,
                                                  initial=detection.search):
            witness = found.witness
            if witness.is_identity or not is_syntactic_symmetry(program, witness):
                continue
            if min(witness.support, key=order.key) != found.first:
                continue
            pairs.append((found.first, found.second))

    alloc = FreshAtoms(program.max_atom + 1)
    new_false = None
    will_emit = bool(gens or rows or pairs)
    if will_emit and program.false_atom is None:
        new_false = alloc.fresh()
    head = program.false_atom if new_false is None else new_false

    fragments: list[Fragment] = []
    per_symmetry_aux: list[int] = []
    consumed = set()
    for matrix in rows:
        for frag in break_rows(matrix, order, config.aux_limit, alloc, head):
            fragments.append(frag)
            per_symmetry_aux.append(len(frag.aux_atoms))
        for i, g in enumerate(gens):
            if matrix.row_map_of(g) is not None:
                consumed.add(i)
    for i, g in enumerate(gens):
        if i in consumed:
            continue
        frag = lex_leader_rules(g, order, config.aux_limit, alloc, head)
        fragments.append(frag)
        per_symmetry_aux.append(len(frag.aux_atoms))
    if pairs:
        fragments.append(binary_rules(pairs, head))

    augmented = assemble(program, fragments, alloc, new_false)
    appended = augmented.rules[len(program.rules):]
    breaking = BreakingProgram(
        new_rules=tuple(appended),
        aux_atoms=tuple(range(program.max_atom + 1, augmented.max_atom + 1)),
        per_symmetry_aux_count=tuple(per_symmetry_aux),
        new_max_atom=augmented.max_atom,
    )
    stats = RunStats(
        generators=len(gens),
        rules=len(appended),
        aux=alloc.count,
        seconds=time.perf_counter() - started,
        rows=len(rows),
        binpairs=len(pairs),
    )
    return BreakResult(augmented, stats, detection, rows, order, pairs,
                       breaking, new_false)
