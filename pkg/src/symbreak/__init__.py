"""Static symmetry breaking for ground answer set programs.

The package reads a program in the lparse-smodels intermediate format,
detects its syntactic symmetries through a colored-graph automorphism
search, and appends sound breaking constraints; an exact stable-model
oracle verifies every step at desk scale.
"""

from .automorphism import (GeneratorSearch, OrderedPartition,
                           brute_force_automorphisms, color_refine,
                           find_generators, fix_nodes, orbit)
from .breaking import (BreakingProgram, Fragment, FreshAtoms, assemble,
                       binary_rules, break_rows, lex_leader_rules)
from .encoding import ColoredGraph, color_census, encode_program
from .oracle import (OracleBudgetError, SoundnessVerdict, answer_sets,
                     check_soundness, objective_value, reduct, satisfies)
from .pipeline import (BreakConfig, BreakResult, Detection, RunStats,
                       break_program, detect_symmetries)
from .smodels import (BasicRule, CardinalityRule, ChoiceRule, DisjunctiveRule,
                      GroundProgram, MinimizeStatement, ParseError, Rule,
                      WeightRule, parse_program, semantic_view, validate,
                      write_program)
from .symmetry import (AtomOrder, AtomPermutation, RowMatrix, choose_order,
                       detect_rows, is_syntactic_symmetry, restrict_to_atoms,
                       stabilizer_binary_symmetries)

__all__ = [
    "AtomOrder", "AtomPermutation", "BasicRule", "BreakConfig", "BreakResult",
    "BreakingProgram", "CardinalityRule", "ChoiceRule", "ColoredGraph",
    "Detection", "DisjunctiveRule", "Fragment", "FreshAtoms",
    "GeneratorSearch", "GroundProgram", "MinimizeStatement",
    "OracleBudgetError", "OrderedPartition", "ParseError", "RowMatrix",
    "Rule", "RunStats", "SoundnessVerdict", "WeightRule", "answer_sets",
    "assemble", "binary_rules", "break_program", "break_rows",
    "brute_force_automorphisms", "check_soundness", "choose_order",
    "color_census", "color_refine", "detect_rows", "detect_symmetries",
    "encode_program", "find_generators", "fix_nodes", "is_syntactic_symmetry",
    "lex_leader_rules", "objective_value", "orbit", "parse_program", "reduct",
    "restrict_to_atoms", "satisfies", "semantic_view",
    "stabilizer_binary_symmetries", "validate", "write_program",
]
