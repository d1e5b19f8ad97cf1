"""Stable-model oracle: satisfaction, reduct, enumeration, soundness checks."""

import random

import pytest

from symbreak import (BasicRule, CardinalityRule, ChoiceRule, DisjunctiveRule,
                      GroundProgram, MinimizeStatement, OracleBudgetError,
                      WeightRule, answer_sets, check_soundness, objective_value,
                      reduct, satisfies)
from symbreak.symmetry import AtomPermutation
from programs import (p1, p2, p3, p4, p5, pigeonhole, random_program,
                      reference_answer_sets)


def sets(*collections):
    return [frozenset(c) for c in collections]


def test_satisfies_basic_head_missing():
    assert not satisfies({1, 2}, BasicRule(3, (1, 2)))
    assert satisfies({1, 2, 3}, BasicRule(3, (1, 2)))


def test_satisfies_constraint_with_unsatisfied_body():
    assert satisfies(set(), BasicRule(9, (1, 2)))


def test_satisfies_weight_below_bound():
    rule = WeightRule(head=7, bound=3, pos=(1,), neg=(), weights=(2,))
    assert satisfies({1}, rule)
    above = WeightRule(head=7, bound=2, pos=(1,), neg=(), weights=(2,))
    assert not satisfies({1}, above)


def test_satisfies_cardinality_counts_occurrences():
    rule = CardinalityRule(head=3, bound=2, pos=(1, 1), neg=())
    assert not satisfies({1}, rule)  # duplicate occurrences both count


def test_satisfies_choice_and_minimize_always():
    assert satisfies(set(), ChoiceRule((1,), (2,)))
    assert satisfies({2}, MinimizeStatement((2,), (), (5,)))


def test_reduct_drops_negation():
    p = GroundProgram(rules=(BasicRule(1, (), (2,)),))
    assert reduct(p, set()).rules == (BasicRule(1, (), ()),)
    assert reduct(p, {2}).rules == ()


def test_reduct_positive_program_unchanged():
    p = GroundProgram(rules=(BasicRule(1, (2,)), DisjunctiveRule((3, 4), (1,))))
    for interp in (set(), {1}, {1, 2, 3, 4}):
        assert reduct(p, interp).rules == p.rules


def test_reduct_rejects_sugared_rules():
    with pytest.raises(ValueError):
        reduct(GroundProgram(rules=(ChoiceRule((1,)),)), set())


def test_answer_sets_facts():
    assert answer_sets(p5()) == sets({1, 2})


def test_answer_sets_free_choices():
    assert answer_sets(p1()) == sets((), {1}, {1, 2}, {2})


def test_answer_sets_p2():
    assert answer_sets(p2()) == sets((), {1}, {1, 2, 3}, {2})


def test_answer_sets_p3_constraint():
    assert answer_sets(p3()) == sets((), {2}, {3})


def test_answer_sets_p4_disjunctive():
    assert answer_sets(p4()) == sets((), {1}, {1, 2}, {2})


def test_answer_sets_even_negative_loop():
    p = GroundProgram(rules=(BasicRule(1, (), (2,)), BasicRule(2, (), (1,))))
    assert answer_sets(p) == sets({1}, {2})


def test_answer_sets_odd_negative_loop():
    assert answer_sets(GroundProgram(rules=(BasicRule(1, (), (1,)),))) == []


def test_answer_sets_positive_loop_unfounded():
    p = GroundProgram(rules=(BasicRule(1, (2,)), BasicRule(2, (1,))))
    assert answer_sets(p) == sets(())


def test_answer_sets_cardinality_rule():
    # d <- 2 <= #{a, b, not c} over free choices on a, b
    p = GroundProgram(rules=(ChoiceRule((1,)), ChoiceRule((2,)),
                             CardinalityRule(4, 2, (1, 2), (3,))))
    expected = {frozenset(s) | ({4} if len(s) + 1 >= 2 else set())
                for s in [frozenset(), frozenset({1}), frozenset({2}),
                          frozenset({1, 2})]}
    assert set(answer_sets(p)) == expected


def test_answer_sets_weight_rule():
    # h <- 3 <= sum{a=2, b=2} over free a, b
    p = GroundProgram(rules=(ChoiceRule((1,)), ChoiceRule((2,)),
                             WeightRule(3, 3, (1, 2), (), (2, 2))))
    assert set(answer_sets(p)) == {frozenset(), frozenset({1}), frozenset({2}),
                                   frozenset({1, 2, 3})}


def test_answer_sets_compute_blocks_enforced():
    p = GroundProgram(rules=(ChoiceRule((1,)), ChoiceRule((2,))),
                      compute_plus=(1,), compute_minus=(2,))
    assert answer_sets(p) == sets({1})


def test_answer_sets_budget():
    big = GroundProgram(rules=tuple(ChoiceRule((a,)) for a in range(1, 25)))
    with pytest.raises(OracleBudgetError):
        answer_sets(big, budget=20)


def test_pigeonhole_sat_and_unsat():
    assert len(answer_sets(pigeonhole(2, 2))) == 2  # the two matchings
    assert answer_sets(pigeonhole(3, 2)) == []
    assert answer_sets(pigeonhole(4, 3)) == []


def test_objective_value():
    assert objective_value(p1(), {1}) == 0
    single = GroundProgram(rules=(MinimizeStatement((1,), (), (3,)),))
    assert objective_value(single, {1}) == 3
    mixed = GroundProgram(rules=(MinimizeStatement((1,), (2,), (2, 3)),))
    assert objective_value(mixed, {1}) == 5


def test_objective_value_sums_statements():
    p = GroundProgram(rules=(MinimizeStatement((1,), (), (3,)),
                             MinimizeStatement((2,), (), (4,))))
    assert objective_value(p, {1, 2}) == 7


def test_check_soundness_trivial_and_adversarial():
    swap = AtomPermutation({1: 2, 2: 1})
    assert check_soundness(p1(), [swap], p1()).ok
    killed = GroundProgram(rules=p1().rules + (BasicRule(3, (1,)),
                                               BasicRule(3, (), (1,))),
                           compute_minus=(3,), max_atom=3)
    verdict = check_soundness(p1(), [swap], killed)
    assert not verdict.ok
    assert verdict.surviving_count == 0


def test_oracle_agrees_with_reference_on_random_programs():
    rng = random.Random(4070)
    checked = 0
    for _ in range(260):
        p = random_program(rng)
        if any(isinstance(r, (CardinalityRule, WeightRule)) for r in p.rules):
            continue  # reference handles basic/choice/disjunctive forms
        assert answer_sets(p, budget=16) == reference_answer_sets(p), p
        checked += 1
    assert checked >= 60


def test_desugaring_self_consistency_on_bounded_bodies():
    # a cardinality body and its hand-expanded basic form agree
    rng = random.Random(99)
    for _ in range(40):
        atoms = [1, 2, 3, 4]
        pos = tuple(rng.sample(atoms, rng.randint(0, 3)))
        neg = tuple(a for a in rng.sample(atoms, rng.randint(0, 2))
                    if a not in pos)
        bound = rng.randint(0, 4)
        sugared = GroundProgram(
            rules=tuple(ChoiceRule((a,)) for a in atoms)
            + (CardinalityRule(5, bound, pos, neg),))
        from itertools import combinations
        lits = [(a, True) for a in pos] + [(b, False) for b in neg]
        expanded = []
        if bound == 0:
            expanded.append(BasicRule(5))
        else:
            for sub in combinations(lits, min(bound, len(lits) + 1)):
                if len(sub) == bound:
                    expanded.append(BasicRule(5,
                                              tuple(a for a, s in sub if s),
                                              tuple(a for a, s in sub if not s)))
        plain = GroundProgram(rules=tuple(ChoiceRule((a,)) for a in atoms)
                              + tuple(expanded), max_atom=5)
        assert answer_sets(sugared) == answer_sets(plain)
