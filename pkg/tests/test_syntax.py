import pytest

from dlplab.syntax import (FALSUM, TRUTH, And, Atom, ExtendedRule, ForkAnd,
                           ForkGrammarError, ForkImplies, ForkPair, Implies,
                           Or, Program, alphabet, fork_implies, forked,
                           forked_rule, neg, rule, rule_to_formula)


def test_rule_to_formula_disjunctive_fact():
    r = rule(head=("a", "b"))
    # the empty body is dropped rather than written as a verum antecedent
    assert rule_to_formula(r) == Or(Atom("a"), Atom("b"))


def test_rule_to_formula_constraint():
    r = rule(pos=("c",))
    assert rule_to_formula(r) == Implies(Atom("c"), FALSUM)


def test_rule_to_formula_negative_loop():
    r = rule(head=("b",), negated=("b",))
    assert rule_to_formula(r) == Implies(neg(Atom("b")), Atom("b"))


def test_rule_to_formula_empty_rule_is_falsum():
    assert rule_to_formula(rule()) == FALSUM


def test_forked_two_disjunctions():
    p = Program((rule(head=("a", "b")), rule(head=("a", "c"))))
    assert forked(p) == ForkAnd(ForkPair(Atom("a"), Atom("b")),
                                ForkPair(Atom("a"), Atom("c")))


def test_forked_fact_unchanged():
    p = Program((rule(head=("a",)),))
    assert forked(p) == Atom("a")


def test_forked_empty_program_is_truth():
    assert forked(Program(())) == TRUTH


def test_forked_negative_loop_program():
    p = Program((rule(head=("a", "b")), rule(head=("a",)),
                 rule(head=("b",), negated=("b",))))
    f = forked(p)
    assert isinstance(f, ForkAnd)
    assert f.left == ForkPair(Atom("a"), Atom("b"))
    assert f.right == And(Atom("a"), Implies(neg(Atom("b")), Atom("b")))


def test_forked_rule_with_body():
    r = rule(head=("a", "b"), pos=("p",))
    f = forked_rule(r)
    assert isinstance(f, ForkImplies)
    assert f.left == Atom("p")
    assert f.right == ForkPair(Atom("a"), Atom("b"))


def test_forked_matches_formula_on_normal_rules():
    for r in (rule(head=("a",), pos=("b",), negated=("c",)),
              rule(pos=("a",)),
              rule(head=("x",), negneg=("y",))):
        assert forked_rule(r) == rule_to_formula(r)


def test_alphabet():
    p = Program((rule(head=("a", "b")), rule(head=("a", "c"))))
    assert alphabet(p) == {"a", "b", "c"}
    assert alphabet(FALSUM) == frozenset()
    assert alphabet(rule(head=("x",), negated=("y",))) == {"x", "y"}


def test_head_duplicates_collapse_keeping_first_occurrence():
    r = ExtendedRule(("b", "a", "b", "a"))
    assert r.head == ("b", "a")


def test_rule_category_flags():
    assert rule(pos=("a",)).is_constraint
    assert rule(head=("a",)).is_normal
    assert rule(head=("a",)).is_fact
    assert not rule(head=("a",), pos=("b",)).is_fact
    assert not rule(head=("a", "b")).is_normal


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        Program((rule(head=("a",), label="l"), rule(head=("b",), label="l")))


def test_auto_labelling_preserves_existing_and_avoids_clashes():
    p = Program((rule(head=("a",), label="r2"), rule(head=("b",))))
    q = p.labelled()
    assert q.rules[0].label == "r2"
    assert q.rules[1].label == "r2_"
    assert Program((rule(head=("a",)),)).labelled().rules[0].label == "r1"


def test_fork_not_allowed_in_disjunction_or_antecedent():
    pair = ForkPair(Atom("a"), Atom("b"))
    with pytest.raises(ForkGrammarError):
        Or(pair, Atom("c"))
    with pytest.raises(ForkGrammarError):
        fork_implies(pair, Atom("c"))


def test_truth_is_expanded_double_negation_of_falsum():
    assert TRUTH == Implies(FALSUM, FALSUM)
