import random
from itertools import combinations

import pytest

from dlplab.forks import (BaseMismatchError, Support, View, closure,
                          complement, denotation, fork_stable_models, ideal,
                          is_vocab_feasible, pf_translate, preceq,
                          project_models, projected_denotation,
                          restrict_support, strongly_entails,
                          support_of_formula)
from dlplab.gen import GenConfig, gen_fork, gen_formula, gen_program
from dlplab.ht import CapacityError, ht_sat, stable_models, subsets
from dlplab.parser import parse_fork, parse_formula, parse_program
from dlplab.syntax import (FALSUM, And, Atom, ForkAnd, ForkImplies,
                           ForkPair, Formula, Implies, Or, fork_and,
                           forked)


def sup(base, *member_sets):
    return Support.of(base, [set(m) for m in member_sets])


# ---------------------------------------------------------------------------
# Supports
# ---------------------------------------------------------------------------

def test_support_of_formula_examples():
    assert support_of_formula(parse_formula("a v b"), {"a", "b"}) \
        == sup("ab", "ab", "a", "b")
    assert support_of_formula(Atom("b"), {"a"}) == Support.empty({"a"})
    assert support_of_formula(Atom("a"), {"a", "b"}) == sup("ab", "ab", "a")


def test_support_of_formula_agrees_with_pointwise_satisfaction():
    rng = random.Random(3)
    for _ in range(300):
        phi = gen_formula(rng, ("a", "b", "c"), 3)
        for t in subsets(("a", "b", "c")):
            s = support_of_formula(phi, t)
            expected = {h for h in subsets(t) if ht_sat(h, t, phi)}
            assert {s.decode(m) for m in s.members} == expected


def test_support_invariant_nonempty_contains_base():
    with pytest.raises(ValueError):
        Support.of({"a", "b"}, [{"a"}])


def test_preceq_examples():
    base = "ab"
    empty = Support.empty(base)
    assert preceq(empty, sup(base, "ab", "a"))
    assert preceq(sup(base, "ab", "a", ""), sup(base, "ab", "a"))
    assert not preceq(sup(base, "ab"), empty)
    with pytest.raises(BaseMismatchError):
        preceq(Support.empty("a"), Support.empty("ab"))


def test_complement_examples():
    assert complement(Support.all_subsets({"a"})) == Support.empty({"a"})
    assert complement(sup("ab", "ab", "a")) == sup("ab", "ab", "b", "")
    assert complement(Support.empty({"a"})) == Support.all_subsets({"a"})


def test_complement_involution_on_all_small_supports():
    # holds except on the singleton [T], whose complement is everything
    base = ("a", "b")
    universe = list(subsets(base))
    for k in range(len(universe) + 1):
        for chosen in combinations(universe, k):
            members = set(chosen)
            if members and frozenset(base) not in members:
                continue
            h = Support.of(base, members)
            twice = complement(complement(h))
            if h == Support.top(base):
                assert twice == Support.empty(base)
            else:
                assert twice == h


def test_ideal_and_closure_examples():
    assert ideal(Support.empty({"a"})).is_empty
    v = ideal(sup("a", "a"))
    assert [str(s) for s in v.supports()] == ["[{a}]", "[{a} ∅]"]
    assert closure([sup("a", "a"), Support.empty({"a"})]) == ideal(sup("a", "a"))


def test_closure_idempotent():
    rng = random.Random(11)
    for _ in range(100):
        f = gen_fork(rng, ("a", "b"), 3)
        for t in subsets(("a", "b")):
            v = denotation(f, t)
            again = View.closed(v.base, v.gens)
            assert again == v


# ---------------------------------------------------------------------------
# Denotation
# ---------------------------------------------------------------------------

def test_denotation_falsum_is_empty_view():
    assert denotation(FALSUM, {"a", "b"}).is_empty


def test_denotation_example_program_fork():
    f = parse_fork("(a ; b) & (a ; c)")
    v = denotation(f, {"a", "b"})
    assert v.contains(Support.top({"a", "b"}))


def test_denotation_split_drops_missing_branch():
    v = denotation(parse_fork("a ; b"), {"a"})
    assert v == ideal(sup("a", "a"))


def test_view_membership_and_inclusion():
    v = ideal(sup("ab", "ab", "a"))
    assert v.contains(sup("ab", "ab", "a"))
    assert v.contains(sup("ab", "ab", "a", "b"))
    assert not v.contains(sup("ab", "ab"))
    assert not v.contains(Support.empty("ab"))
    # the singleton [T] generates the largest view of all
    w = ideal(sup("ab", "ab"))
    assert v.includes(w) is False
    assert w.includes(v)


def test_explicit_enumeration_guard():
    base = {"a", "b", "c", "d", "e"}
    v = ideal(Support.top(base))
    with pytest.raises(CapacityError):
        v.supports()


# --- independent oracle: Def. 1 with explicit sets ------------------------

def naive_den(phi, t):
    return frozenset(h for h in subsets(t) if ht_sat(h, t, phi))


def all_supports(t):
    universe = list(subsets(t))
    out = []
    for k in range(len(universe) + 1):
        for chosen in combinations(universe, k):
            members = frozenset(chosen)
            if members and frozenset(t) not in members:
                continue
            out.append(members)
    return out


def naive_ideal(h, t):
    if not h:
        return set()
    return {h2 for h2 in all_supports(t) if h2 and h <= h2}


def naive_closure(supports, t):
    out = set()
    for h in supports:
        out |= naive_ideal(h, t)
    return out


def naive_denotation(f, t):
    t = frozenset(t)
    if isinstance(f, Formula) and f == FALSUM:
        return set()
    if isinstance(f, Atom):
        return naive_ideal(naive_den(f, t), t)
    if isinstance(f, (And, ForkAnd)):
        lv, rv = naive_denotation(f.left, t), naive_denotation(f.right, t)
        return naive_closure({a & b for a in lv for b in rv}, t)
    if isinstance(f, Or):
        lv = naive_denotation(f.left, t) or {frozenset()}
        rv = naive_denotation(f.right, t) or {frozenset()}
        return naive_closure({a | b for a in lv for b in rv}, t)
    if isinstance(f, (Implies, ForkImplies)):
        s = naive_den(f.left, t)
        if not s:
            return {frozenset(subsets(t))}
        comp = frozenset(subsets(t)) - s | {t}
        return naive_closure({comp | h for h in naive_denotation(f.right, t)}, t)
    if isinstance(f, ForkPair):
        return naive_denotation(f.left, t) | naive_denotation(f.right, t)
    raise TypeError(f)


def view_members(v):
    return {frozenset(s.decode(m) for m in s.members) for s in v.supports()}


def test_denotation_matches_naive_oracle():
    rng = random.Random(23)
    for _ in range(150):
        f = gen_fork(rng, ("a", "b"), 3)
        for t in subsets(("a", "b")):
            assert view_members(denotation(f, t)) == naive_denotation(f, t), f


def test_formula_denotation_is_ideal_of_support():
    rng = random.Random(29)
    for _ in range(300):
        phi = gen_formula(rng, ("a", "b", "c"), 3)
        for t in subsets(("a", "b", "c")):
            assert denotation(phi, t) == ideal(support_of_formula(phi, t))


# ---------------------------------------------------------------------------
# Fork stable models and entailment
# ---------------------------------------------------------------------------

def test_fork_stable_models_examples():
    p1 = parse_program("a | b. a | c.")
    assert fork_stable_models(forked(p1)) \
        == [frozenset("a"), frozenset("ab"), frozenset("ac"), frozenset("bc")]
    p5 = parse_program("a | b. a. b :- not b.")
    assert fork_stable_models(forked(p5)) == [frozenset("ab")]


def test_fork_stable_models_extend_stable_models_on_formulas():
    rng = random.Random(31)
    for _ in range(150):
        phi = gen_formula(rng, ("a", "b", "c"), 3)
        assert fork_stable_models(phi, ("a", "b", "c")) \
            == stable_models(phi, ("a", "b", "c"))


def test_strong_entailment_examples():
    vee = parse_formula("a v b")
    split = parse_fork("a ; b")
    assert strongly_entails(vee, split)
    res = strongly_entails(split, vee)
    assert not res
    assert res.witness_t == frozenset("ab")
    assert split == parse_fork("a ; b")
    assert strongly_entails(split, split)


def test_entailment_implies_stable_model_inclusion():
    rng = random.Random(37)
    pool = ("a", "b", "c")
    for _ in range(100):
        f = gen_fork(rng, pool, 2)
        g = gen_fork(rng, pool, 2)
        if strongly_entails(f, g, pool):
            ctx = gen_fork(rng, pool, 2)
            lhs = set(fork_stable_models(fork_and(f, ctx), pool))
            rhs = set(fork_stable_models(fork_and(g, ctx), pool))
            assert lhs <= rhs


# ---------------------------------------------------------------------------
# Head splitting
# ---------------------------------------------------------------------------

def test_pf_translation_of_two_disjunctions():
    p1 = parse_program("a | b. a | c.")
    q = pf_translate(p1)
    assert [r.head for r in q.rules] == [
        ("__f1_1", "__f1_2"), ("a",), ("b",),
        ("__f2_1", "__f2_2"), ("a",), ("c",)]
    assert q.rules[1].bpos == {"__f1_1"}


def test_pf_translation_keeps_normal_rules():
    p = parse_program("a :- b, not c. :- d.")
    assert pf_translate(p) == p


def test_pf_translation_three_way_head():
    p = parse_program("a | b | c :- d.")
    q = pf_translate(p)
    assert len(q.rules) == 4
    assert q.rules[0].head == ("__f1_1", "__f1_2", "__f1_3")
    assert q.rules[0].bpos == {"d"}


def test_pf_projection_matches_fork_stable_models():
    for seed in range(50):
        p = gen_program(GenConfig(seed=seed, atoms=3, rules=3, max_head=2))
        al = p.atoms()
        q = pf_translate(p)
        lhs = project_models(stable_models(q, q.atoms() | al), al)
        assert lhs == fork_stable_models(forked(p), al)


# ---------------------------------------------------------------------------
# Vocabulary projection
# ---------------------------------------------------------------------------

def test_restrict_support_example():
    h = sup("ax", "ax", "a")
    assert restrict_support(h, {"a"}) == sup("a", "a")


def test_vocab_feasibility_example():
    h = sup("ax", "ax", "a")
    assert not is_vocab_feasible(h, {"a"})
    assert is_vocab_feasible(sup("ax", "ax"), {"a"})
    assert is_vocab_feasible(Support.empty("ax"), {"a"})


def test_projected_denotation_agrees_on_identity_projection():
    rng = random.Random(41)
    pool = ("a", "b")
    for _ in range(50):
        f = gen_fork(rng, pool, 2)
        for t in subsets(pool):
            assert projected_denotation(f, t, pool) == denotation(f, t)


def test_projected_denotation_through_fresh_atom():
    # splitting a head through a switch atom is invisible on the original
    # alphabet, so stability of T transfers through the projected view
    p = parse_program("a | b.")
    q = pf_translate(p)
    f = q.to_formula()
    v = projected_denotation(f, {"a"}, {"a", "b"})
    assert v.contains(Support.top({"a"}))


def test_project_models():
    ms = [frozenset({"a", "x"}), frozenset({"a"}), frozenset({"b"})]
    assert project_models(ms, {"a", "b"}) \
        == [frozenset("a"), frozenset("b")]
