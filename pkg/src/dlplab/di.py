"""Head selection functions, reducts and candidate stable models.

A selection picks, for each rule whose body holds in the interpretation,
one true head atom (or falsum if the head has none).  The induced reduct is
an extended normal program; an interpretation is a candidate stable model
when it is stable for the reduct of some selection.  Closed selections must
pick the same atom for rules sharing the same head set; the DI-stable
models are the subset-minimal closed candidates.

Also here: the immediate-consequences step and the fixpoint reading of
graph-based supported models, and the two size-preserving reductions that
remove double negation and make head sets pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from . import ht
from .syntax import ExtendedRule, Program, rule

T1_PREFIX = "__t1_"
T2_PREFIX = "__t2_"


class SelectionError(ValueError):
    """A head selection that violates its defining conditions."""


class NonNormalProgramError(ValueError):
    """An operation restricted to extended normal programs got a disjunction."""


@dataclass(frozen=True, slots=True)
class HeadSelection:
    """Choice of one true head atom (or none) per triggered rule index."""

    choices: tuple[tuple[int, str | None], ...]
    closed: bool = False

    @property
    def mapping(self) -> dict[int, str | None]:
        return dict(self.choices)

    def __str__(self) -> str:
        parts = [f"rule#{i + 1} -> {a if a is not None else 'bot'}"
                 for i, a in self.choices]
        return "{" + ", ".join(parts) + "}"


def _triggered(p: Program, i: frozenset[str]) -> list[int]:
    return [k for k, r in enumerate(p.rules)
            if ht.classical_sat(i, r.body_formula())]


def selections(p: Program, model: Iterable[str],
               closed: bool = False) -> Iterator[HeadSelection]:
    """All head selections for the model, over triggered rules only.

    Untriggered rules never reach the reduct, so their choices are not
    enumerated.  In closed mode the triggered rules are grouped by head set
    and every group member receives the same choice.
    """
    i = frozenset(model)
    trig = _triggered(p, i)
    if not closed:
        options = []
        for k in trig:
            hits = sorted(p.rules[k].head_set & i)
            options.append([(k, a) for a in hits] if hits else [(k, None)])
        for combo in product(*options):
            yield HeadSelection(tuple(combo), closed=False)
        return

    groups: dict[frozenset[str], list[int]] = {}
    for k in trig:
        groups.setdefault(p.rules[k].head_set, []).append(k)
    keys = sorted(groups, key=lambda s: tuple(sorted(s)))
    options = []
    for key in keys:
        hits = sorted(key & i)
        options.append(list(hits) if hits else [None])
    for combo in product(*options):
        pairs = []
        for key, atom in zip(keys, combo):
            pairs.extend((k, atom) for k in groups[key])
        yield HeadSelection(tuple(sorted(pairs)), closed=True)


def reduct(p: Program, model: Iterable[str], sel: HeadSelection) -> Program:
    """The extended normal program picked out by the selection.

    Keeps one copy of syntactically identical rules; a falsum choice turns
    into a constraint (it cannot occur when the model satisfies the program).
    """
    i = frozenset(model)
    trig = _triggered(p, i)
    chosen = sel.mapping
    if set(chosen) != set(trig):
        raise SelectionError(
            f"selection covers rules {sorted(set(chosen))} but the triggered "
            f"rules are {sorted(trig)}")
    out: list[ExtendedRule] = []
    seen = set()
    for k in trig:
        r = p.rules[k]
        atom = chosen[k]
        hits = r.head_set & i
        if atom is None:
            if hits:
                raise SelectionError(
                    f"rule #{k + 1} has true head atoms, cannot select falsum")
            head: tuple[str, ...] = ()
        else:
            if atom not in hits:
                raise SelectionError(
                    f"{atom!r} is not a true head atom of rule #{k + 1}")
            head = (atom,)
        nr = ExtendedRule(head, r.bpos, r.bneg, r.bnegneg)
        if nr not in seen:
            seen.add(nr)
            out.append(nr)
    return Program(tuple(out))


def candidate_stable_models(p: Program, atoms: Iterable[str] | None = None,
                            closed: bool = False
                            ) -> list[tuple[frozenset[str], HeadSelection]]:
    """Classical models stable under the reduct of some selection, paired
    with the first witnessing selection found."""
    out = []
    for i in ht.classical_models(p, atoms):
        for sel in selections(p, i, closed=closed):
            if ht.is_stable_model(reduct(p, i, sel), i):
                out.append((i, sel))
                break
    return out


def csm_models(p: Program, atoms: Iterable[str] | None = None,
               closed: bool = False) -> list[frozenset[str]]:
    return ht.sort_models(m for m, _ in candidate_stable_models(p, atoms, closed))


def di_stable_models(p: Program,
                     atoms: Iterable[str] | None = None) -> list[frozenset[str]]:
    """Subset-minimal closed candidate stable models."""
    from .ssm import minimal_elements
    return minimal_elements(csm_models(p, atoms, closed=True))


# ---------------------------------------------------------------------------
# Fixpoint reading of supported models
# ---------------------------------------------------------------------------

def immediate_consequences(p: Program, model: Iterable[str]) -> frozenset[str]:
    """Heads of the single-headed rules whose body holds in the model."""
    if any(len(r.head) > 1 for r in p.rules):
        raise NonNormalProgramError(
            "the immediate-consequences step needs an extended normal program")
    i = frozenset(model)
    return frozenset(r.head[0] for r in p.rules
                     if r.head and ht.classical_sat(i, r.body_formula()))


def supported_models_fixpoint(p: Program,
                              atoms: Iterable[str] | None = None) -> list[frozenset[str]]:
    """Models fixed by the immediate consequences of some selection reduct."""
    out = []
    for i in ht.classical_models(p, atoms):
        for sel in selections(p, i):
            if immediate_consequences(reduct(p, i, sel), i) == i:
                out.append(i)
                break
    return ht.sort_models(out)


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def eliminate_double_negation(p: Program) -> Program:
    """Replace each doubly negated body atom q by a negated fresh atom,
    defined by the companion rule __t1_q :- not q."""
    doubled = sorted({q for r in p.rules for q in r.bnegneg})
    if not doubled:
        return p
    aux = {q: f"{T1_PREFIX}{q}" for q in doubled}
    out = []
    for r in p.rules:
        if not r.bnegneg:
            out.append(r)
            continue
        out.append(ExtendedRule(r.head, r.bpos,
                                r.bneg | {aux[q] for q in r.bnegneg},
                                frozenset(), r.label))
    for q in doubled:
        out.append(rule(head=(aux[q],), negated=(q,)))
    return Program(tuple(out))


def disambiguate_head_sets(p: Program) -> Program:
    """Make disjunctive head sets pairwise distinct.

    Within each group of rules sharing the same multi-atom head set, every
    rule after the first gets a fresh always-false atom __t2_k appended to
    its head (k is the rule's 1-based position) plus a constraint forbidding
    it.  Candidate stable models are unaffected, but closed selections can
    then choose independently per rule.
    """
    groups: dict[frozenset[str], list[int]] = {}
    for k, r in enumerate(p.rules):
        if len(r.head) > 1:
            groups.setdefault(r.head_set, []).append(k)
    retag = {}
    for members in groups.values():
        for k in members[1:]:
            retag[k] = f"{T2_PREFIX}{k + 1}"
    if not retag:
        return p
    out = []
    for k, r in enumerate(p.rules):
        if k in retag:
            out.append(ExtendedRule(r.head + (retag[k],), r.bpos, r.bneg,
                                    r.bnegneg, r.label))
        else:
            out.append(r)
    for k in sorted(retag):
        out.append(rule(pos=(retag[k],)))
    return Program(tuple(out))
