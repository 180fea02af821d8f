"""Denotational semantics of forks: supports, views, stable models,
strong entailment, the head-splitting translation into auxiliary atoms,
and vocabulary projection.

A support relative to a set of atoms T is a set of subsets of T that
contains T whenever it is nonempty; it records which here-components
satisfy a formula at T.  Supports are ordered by "less supported than":
the empty support is below everything, and otherwise a support shrinks
(towards the singleton [T]) as it gets closer to making T stable.

A view is a set of supports closed downwards under that order, which is
the same as being closed under supersets of its member supports.  Views
are therefore stored as the antichain of their inclusion-minimal member
supports; this keeps equality and inclusion tests exact at any base size,
while explicit member enumeration (needed only for printing and for the
projection operator) is guarded at 4 base atoms.

Support members are bitmasks over the sorted base; use
:meth:`Support.member_sets` to get them back as atom sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import ht
from .syntax import (And, Atom, ExtendedRule, Falsum, Fork, ForkAnd,
                     ForkImplies, ForkPair, Formula, Implies, Or, Program,
                     alphabet, rule)

MAX_EXPLICIT_BASE = 4


class BaseMismatchError(ValueError):
    """Two supports or views relative to different atom sets were combined."""


def _canon_base(atoms: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(atoms)))


@lru_cache(maxsize=None)
def _all_masks(width: int) -> frozenset[int]:
    return frozenset(range(1 << width))


# ---------------------------------------------------------------------------
# Supports
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Support:
    """A set of subsets of the base, nonempty only if it contains the base."""

    base: tuple[str, ...]
    members: frozenset[int]

    def __post_init__(self):
        full = (1 << len(self.base)) - 1
        for m in self.members:
            if m < 0 or m > full:
                raise ValueError("support member outside the base")
        if self.members and full not in self.members:
            raise ValueError("a nonempty support must contain its base set")

    @classmethod
    def of(cls, base: Iterable[str], member_sets: Iterable[Iterable[str]]) -> "Support":
        b = _canon_base(base)
        index = {a: i for i, a in enumerate(b)}
        members = []
        for s in member_sets:
            m = 0
            for a in s:
                m |= 1 << index[a]
            members.append(m)
        return cls(b, frozenset(members))

    @classmethod
    def empty(cls, base: Iterable[str]) -> "Support":
        return cls(_canon_base(base), frozenset())

    @classmethod
    def top(cls, base: Iterable[str]) -> "Support":
        """The singleton support [T], the maximum of the support order."""
        b = _canon_base(base)
        return cls(b, frozenset(((1 << len(b)) - 1,)))

    @classmethod
    def all_subsets(cls, base: Iterable[str]) -> "Support":
        b = _canon_base(base)
        return cls(b, _all_masks(len(b)))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.base)) - 1

    @property
    def is_empty(self) -> bool:
        return not self.members

    def decode(self, m: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.base) if m >> i & 1)

    def member_sets(self) -> list[frozenset[str]]:
        out = [self.decode(m) for m in self.members]
        return sorted(out, key=lambda s: (-len(s), tuple(sorted(s))))

    def __contains__(self, s) -> bool:
        if isinstance(s, int):
            return s in self.members
        index = {a: i for i, a in enumerate(self.base)}
        m = 0
        for a in s:
            if a not in index:
                return False
            m |= 1 << index[a]
        return m in self.members

    def __str__(self) -> str:
        if not self.members:
            return "[ ]"
        names = []
        for s in self.member_sets():
            names.append("{" + ",".join(sorted(s)) + "}" if s else "∅")
        return "[" + " ".join(names) + "]"


def _same_base(h1: Support, h2: Support) -> None:
    if h1.base != h2.base:
        raise BaseMismatchError(
            f"supports over different bases: {h1.base} vs {h2.base}")


def preceq(h1: Support, h2: Support) -> bool:
    """The "less supported than" order on supports over a common base."""
    _same_base(h1, h2)
    if not h1.members:
        return True
    return bool(h2.members) and h2.members <= h1.members


def complement(h: Support) -> Support:
    """Empty when the support holds all subsets; otherwise the missing
    subsets together with the base set."""
    width = len(h.base)
    everything = _all_masks(width)
    if h.members == everything:
        return Support(h.base, frozenset())
    members = (everything - h.members) | {h.full_mask}
    return Support(h.base, members)


def restrict_support(h: Support, vocab: Iterable[str]) -> Support:
    """Intersect every member with the vocabulary; the base shrinks too."""
    keep = set(vocab)
    new_base = _canon_base(a for a in h.base if a in keep)
    index = {a: i for i, a in enumerate(new_base)}
    members = set()
    for m in h.members:
        nm = 0
        for i, a in enumerate(h.base):
            if m >> i & 1 and a in index:
                nm |= 1 << index[a]
        members.add(nm)
    return Support(new_base, frozenset(members))


def is_vocab_feasible(h: Support, vocab: Iterable[str]) -> bool:
    """No proper member may agree with the base on the whole vocabulary."""
    vmask = 0
    keep = set(vocab)
    for i, a in enumerate(h.base):
        if a in keep:
            vmask |= 1 << i
    full = h.full_mask
    return not any(m != full and m & vmask == full & vmask for m in h.members)


# ---------------------------------------------------------------------------
# Formula supports
# ---------------------------------------------------------------------------

def support_of_formula(phi: Formula, t_atoms: Iterable[str]) -> Support:
    """The here-components within T that satisfy the formula at T."""
    base = _canon_base(t_atoms)
    return Support(base, _den(phi, base))


def _den(phi: Formula, base: tuple[str, ...]) -> frozenset[int]:
    """Satisfying here-masks, computed by set algebra over subformulas."""
    index = {a: i for i, a in enumerate(base)}
    everything = _all_masks(len(base))
    full = (1 << len(base)) - 1
    memo: dict[Formula, frozenset[int]] = {}

    def go(f: Formula) -> frozenset[int]:
        got = memo.get(f)
        if got is not None:
            return got
        if isinstance(f, Falsum):
            out: frozenset[int] = frozenset()
        elif isinstance(f, Atom):
            if f.name in index:
                bit = 1 << index[f.name]
                out = frozenset(m for m in everything if m & bit)
            else:
                out = frozenset()
        elif isinstance(f, And):
            out = go(f.left) & go(f.right)
        elif isinstance(f, Or):
            out = go(f.left) | go(f.right)
        elif isinstance(f, Implies):
            s = (everything - go(f.left)) | go(f.right)
            out = s if full in s else frozenset()
        else:
            raise TypeError(f"cannot evaluate {type(f).__name__}")
        memo[f] = out
        return out

    return go(phi)


# ---------------------------------------------------------------------------
# Views
# ---------------------------------------------------------------------------

def _minimize(cands: Iterable[frozenset[int]]) -> frozenset[frozenset[int]]:
    """Inclusion-minimal nonempty supports among the candidates."""
    kept: list[frozenset[int]] = []
    for c in sorted(set(cands), key=lambda s: (len(s), sorted(s))):
        if c and not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


@dataclass(frozen=True, slots=True)
class View:
    """A superset-closed family of supports, stored by its minimal members."""

    base: tuple[str, ...]
    gens: frozenset[frozenset[int]]

    @classmethod
    def closed(cls, base: Iterable[str], supports: Iterable[frozenset[int]]) -> "View":
        return cls(_canon_base(base), _minimize(supports))

    @classmethod
    def nothing(cls, base: Iterable[str]) -> "View":
        return cls(_canon_base(base), frozenset())

    @property
    def is_empty(self) -> bool:
        return not self.gens

    def contains(self, h: Support) -> bool:
        if h.base != self.base:
            raise BaseMismatchError(
                f"support base {h.base} does not match view base {self.base}")
        return bool(h.members) and any(g <= h.members for g in self.gens)

    def includes(self, other: "View") -> bool:
        """Every support of the other view is a support of this one."""
        if other.base != self.base:
            raise BaseMismatchError(
                f"view bases differ: {other.base} vs {self.base}")
        return all(any(g <= og for g in self.gens) for og in other.gens)

    def min_supports(self) -> list[Support]:
        out = [Support(self.base, g) for g in self.gens]
        return sorted(out, key=lambda s: (len(s.members), sorted(s.members)))

    def supports(self) -> list[Support]:
        """Every member support, explicitly.  Guarded at small bases."""
        width = len(self.base)
        if width > MAX_EXPLICIT_BASE:
            raise ht.CapacityError(
                f"explicit view enumeration needs a base of at most "
                f"{MAX_EXPLICIT_BASE} atoms, got {width}")
        universe = sorted(_all_masks(width))
        out = []
        for bits in range(1 << len(universe)):
            members = frozenset(universe[i] for i in range(len(universe))
                                if bits >> i & 1)
            if any(g <= members for g in self.gens):
                out.append(Support(self.base, members))
        return sorted(out, key=lambda s: (len(s.members), sorted(s.members)))

    def __str__(self) -> str:
        return "{" + " ".join(str(s) for s in self.supports()) + "}"


def ideal(h: Support) -> View:
    """All supports at or below the given one, except the empty support."""
    if not h.members:
        return View.nothing(h.base)
    return View(h.base, frozenset((h.members,)))


def closure(supports: Iterable[Support]) -> View:
    """Union of the ideals of the given supports."""
    items = list(supports)
    if not items:
        raise ValueError("closure of no supports needs an explicit base; "
                         "use View.nothing")
    base = items[0].base
    for s in items[1:]:
        _same_base(items[0], s)
    return View.closed(base, (s.members for s in items))


# ---------------------------------------------------------------------------
# Denotation of forks
# ---------------------------------------------------------------------------

def denotation(f: Fork, t_atoms: Iterable[str]) -> View:
    """The view of a fork at T, computed clause by clause."""
    base = _canon_base(t_atoms)
    width = len(base)
    everything = _all_masks(width)
    full = (1 << width) - 1

    def go(f: Fork) -> frozenset[frozenset[int]]:
        if isinstance(f, Falsum):
            return frozenset()
        if isinstance(f, Atom):
            s = _den(f, base)
            return frozenset((s,)) if s else frozenset()
        if isinstance(f, (And, ForkAnd)):
            gl, gr = go(f.left), go(f.right)
            return _minimize(a & b for a in gl for b in gr)
        if isinstance(f, Or):
            gl = go(f.left) or frozenset((frozenset(),))
            gr = go(f.right) or frozenset((frozenset(),))
            return _minimize(a | b for a in gl for b in gr)
        if isinstance(f, (Implies, ForkImplies)):
            s = _den(f.left, base)
            if not s:
                return frozenset((frozenset(everything),))
            comp = complement(Support(base, s)).members
            return _minimize(comp | g for g in go(f.right))
        if isinstance(f, ForkPair):
            return _minimize(go(f.left) | go(f.right))
        raise TypeError(f"cannot evaluate {type(f).__name__}")

    return View(base, go(f))


def fork_stable_models(f: Fork, atoms: Iterable[str] | None = None) -> list[frozenset[str]]:
    """All T over the alphabet whose view contains the singleton support [T]."""
    pool = sorted(alphabet(f) if atoms is None else set(atoms))
    if atoms is not None and not alphabet(f) <= set(pool):
        raise ValueError(f"alphabet is missing atoms {sorted(alphabet(f) - set(pool))}")
    if len(pool) > ht.MAX_ENUM_ATOMS:
        raise ht.CapacityError(
            f"{len(pool)} atoms exceed the enumeration bound of {ht.MAX_ENUM_ATOMS}")
    out = []
    for t in ht.subsets(pool):
        view = denotation(f, t)
        if frozenset(((1 << len(view.base)) - 1,)) in view.gens:
            out.append(t)
    return ht.sort_models(out)


@dataclass(frozen=True, slots=True)
class EntailmentResult:
    holds: bool
    witness_t: frozenset[str] | None = None
    witness_support: Support | None = None

    def __bool__(self) -> bool:
        return self.holds


def strongly_entails(f: Fork, g: Fork,
                     atoms: Iterable[str] | None = None) -> EntailmentResult:
    """View inclusion at every T over the alphabet; on failure reports a
    T and a support of the left view missing from the right one."""
    pool = sorted((alphabet(f) | alphabet(g)) if atoms is None else set(atoms))
    if atoms is not None and not (alphabet(f) | alphabet(g)) <= set(pool):
        missing = (alphabet(f) | alphabet(g)) - set(pool)
        raise ValueError(f"alphabet is missing atoms {sorted(missing)}")
    if len(pool) > ht.MAX_ENUM_ATOMS:
        raise ht.CapacityError(
            f"{len(pool)} atoms exceed the enumeration bound of {ht.MAX_ENUM_ATOMS}")
    for t in ht.subsets(pool):
        vf = denotation(f, t)
        vg = denotation(g, t)
        for gen in sorted(vf.gens, key=lambda s: (len(s), sorted(s))):
            if not vg.contains(Support(vf.base, gen)):
                return EntailmentResult(False, t, Support(vf.base, gen))
    return EntailmentResult(True)


def strongly_equivalent(f: Fork, g: Fork,
                        atoms: Iterable[str] | None = None) -> bool:
    return bool(strongly_entails(f, g, atoms)) and bool(strongly_entails(g, f, atoms))


# ---------------------------------------------------------------------------
# Head splitting translation
# ---------------------------------------------------------------------------

def pf_translate(p: Program) -> Program:
    """Replace each disjunctive head by fresh switch atoms plus bridge rules.

    A rule with head p1 | ... | pm becomes the disjunction of fresh atoms
    __f{i}_1 | ... | __f{i}_m over the same body, together with the bridge
    rules pj :- __f{i}_j.  Extended normal rules are copied verbatim.
    """
    out: list[ExtendedRule] = []
    for i, r in enumerate(p.rules, start=1):
        if r.is_normal:
            out.append(r)
            continue
        fresh = tuple(f"__f{i}_{j}" for j in range(1, len(r.head) + 1))
        out.append(ExtendedRule(fresh, r.bpos, r.bneg, r.bnegneg, r.label))
        for x, a in zip(fresh, r.head):
            out.append(rule(head=(a,), pos=(x,)))
    return Program(tuple(out))


# ---------------------------------------------------------------------------
# Vocabulary projection
# ---------------------------------------------------------------------------

def project_models(models: Iterable[frozenset[str]],
                   vocab: Iterable[str]) -> list[frozenset[str]]:
    keep = frozenset(vocab)
    return ht.sort_models(frozenset(m) & keep for m in models)


def projected_denotation(f: Fork, t_atoms: Iterable[str], vocab: Iterable[str],
                         atoms: Iterable[str] | None = None) -> View:
    """The view of the fork at T as observable through a sub-vocabulary.

    Collects, over every Z in the alphabet that agrees with T on the
    vocabulary, the vocabulary-feasible supports of the view at Z, restricts
    them to the vocabulary, and closes the result.
    """
    t = frozenset(t_atoms)
    v = frozenset(vocab)
    if not t <= v:
        raise ValueError("T must be a subset of the vocabulary")
    pool = sorted((alphabet(f) | v) if atoms is None else set(atoms))
    if len(pool) > MAX_EXPLICIT_BASE:
        raise ht.CapacityError(
            f"projected views need an alphabet of at most {MAX_EXPLICIT_BASE} "
            f"atoms, got {len(pool)}")
    base = _canon_base(t)
    collected: list[frozenset[int]] = []
    for z in ht.subsets(pool):
        if z & v != t:
            continue
        for h in denotation(f, z).supports():
            if not is_vocab_feasible(h, v):
                continue
            restricted = restrict_support(h, v)
            collected.append(restricted.members)
    return View.closed(base, collected)
