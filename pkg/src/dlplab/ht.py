"""Classical and here-and-there satisfaction, plus brute-force enumeration
of classical and stable (equilibrium) models.

Two evaluation paths are provided.  Formulas are evaluated by direct
recursion over the AST.  Programs go through :class:`CompiledProgram`, which
packs each rule into four bitmasks over a sorted alphabet so that the
enumeration loops run on machine integers; both paths implement the same
satisfaction relation and the tests cross-check them.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Union

from .syntax import (And, Atom, ExtendedRule, Falsum, Formula, Implies, Or,
                     Program, alphabet)

MAX_ENUM_ATOMS = 20


class CapacityError(ValueError):
    """Enumeration request over an alphabet too large for desk scale."""


Theory = Union[Formula, Program]


def _sorted_alphabet(x: Theory, atoms: Iterable[str] | None) -> tuple[str, ...]:
    own = alphabet(x)
    if atoms is None:
        out = tuple(sorted(own))
    else:
        out = tuple(sorted(set(atoms)))
        missing = own - set(out)
        if missing:
            raise ValueError(f"alphabet is missing atoms {sorted(missing)}")
    if len(out) > MAX_ENUM_ATOMS:
        raise CapacityError(
            f"{len(out)} atoms exceed the enumeration bound of {MAX_ENUM_ATOMS}")
    return out


def subsets(atoms: Iterable[str]) -> Iterator[frozenset[str]]:
    """All subsets, in ascending cardinality then lexicographic order."""
    pool = sorted(set(atoms))
    for size in range(len(pool) + 1):
        for combo in combinations(pool, size):
            yield frozenset(combo)


def sort_models(models: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(set(models), key=lambda m: (len(m), tuple(sorted(m))))


# ---------------------------------------------------------------------------
# Satisfaction on formula ASTs
# ---------------------------------------------------------------------------

def classical_sat(t: Iterable[str], phi: Theory) -> bool:
    """Truth of a formula or program in a classical interpretation."""
    tset = t if isinstance(t, (set, frozenset)) else frozenset(t)
    if isinstance(phi, Program):
        return all(classical_sat(tset, _rule_formula(r)) for r in phi.rules)
    return _csat(tset, phi)


def _csat(t, phi: Formula) -> bool:
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, Atom):
        return phi.name in t
    if isinstance(phi, And):
        return _csat(t, phi.left) and _csat(t, phi.right)
    if isinstance(phi, Or):
        return _csat(t, phi.left) or _csat(t, phi.right)
    if isinstance(phi, Implies):
        return not _csat(t, phi.left) or _csat(t, phi.right)
    raise TypeError(f"cannot evaluate {type(phi).__name__}")


def ht_sat(here: Iterable[str], there: Iterable[str], phi: Theory) -> bool:
    """Satisfaction at the interpretation pair <here, there>."""
    h = here if isinstance(here, frozenset) else frozenset(here)
    t = there if isinstance(there, frozenset) else frozenset(there)
    if not h <= t:
        raise ValueError("'here' must be a subset of 'there'")
    if isinstance(phi, Program):
        return all(_htsat(h, t, _rule_formula(r)) for r in phi.rules)
    return _htsat(h, t, phi)


def _htsat(h, t, phi: Formula) -> bool:
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, Atom):
        return phi.name in h
    if isinstance(phi, And):
        return _htsat(h, t, phi.left) and _htsat(h, t, phi.right)
    if isinstance(phi, Or):
        return _htsat(h, t, phi.left) or _htsat(h, t, phi.right)
    if isinstance(phi, Implies):
        if not (not _csat(t, phi.left) or _csat(t, phi.right)):
            return False
        return not _htsat(h, t, phi.left) or _htsat(h, t, phi.right)
    raise TypeError(f"cannot evaluate {type(phi).__name__}")


_rule_formula_cache: dict[ExtendedRule, Formula] = {}


def _rule_formula(r: ExtendedRule) -> Formula:
    f = _rule_formula_cache.get(r)
    if f is None:
        from .syntax import rule_to_formula
        f = rule_to_formula(r)
        _rule_formula_cache[r] = f
    return f


def ht_equivalent(phi: Formula, psi: Formula,
                  atoms: Iterable[str] | None = None) -> bool:
    """Agreement on every interpretation pair over the given alphabet."""
    if atoms is None:
        atoms = alphabet(phi) | alphabet(psi)
    pool = tuple(sorted(set(atoms)))
    if len(pool) > MAX_ENUM_ATOMS:
        raise CapacityError(
            f"{len(pool)} atoms exceed the enumeration bound of {MAX_ENUM_ATOMS}")
    for t in subsets(pool):
        for h in subsets(t):
            if _htsat(h, t, phi) != _htsat(h, t, psi):
                return False
    return True


# ---------------------------------------------------------------------------
# Compiled programs
# ---------------------------------------------------------------------------

class CompiledProgram:
    """Rules packed into bitmasks over a fixed, sorted alphabet."""

    __slots__ = ("atoms", "index", "full", "rules")

    def __init__(self, program: Program, atoms: Iterable[str] | None = None):
        self.atoms = _sorted_alphabet(program, atoms)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        self.full = (1 << len(self.atoms)) - 1
        self.rules = tuple(
            (self.mask(r.head), self.mask(r.bpos), self.mask(r.bneg),
             self.mask(r.bnegneg))
            for r in program.rules)

    def mask(self, atoms: Iterable[str]) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.index[a]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.atoms) if m >> i & 1)

    def body_classical(self, ri: int, t: int) -> bool:
        _, bpos, bneg, bnegneg = self.rules[ri]
        return bpos & t == bpos and not bneg & t and bnegneg & t == bnegneg

    def body_ht(self, ri: int, h: int, t: int) -> bool:
        _, bpos, bneg, bnegneg = self.rules[ri]
        return bpos & h == bpos and not bneg & t and bnegneg & t == bnegneg

    def sat_classical(self, t: int) -> bool:
        for ri, (head, _, _, _) in enumerate(self.rules):
            if self.body_classical(ri, t) and not head & t:
                return False
        return True

    def sat_ht(self, h: int, t: int) -> bool:
        for ri, (head, _, _, _) in enumerate(self.rules):
            if self.body_classical(ri, t) and not head & t:
                return False
            if self.body_ht(ri, h, t) and not head & h:
                return False
        return True

    def is_stable(self, t: int) -> bool:
        if not self.sat_classical(t):
            return False
        h = (t - 1) & t
        while h != t:
            if self.sat_ht(h, t):
                return False
            if h == 0:
                break
            h = (h - 1) & t
        return True

    def classical_model_masks(self) -> Iterator[int]:
        for t in range(self.full + 1):
            if self.sat_classical(t):
                yield t


# ---------------------------------------------------------------------------
# Model enumeration
# ---------------------------------------------------------------------------

def classical_models(x: Theory, atoms: Iterable[str] | None = None) -> list[frozenset[str]]:
    """All classical models over the alphabet, sorted."""
    if isinstance(x, Program):
        cp = CompiledProgram(x, atoms)
        return sort_models(cp.unmask(t) for t in cp.classical_model_masks())
    pool = _sorted_alphabet(x, atoms)
    return sort_models(t for t in subsets(pool) if _csat(t, x))


def is_stable_model(x: Theory, t: Iterable[str]) -> bool:
    """Total model test plus minimality of the here-component."""
    tset = frozenset(t)
    if isinstance(x, Program):
        cp = CompiledProgram(x, tset | alphabet(x))
        return cp.is_stable(cp.mask(tset))
    if not _csat(tset, x):
        return False
    return all(not _htsat(h, tset, x) for h in subsets(tset) if h != tset)


def stable_models(x: Theory, atoms: Iterable[str] | None = None) -> list[frozenset[str]]:
    """All stable (equilibrium) models over the alphabet, sorted."""
    if isinstance(x, Program):
        cp = CompiledProgram(x, atoms)
        return sort_models(cp.unmask(t) for t in range(cp.full + 1) if cp.is_stable(t))
    pool = _sorted_alphabet(x, atoms)
    out = []
    for t in subsets(pool):
        if not _csat(t, x):
            continue
        if all(not _htsat(h, t, x) for h in subsets(t) if h != t):
            out.append(t)
    return sort_models(out)
