"""Side-by-side computation of all semantics for one program, with the
expected inclusion lattice checked edge by edge and witnesses collected
where a semantics provides them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from . import forks as deno
from . import di, ht, justify, ssm
from .syntax import Program, forked

SEMANTICS_ORDER = ("classical", "sm", "fork", "jm", "spm", "ad", "csm",
                   "csm-closed", "di", "ssm")

# lhs must be included in rhs; the three-way coincidence is encoded as
# subset edges in both directions.
INCLUSION_EDGES = (
    ("sm", "fork"), ("sm", "jm"), ("sm", "csm"),
    ("fork", "jm"), ("jm", "fork"),
    ("jm", "csm"), ("csm", "jm"),
    ("fork", "csm"), ("csm", "fork"),
    ("fork", "ssm"), ("jm", "ssm"), ("csm", "ssm"),
    ("fork", "spm"), ("jm", "spm"), ("csm", "spm"),
    ("ssm", "classical"), ("spm", "classical"),
    ("sm", "ad"), ("ad", "spm"),
    ("csm-closed", "csm"), ("di", "csm-closed"),
)


@dataclass(frozen=True, slots=True)
class InclusionCheck:
    lhs: str
    rhs: str
    holds: bool


@dataclass(slots=True)
class ComparisonReport:
    alphabet: tuple[str, ...]
    semantics: dict[str, list[frozenset[str]]]
    inclusions: list[InclusionCheck]
    witnesses: dict[str, list[dict]]
    timings: dict[str, float]

    @property
    def violations(self) -> list[InclusionCheck]:
        return [c for c in self.inclusions if not c.holds]

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "semantics": {name: [sorted(m) for m in models]
                          for name, models in self.semantics.items()},
            "inclusions": [{"lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}
                           for c in self.inclusions],
            "witnesses": self.witnesses,
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ComparisonReport":
        return cls(
            alphabet=tuple(data["alphabet"]),
            semantics={name: [frozenset(m) for m in models]
                       for name, models in data["semantics"].items()},
            inclusions=[InclusionCheck(e["lhs"], e["rhs"], e["holds"])
                        for e in data["inclusions"]],
            witnesses=data.get("witnesses", {}),
            timings=data.get("timings", {}),
        )

    def render_text(self) -> str:
        lines = [f"alphabet: {{{','.join(self.alphabet)}}}"]
        for name in self.semantics:
            models = ", ".join("{" + ",".join(sorted(m)) + "}"
                               for m in self.semantics[name]) or "(none)"
            lines.append(f"{name:>10}: {models}")
        bad = self.violations
        if bad:
            lines.append("violated relations:")
            for c in bad:
                lines.append(f"  {c.lhs} not within {c.rhs}")
        else:
            lines.append("all expected inclusion relations hold")
        return "\n".join(lines)


def _model_list(m: frozenset[str]) -> list[str]:
    return sorted(m)


def compute_report(p: Program, selectors: Iterable[str] | None = None,
                   atoms: Iterable[str] | None = None) -> ComparisonReport:
    """Compute the requested semantics (all of them by default) and check
    every inclusion edge whose two sides were computed."""
    names = list(SEMANTICS_ORDER) if selectors is None else list(selectors)
    unknown = [n for n in names if n not in SEMANTICS_ORDER]
    if unknown:
        raise ValueError(f"unknown semantics: {unknown}; "
                         f"available: {list(SEMANTICS_ORDER)}")
    pool = tuple(sorted(p.atoms() if atoms is None else set(atoms)))
    results: dict[str, list[frozenset[str]]] = {}
    witnesses: dict[str, list[dict]] = {}
    timings: dict[str, float] = {}

    for name in SEMANTICS_ORDER:
        if name not in names:
            continue
        t0 = time.perf_counter()
        if name == "classical":
            results[name] = ht.classical_models(p, pool)
        elif name == "sm":
            results[name] = ht.stable_models(p, pool)
        elif name == "fork":
            results[name] = deno.fork_stable_models(forked(p), pool)
        elif name == "jm":
            results[name] = justify.justified_models(p, pool)
            witnesses[name] = [
                {"model": _model_list(m),
                 "labels": dict(justify.explanations_of(p, m)[0].labels)}
                for m in results[name]]
        elif name == "spm":
            results[name] = justify.supported_models_graph(p, pool)
            witnesses[name] = [
                {"model": _model_list(m),
                 "labels": dict(justify.support_graphs_of(p, m)[0].labels)}
                for m in results[name]]
        elif name == "ad":
            results[name] = justify.ad_supported_models(p, pool)
        elif name == "csm":
            pairs = di.candidate_stable_models(p, pool)
            results[name] = ht.sort_models(m for m, _ in pairs)
            witnesses[name] = [
                {"model": _model_list(m),
                 "selection": {f"rule#{k + 1}": (a if a is not None else "bot")
                               for k, a in sel.choices}}
                for m, sel in sorted(pairs, key=lambda x: (len(x[0]), sorted(x[0])))]
        elif name == "csm-closed":
            pairs = di.candidate_stable_models(p, pool, closed=True)
            results[name] = ht.sort_models(m for m, _ in pairs)
            witnesses[name] = [
                {"model": _model_list(m),
                 "selection": {f"rule#{k + 1}": (a if a is not None else "bot")
                               for k, a in sel.choices}}
                for m, sel in sorted(pairs, key=lambda x: (len(x[0]), sorted(x[0])))]
        elif name == "di":
            results[name] = di.di_stable_models(p, pool)
        elif name == "ssm":
            pairs = ssm.strongly_supported_models(p, pool)
            results[name] = ht.sort_models(m for m, _ in pairs)
            witnesses[name] = [
                {"model": _model_list(m),
                 "chain": [sorted(stage) for stage in chain.stages]}
                for m, chain in sorted(pairs, key=lambda x: (len(x[0]), sorted(x[0])))]
        timings[name] = time.perf_counter() - t0

    inclusions = []
    for lhs, rhs in INCLUSION_EDGES:
        if lhs in results and rhs in results:
            inclusions.append(InclusionCheck(
                lhs, rhs, set(results[lhs]) <= set(results[rhs])))
    return ComparisonReport(pool, results, inclusions, witnesses, timings)
