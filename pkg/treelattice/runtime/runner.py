"""
Verification Battery and Runner

Builds the list of checks for the selected groups and runs them one at a time.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable

from treelattice.core import anticyclic, coxeter, dendriform, poset
from treelattice.core.base import Check, CheckReport
from treelattice.core.tree import check_enumeration
from treelattice.runtime import settings

log = logging.getLogger(__name__)

GROUPS = (
    "structure",
    "theorem",
    "axioms",
    "lemmas",
    "prop64",
    "prop66",
    "corollaries",
    "orders",
    "tau",
)


@dataclass
class FunctionCheck(Check):
    """A check function bound to its degree arguments"""

    label: str
    fn: Callable[..., CheckReport]
    args: tuple[int, ...] = ()

    def run(self) -> CheckReport:
        return self.fn(*self.args)

    def description(self) -> str:
        return f"{self.label}{self.args}"


def _structure(n: int) -> list[Check]:
    out: list[Check] = []
    for k in range(n + 1):
        out.append(FunctionCheck("enumeration", check_enumeration, (k,)))
        out.append(FunctionCheck("poset axioms", poset.check_poset_axioms, (k,)))
        out.append(FunctionCheck("lattice", poset.check_lattice, (k,)))
        out.append(FunctionCheck("mirror", poset.check_mirror_antiautomorphism, (k,)))
    out.append(FunctionCheck("star oracle", dendriform.check_star_oracle, (n,)))
    return out


def _lemmas(n: int) -> list[Check]:
    out: list[Check] = []
    for total in range(n + 1):
        for n1 in range(total + 1):
            pair = (n1, total - n1)
            out.append(FunctionCheck("lemma 2.1", poset.check_lemma_2_1, pair))
            out.append(FunctionCheck("upper operator", poset.check_upper_operator, pair))
            out.append(FunctionCheck("lemma 3.3", poset.check_lemma_3_3, pair))
    return out


def battery(group: str, n: int) -> list[Check]:
    """Checks of one group at degree bound n"""
    positive = range(1, n + 1)
    if group == "structure":
        return _structure(n)
    if group == "theorem":
        return [FunctionCheck("theorem", coxeter.verify_theorem, (k,)) for k in positive]
    if group == "axioms":
        return [
            FunctionCheck("dendriform axioms", dendriform.check_dendriform_axioms, (n,)),
            FunctionCheck("star split", dendriform.check_star_split, (n,)),
            FunctionCheck("star associative", dendriform.check_star_associative, (n,)),
            FunctionCheck("star mirror", dendriform.check_star_mirror, (n,)),
        ]
    if group == "lemmas":
        return _lemmas(n)
    if group == "prop64":
        return [FunctionCheck("prop 6.4", coxeter.check_prop_6_4, (n,))]
    if group == "prop66":
        return [FunctionCheck("prop 6.6", coxeter.check_prop_6_6, (max(n - 1, 0),))]
    if group == "corollaries":
        return [FunctionCheck("corollaries", coxeter.check_corollaries, (n,))]
    if group == "orders":
        out: list[Check] = []
        for k in positive:
            out.append(FunctionCheck("tau order", anticyclic.check_tau_order, (k,)))
            out.append(FunctionCheck("theta order", coxeter.check_theta_order, (k,)))
        return out
    if group == "tau":
        return [FunctionCheck("tau split", anticyclic.check_tau_well_defined, (k,)) for k in positive]
    raise ValueError(f"unknown check group {group!r}")


def expand_groups(selected: Iterable[str]) -> list[str]:
    """Resolve "all" and drop duplicates, keeping battery order"""
    chosen = set()
    for g in selected:
        if g == "all":
            chosen.update(GROUPS)
        elif g in GROUPS:
            chosen.add(g)
        else:
            raise ValueError(f"unknown check group {g!r}")
    return [g for g in GROUPS if g in chosen]


class VerificationRunner:
    """
    Runs a battery step by step.

    Each call to step() runs exactly one check and records its report; the
    runner is finished once every check has reported.
    """

    def __init__(self, degree: int, groups: Iterable[str]):
        settings.require_degree(degree, settings.current.verify_limit, "verify")
        self.degree = degree
        self.groups = expand_groups(groups)
        self.checks: list[Check] = [c for g in self.groups for c in battery(g, degree)]
        self.reports: list[CheckReport] = []
        self.position = 0
        log.info("battery at n=%d: %d checks in %s", degree, len(self.checks), ",".join(self.groups))

    def step(self) -> CheckReport:
        check = self.checks[self.position]
        log.debug("running %s", check.description())
        report = check.run()
        self.reports.append(report)
        self.position += 1
        log.info("%s (%.3fs)", report.summary(), report.elapsed)
        return report

    def is_finished(self) -> bool:
        return self.position >= len(self.checks)

    def run(self) -> list[CheckReport]:
        while not self.is_finished():
            self.step()
        # per-tree memo tables are unbounded; drop them once the battery is done
        dendriform.clear_caches()
        anticyclic.clear_caches()
        return self.reports

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)
