"""
Base Check System

Key design principles:
1. Every verification produces a CheckReport, failure included
2. A failing report always carries a reproducible counterexample
3. Mathematical failure is a report, broken arithmetic is an exception
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

log = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════
#  ERRORS
# ═══════════════════════════════════════════════════════════


class TreeLatticeError(Exception):
    """Root of every error raised by the library"""


class TreeSyntaxError(TreeLatticeError, ValueError):
    """Malformed tree literal"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class DegreeError(TreeLatticeError, ValueError):
    """Degree mismatch, or an operation that is undefined at this degree"""


class DimensionError(TreeLatticeError, ValueError):
    """Non-conformable matrix or vector shapes"""


class PreconditionError(TreeLatticeError, ValueError):
    """Input violates a documented precondition (e.g. non-unit diagonal)"""


class CapacityError(TreeLatticeError):
    """Degree or value beyond the configured limits"""


class IntegerOverflowError(CapacityError, OverflowError):
    """Checked integer arithmetic left the int64 range"""


class VerificationError(TreeLatticeError, ArithmeticError):
    """An internal exactness check failed; results cannot be trusted"""


# ═══════════════════════════════════════════════════════════
#  REPORTS
# ═══════════════════════════════════════════════════════════


class CheckStatus(Enum):
    """Outcome of a check"""

    PASS = "pass"
    FAIL = "fail"


@dataclass
class CheckReport:
    """Result of one equation-keyed verification"""

    name: str
    equation: str  # e.g. "Eq(14)"
    degrees: tuple[int, ...]
    status: CheckStatus
    cases: int = 0
    counterexample: Union[str, None] = None
    failed_equations: tuple[str, ...] = ()
    detail: str = ""  # e.g. "order 3"
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def summary(self) -> str:
        """One stable line, free of timings"""
        degrees = ",".join(str(d) for d in self.degrees)
        line = f"{self.status.value.upper()} {self.equation} {self.name} n={degrees} cases={self.cases}"
        if self.detail:
            line += f" {self.detail}"
        if self.counterexample is not None:
            line += f" counterexample: {self.counterexample}"
        return line


class CheckRecorder:
    """
    Accumulates cases of a check and turns them into a CheckReport.

    Only the first counterexample is kept; later failures still count and
    still mark their equation as failed.
    """

    def __init__(self, name: str, equation: str, degrees: tuple[int, ...]):
        self.name = name
        self.equation = equation
        self.degrees = degrees
        self.cases = 0
        self.counterexample: Union[str, None] = None
        self.failed_equations: list[str] = []
        self._start = time.perf_counter()

    def expect(
        self,
        ok: bool,
        witness: Union[str, Callable[[], str]],
        equation: Union[str, None] = None,
    ) -> bool:
        """Record one case; the witness is only rendered on failure"""
        self.cases += 1
        if ok:
            return True
        tag = equation or self.equation
        if tag not in self.failed_equations:
            self.failed_equations.append(tag)
        if self.counterexample is None:
            text = witness() if callable(witness) else witness
            self.counterexample = f"{tag}: {text}"
        return False

    @property
    def failed(self) -> bool:
        return bool(self.failed_equations)

    def finish(self, detail: str = "") -> CheckReport:
        elapsed = time.perf_counter() - self._start
        report = CheckReport(
            name=self.name,
            equation=self.equation,
            degrees=self.degrees,
            status=CheckStatus.FAIL if self.failed else CheckStatus.PASS,
            cases=self.cases,
            counterexample=self.counterexample,
            failed_equations=tuple(self.failed_equations),
            detail=detail,
            elapsed=elapsed,
        )
        log.debug("%s %s: %d cases in %.3fs", self.name, report.status.value, self.cases, elapsed)
        return report


class Check(ABC):
    """
    Base class for every entry of a verification battery.
    A check is run once and yields exactly one report.
    """

    @abstractmethod
    def run(self) -> CheckReport:
        """Run the check and return its report"""
        pass

    @abstractmethod
    def description(self) -> str:
        """Human-readable description for logs"""
        pass
