# ═══════════════════════════════════════════════════════════
#  LIMITS & INTEGER POLICY
# ═══════════════════════════════════════════════════════════
from dataclasses import dataclass, replace
from enum import Enum

from treelattice.core.base import CapacityError, DegreeError

INT64_MAX = 2**63 - 1

ENUMERATION_LIMIT = 10  # Y(10) has 16796 trees
POSET_LIMIT = 10
MATRIX_LIMIT = 8  # dense 1430 x 1430
VERIFY_LIMIT = 7


class IntegerPolicy(Enum):
    CHECKED = "checked"  # int64 storage, overflow raises
    EXACT = "exact"  # python integers


# ═══════════════════════════════════════════════════════════
#  MODELS
# ═══════════════════════════════════════════════════════════


@dataclass(frozen=True)
class Settings:
    enumeration_limit: int = ENUMERATION_LIMIT
    poset_limit: int = POSET_LIMIT
    matrix_limit: int = MATRIX_LIMIT
    verify_limit: int = VERIFY_LIMIT
    integers: IntegerPolicy = IntegerPolicy.CHECKED


current = Settings()


def configure(**overrides) -> Settings:
    """Replace the active settings; unknown keys raise TypeError"""
    global current
    current = replace(current, **overrides)
    return current


def reset() -> Settings:
    global current
    current = Settings()
    return current


def require_degree(n: int, limit: int, what: str) -> None:
    if n < 0:
        raise DegreeError(f"{what}: degree must be nonnegative, got {n}")
    if n > limit:
        raise CapacityError(f"{what}: degree {n} exceeds the configured limit {limit}")
