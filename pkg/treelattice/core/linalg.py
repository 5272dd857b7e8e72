"""
Exact Integer Linear Algebra

Dense integer matrices and vectors on top of numpy. Matrices act on column
vectors: (Ax)_i = sum_j A[i][j] x_j, so column j is the image of basis vector j.

Under the checked policy entries are int64 and every product is bounded
before it is computed; a product that might leave the int64 range is
recomputed with python integers and only rejected if the true result does
not fit. Nothing ever wraps around silently.
"""

import logging
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from treelattice.core.base import (
    DimensionError,
    IntegerOverflowError,
    PreconditionError,
    VerificationError,
)
from treelattice.runtime import settings

log = logging.getLogger(__name__)


def _policy() -> settings.IntegerPolicy:
    return settings.current.integers


INT64_MIN = -settings.INT64_MAX - 1


def _magnitude(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


def _narrow(a: np.ndarray) -> np.ndarray:
    """Bring an exact result back to the storage of the active policy"""
    if _policy() == settings.IntegerPolicy.EXACT:
        return a.astype(object)
    if a.dtype == np.int64:
        # INT64_MIN has no int64 negation, so it never enters storage
        if a.size and bool((a == INT64_MIN).any()):
            raise IntegerOverflowError("integer value -2**63 is outside the checked range")
        return a
    if _magnitude(a) > settings.INT64_MAX:
        raise IntegerOverflowError("integer result exceeds the int64 range")
    return a.astype(np.int64)


def _admit(a: np.ndarray) -> np.ndarray:
    """Validate a caller-supplied array and store it under the active policy"""
    if a.dtype == object:
        if not all(isinstance(x, (int, np.integer)) for x in a.flat):
            raise PreconditionError("matrix entries must be integers")
        return _narrow(a)
    if a.dtype.kind not in "iu":
        raise PreconditionError(f"matrix entries must be integers, not {a.dtype}")
    if a.dtype == np.int64:
        return _narrow(a)
    return _narrow(a.astype(object))


def _coerce(entries) -> np.ndarray:
    exact = [[int(x) for x in row] for row in entries]
    width = len(exact[0]) if exact else 0
    if any(len(row) != width for row in exact):
        raise DimensionError("rows of unequal length")
    a = np.empty((len(exact), width), dtype=object)
    for i, row in enumerate(exact):
        a[i, :] = row
    return _narrow(a)


def checked_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact a @ b under the active integer policy"""
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = _magnitude(a) * _magnitude(b) * max(a.shape[-1], 1)
        if bound <= settings.INT64_MAX:
            return a @ b
        log.debug("matmul bound %d exceeds int64, recomputing exactly", bound)
    return _narrow(a.astype(object) @ b.astype(object))


def _checked_sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _magnitude(a) + _magnitude(b) <= settings.INT64_MAX:
            return a - b
    return _narrow(a.astype(object) - b.astype(object))


def _checked_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _magnitude(a) + _magnitude(b) <= settings.INT64_MAX:
            return a + b
    return _narrow(a.astype(object) + b.astype(object))


class IntVector:
    """Coordinates of a linear combination in a fixed basis"""

    __slots__ = ("data",)

    def __init__(self, entries: Union[Iterable[int], np.ndarray]):
        if isinstance(entries, np.ndarray):
            data = _admit(entries)
        else:
            data = _coerce([list(entries)])[0]
        if data.ndim != 1 or data.shape[0] == 0:
            raise DimensionError("a vector needs a positive length")
        self.data = data

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, i: int) -> int:
        return int(self.data[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntVector):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(self.data == other.data))

    def tolist(self) -> list[int]:
        return [int(x) for x in self.data]

    def __repr__(self) -> str:
        return f"IntVector({self.tolist()})"


class IntMatrix:
    """
    Dense exact integer matrix.
    Values are immutable after construction; every operation returns a new matrix.
    """

    __slots__ = ("data",)

    def __init__(self, entries: Union[Sequence[Sequence[int]], np.ndarray]):
        if isinstance(entries, np.ndarray):
            data = _admit(entries)
        else:
            data = _coerce(entries)
        if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] == 0:
            raise DimensionError("matrix dimensions must be positive")
        data.flags.writeable = False
        self.data = data

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        dtype = object if _policy() == settings.IntegerPolicy.EXACT else np.int64
        a = np.zeros((n, n), dtype=dtype)
        for i in range(n):
            a[i, i] = 1
        return cls(a)

    @classmethod
    def from_columns(cls, columns: Sequence[IntVector]) -> "IntMatrix":
        if not columns:
            raise DimensionError("matrix dimensions must be positive")
        rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise DimensionError("columns of unequal length")
        dtype = object if any(c.data.dtype == object for c in columns) else np.int64
        a = np.empty((rows, len(columns)), dtype=dtype)
        for j, c in enumerate(columns):
            a[:, j] = c.data
        return cls(_narrow(a))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        return int(self.data[key])

    def column(self, j: int) -> IntVector:
        return IntVector(self.data[:, j].copy())

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    # ───────────────────────── arithmetic ─────────────────────────

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(checked_matmul(self.data, other.data))

    __matmul__ = mul

    def apply(self, x: IntVector) -> IntVector:
        if self.cols != len(x):
            raise DimensionError(f"cannot apply {self.shape} matrix to a vector of length {len(x)}")
        return IntVector(checked_matmul(self.data, x.data.reshape(-1, 1)).reshape(-1))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.data.T.copy())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def neg(self) -> "IntMatrix":
        # _narrow keeps INT64_MIN out of int64 storage
        return IntMatrix(-self.data)

    __neg__ = neg

    def add(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(_checked_add(self.data, other.data))

    __add__ = add

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(_checked_sub(self.data, other.data))

    __sub__ = sub

    def scale(self, k: int) -> "IntMatrix":
        if k == 1:
            return self
        if k == -1:
            return self.neg()
        return IntMatrix(_narrow(self.data.astype(object) * int(k)))

    def power(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise DimensionError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative powers need an inverse")
        result = IntMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return bool(np.array_equal(self.data, np.eye(self.rows, dtype=np.int64)))

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.shape, tuple(int(x) for x in self.data.flat)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return a.mul(b)


def transpose(a: IntMatrix) -> IntMatrix:
    return a.transpose()


def apply(a: IntMatrix, x: IntVector) -> IntVector:
    return a.apply(x)


def neg(a: IntMatrix) -> IntMatrix:
    return a.neg()


def inverse_unitriangular(a: IntMatrix, extension: Sequence[int]) -> IntMatrix:
    """
    Exact inverse of a matrix that becomes unitriangular once rows and columns
    are both listed in the order `extension`.
    """
    n = a.rows
    if a.cols != n:
        raise DimensionError("only square matrices are invertible")
    perm = np.asarray(list(extension), dtype=np.intp)
    if sorted(perm.tolist()) != list(range(n)):
        raise PreconditionError("extension is not a permutation of the basis")

    p = a.data[np.ix_(perm, perm)]
    if not np.all(np.diagonal(p) == 1):
        raise PreconditionError("diagonal is not all ones under the given extension")
    if not np.any(np.tril(p, -1)):
        x = _solve_upper(p)
    elif not np.any(np.triu(p, 1)):
        x = _solve_upper(p.T.copy()).T.copy()
    else:
        raise PreconditionError("matrix is not triangular under the given extension")

    inv = np.empty_like(x)
    inv[np.ix_(perm, perm)] = x
    result = IntMatrix(inv)
    if not (a @ result).is_identity():
        raise VerificationError("unitriangular inverse failed the A * A^-1 = I check")
    return result


def _solve_upper(u: np.ndarray) -> np.ndarray:
    """Back substitution for U X = I with U upper unitriangular"""
    n = u.shape[0]
    x = np.zeros((n, n), dtype=u.dtype)
    for i in range(n - 1, -1, -1):
        row = np.zeros((1, n), dtype=u.dtype)
        row[0, i] = 1
        if i + 1 < n:
            row = _checked_sub(row, checked_matmul(u[i : i + 1, i + 1 :], x[i + 1 :, :]))
            if row.dtype != x.dtype:
                x = x.astype(object)
        x[i, :] = row[0]
    return x


def matrix_order(a: IntMatrix, max_k: int) -> Optional[int]:
    """Least k <= max_k with A^k = I, or None"""
    if a.rows != a.cols:
        raise DimensionError("only square matrices have an order")
    p = a
    for k in range(1, max_k + 1):
        if p.is_identity():
            return k
        if k < max_k:
            p = p @ a
    return None
