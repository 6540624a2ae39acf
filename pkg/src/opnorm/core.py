"""Complex vector/matrix primitives and extended norm exponents.

All numerical values flow through numpy complex128 arrays.  ``as_vector`` and
``as_matrix`` validate shape, finiteness and nonemptiness and return read-only
copies, so constructed values behave as immutable and every operation here is
a pure function.  ``Exponent`` keeps p = inf exact (no large-float stand-in),
which makes the endpoint identities dual(1) = inf and dual(inf) = 1 hold
without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "INF",
    "REL_TOL",
    "Exponent",
    "adjoint",
    "as_exponent",
    "as_matrix",
    "as_vector",
    "dual_exponent",
    "norm_equivalence_factor",
    "pairing",
    "vec_norm",
]

#: Default relative tolerance for scalar identities throughout the package.
REL_TOL = 1e-12

# Finite exponents above this threshold fall back to the max-norm formula
# whenever the two are indistinguishable at REL_TOL (n^(1/p) - 1 < REL_TOL).
_LARGE_P = 1e6


@dataclass(frozen=True, order=True)
class Exponent:
    """A norm exponent p in [1, inf]; infinity is represented exactly."""

    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v) or v < 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @property
    def reciprocal(self) -> float:
        """1/p in [0, 1]; exactly 0.0 for p = inf and 1.0 for p = 1."""
        if self.is_inf:
            return 0.0
        if self.value == 1.0:
            return 1.0
        return 1.0 / self.value

    def dual(self) -> "Exponent":
        """Hoelder conjugate q with 1/p + 1/q = 1."""
        return dual_exponent(self)

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        if self.value == int(self.value):
            return str(int(self.value))
        return repr(self.value)


INF = Exponent(math.inf)


def as_exponent(p) -> Exponent:
    """Coerce a number, the token "inf", or an Exponent to an Exponent."""
    if isinstance(p, Exponent):
        return p
    if isinstance(p, str):
        tok = p.strip().lower()
        if tok == "inf":
            return INF
        return Exponent(float(tok))
    return Exponent(float(p))


def dual_exponent(p) -> Exponent:
    """Hoelder conjugate: dual(1) = inf, dual(inf) = 1, dual(2) = 2, all exact."""
    p = as_exponent(p)
    if p.value == 1.0:
        return INF
    if p.is_inf:
        return Exponent(1.0)
    if p.value == 2.0:
        return Exponent(2.0)
    return Exponent(p.value / (p.value - 1.0))


def as_vector(entries) -> np.ndarray:
    """Validate and freeze a nonempty 1-D complex128 array."""
    arr = np.array(entries, dtype=np.complex128, order="C")
    if arr.ndim != 1:
        raise ValueError(f"vector must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("vector must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    arr.setflags(write=False)
    return arr


def as_matrix(entries) -> np.ndarray:
    """Validate and freeze a nonempty 2-D complex128 array (row-major)."""
    arr = np.array(entries, dtype=np.complex128, order="C")
    if arr.ndim != 2:
        raise ValueError(f"matrix must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("matrix must have at least one row and one column")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    arr.setflags(write=False)
    return arr


def vec_norm(xi, p) -> float:
    """Vector p-norm: (sum |x_i|^p)^(1/p) for finite p, max |x_i| at p = inf.

    Powers are taken on |x_i| / max|x_i|, so large exponents neither overflow
    nor underflow the result.
    """
    x = as_vector(xi)
    p = as_exponent(p)
    a = np.abs(x)
    top = float(a.max())
    if top == 0.0:
        return 0.0
    if p.is_inf:
        return top
    pv = p.value
    if pv == 1.0:
        return float(a.sum())
    if pv == 2.0:
        r = a / top
        return top * float(np.sqrt(np.sum(r * r)))
    if pv > _LARGE_P and x.size ** (1.0 / pv) - 1.0 < REL_TOL:
        # indistinguishable from the max-norm at working precision
        return top
    s = float(np.sum((a / top) ** pv))
    return top * s ** (1.0 / pv)


def pairing(xi, eta) -> complex:
    """Sesquilinear pairing sum_i x_i * conj(y_i) (conjugate in the second slot)."""
    x = as_vector(xi)
    y = as_vector(eta)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return complex(np.vdot(y, x))


def adjoint(A) -> np.ndarray:
    """Conjugate transpose; an exact involution."""
    M = as_matrix(A)
    return np.ascontiguousarray(np.conj(M.T))


def norm_equivalence_factor(n: int, p1, p2) -> float:
    """Constant n^(1/p1 - 1/p2) with ||x||_{p1} <= factor * ||x||_{p2} on C^n.

    Requires p1 <= p2 (so the factor is >= 1).
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    p1 = as_exponent(p1)
    p2 = as_exponent(p2)
    r1, r2 = p1.reciprocal, p2.reciprocal
    if r1 < r2:
        raise ValueError("requires p1 <= p2")
    return float(n) ** (r1 - r2)
