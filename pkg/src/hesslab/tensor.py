"""Dense tensor arithmetic in a fixed orthonormal frame.

Tensors are dense numpy arrays of dtype=object holding exact
``fractions.Fraction`` entries (Python ints are accepted and behave
identically; floats appear only in the explicitly requested float
mode).  The frame is orthonormal throughout, so the metric is the
identity and every trace is a plain contraction of two slots.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng

MAX_DIM = 8
MAX_ORDER = 6


def _sign(perm: tuple[int, ...]) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


class Tensor:
    """Dense order-k tensor on an n-dimensional space."""

    __slots__ = ("n", "order", "data")

    def __init__(self, n: int, data):
        if not 2 <= n <= MAX_DIM:
            raise ValueError(f"dimension must be in [2, {MAX_DIM}], got {n}")
        arr = np.asarray(data, dtype=object)
        if arr.ndim > MAX_ORDER:
            raise ValueError(f"order must be <= {MAX_ORDER}, got {arr.ndim}")
        if arr.shape != (n,) * arr.ndim:
            raise ValueError(f"expected shape {(n,) * arr.ndim}, got {arr.shape}")
        arr.flags.writeable = False
        self.n = n
        self.order = arr.ndim
        self.data = arr

    @classmethod
    def zeros(cls, n: int, order: int) -> "Tensor":
        return cls(n, np.full((n,) * order, Fraction(0), dtype=object))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.n == other.n
                and self.order == other.order
                and bool(np.all(self.data == other.data)))

    def __hash__(self):
        return hash((self.n, self.order, tuple(self.data.flat)))

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_like(other)
        return Tensor(self.n, self.data + other.data)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_like(other)
        return Tensor(self.n, self.data - other.data)

    def __neg__(self) -> "Tensor":
        return Tensor(self.n, -self.data)

    def scale(self, c) -> "Tensor":
        return Tensor(self.n, self.data * c)

    def __getitem__(self, idx):
        return self.data[idx]

    def is_zero(self) -> bool:
        return bool(np.all(self.data == 0))

    def max_abs(self):
        return max(abs(x) for x in self.data.flat) if self.data.size else 0

    def _check_like(self, other: "Tensor") -> None:
        if self.n != other.n or self.order != other.order:
            raise ValueError("tensor shape mismatch")

    def __repr__(self):
        return f"Tensor(n={self.n}, order={self.order})"


def contract(t: Tensor, axis_a: int, axis_b: int) -> Tensor:
    """Trace over two slots (metric = identity, so this is g^{ab}-contraction)."""
    if axis_a == axis_b:
        raise ValueError("contraction axes must differ")
    for ax in (axis_a, axis_b):
        if not 0 <= ax < t.order:
            raise ValueError(f"axis {ax} out of range for order {t.order}")
    return Tensor(t.n, np.trace(t.data, axis1=axis_a, axis2=axis_b))


def _alternating_sum(t: Tensor, axes: list[int], signed: bool) -> Tensor:
    if len(set(axes)) != len(axes):
        raise ValueError("axes must be distinct")
    for ax in axes:
        if not 0 <= ax < t.order:
            raise ValueError(f"axis {ax} out of range for order {t.order}")
    total = np.zeros_like(t.data)
    for perm in itertools.permutations(range(len(axes))):
        full = list(range(t.order))
        for i, ax in enumerate(axes):
            full[ax] = axes[perm[i]]
        term = np.transpose(t.data, full)
        if signed and _sign(perm) < 0:
            total = total - term
        else:
            total = total + term
    return Tensor(t.n, total * Fraction(1, math.factorial(len(axes))))


def antisymmetrize(t: Tensor, axes: list[int]) -> Tensor:
    """(1/|axes|!) sum of signed permutations over the listed slots."""
    return _alternating_sum(t, list(axes), signed=True)


def symmetrize(t: Tensor, axes: list[int]) -> Tensor:
    """(1/|axes|!) sum of permutations over the listed slots."""
    return _alternating_sum(t, list(axes), signed=False)


def random_rational(n: int, order: int, seed: int, bound: int = 10,
                    tag: str = "tensor") -> Tensor:
    """Seeded random tensor with i.i.d. uniform rational entries p/q.

    Entries are addressed by flat index, so the result is independent of
    evaluation order and identical across runs for fixed arguments.
    """
    full_tag = f"{tag}|{n}|{order}|{bound}"
    flat = [rng.rational_at(full_tag, seed, i, bound) for i in range(n ** order)]
    return Tensor(n, np.array(flat, dtype=object).reshape((n,) * order))


# --- packed fully symmetric order-3 storage -------------------------------

def sym3_dim(n: int) -> int:
    """dim S^3 of an n-dimensional space: C(n+2, 3) = n(n+1)(n+2)/6."""
    return math.comb(n + 2, 3)


def sym3_triples(n: int) -> list[tuple[int, int, int]]:
    """Sorted multisets i <= j <= k in lexicographic order."""
    return [(i, j, k) for i in range(n) for j in range(i, n) for k in range(j, n)]


@dataclass(frozen=True)
class Sym3Tensor:
    """Fully symmetric order-3 tensor in packed multiset storage."""

    n: int
    packed: tuple

    def __post_init__(self):
        if not 2 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be in [2, {MAX_DIM}], got {self.n}")
        if len(self.packed) != sym3_dim(self.n):
            raise ValueError(
                f"expected {sym3_dim(self.n)} packed entries, got {len(self.packed)}")

    @classmethod
    def zeros(cls, n: int) -> "Sym3Tensor":
        return cls(n, (Fraction(0),) * sym3_dim(n))

    @classmethod
    def from_dense(cls, t: Tensor) -> "Sym3Tensor":
        if t.order != 3:
            raise ValueError("expected an order-3 tensor")
        for idx in itertools.product(range(t.n), repeat=3):
            if t.data[idx] != t.data[tuple(sorted(idx))]:
                raise ValueError(f"tensor is not symmetric at index {idx}")
        return cls(t.n, tuple(t.data[ijk] for ijk in sym3_triples(t.n)))

    @classmethod
    def from_monomials(cls, n: int, coeffs: dict) -> "Sym3Tensor":
        """Build from cubic-monomial coefficients.

        A coefficient c on the monomial e_i e_j e_k (as a cubic polynomial
        in the frame covectors) contributes c / (#distinct permutations of
        ijk) to each dense component, i.e. the symmetrized-product
        convention.
        """
        triples = sym3_triples(n)
        vals = {t: Fraction(0) for t in triples}
        for ijk, c in coeffs.items():
            key = tuple(sorted(ijk))
            if key not in vals:
                raise ValueError(f"index triple {ijk} out of range for n={n}")
            mult = len(set(itertools.permutations(key)))
            vals[key] += Fraction(c) / mult
        return cls(n, tuple(vals[t] for t in triples))

    @classmethod
    def random(cls, n: int, seed: int, bound: int = 10,
               tag: str = "sym3") -> "Sym3Tensor":
        full_tag = f"{tag}|{n}|{bound}"
        return cls(n, tuple(rng.rational_at(full_tag, seed, i, bound)
                            for i in range(sym3_dim(n))))

    def to_dense(self) -> Tensor:
        arr = np.empty((self.n,) * 3, dtype=object)
        for val, (i, j, k) in zip(self.packed, sym3_triples(self.n)):
            for p in set(itertools.permutations((i, j, k))):
                arr[p] = val
        return Tensor(self.n, arr)

    def scale(self, c) -> "Sym3Tensor":
        return Sym3Tensor(self.n, tuple(x * c for x in self.packed))

    def __add__(self, other: "Sym3Tensor") -> "Sym3Tensor":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return Sym3Tensor(self.n, tuple(a + b for a, b in
                                        zip(self.packed, other.packed)))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.packed)


def sym3_basis(n: int) -> list[Sym3Tensor]:
    """The packed unit vectors, one per multiset index."""
    d = sym3_dim(n)
    out = []
    for i in range(d):
        packed = [Fraction(0)] * d
        packed[i] = Fraction(1)
        out.append(Sym3Tensor(n, tuple(packed)))
    return out
