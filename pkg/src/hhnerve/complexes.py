"""Truncated chain and cochain complexes with mixed-radix basis codecs."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .exactla import (FieldSpec, HomologyBasis, HomologySummary, SparseMatrix,
                      check_composable, homology_basis, homology_dims)

DEFAULT_BUDGET_MB = 1024
# rough bytes per stored entry of a dict-backed sparse column
_BYTES_PER_ENTRY = 160


class BudgetExceeded(MemoryError):
    def __init__(self, order: int, max_degree: int, budget_mb: float):
        self.order = order
        self.max_degree = max_degree
        self.budget_mb = budget_mb
        super().__init__(f"complex for |G|={order}, N={max_degree} exceeds the {budget_mb} MB budget")


class DegreeOutOfRange(IndexError):
    pass


def budget_mb() -> float:
    return float(os.environ.get("HHNERVE_BUDGET_MB", DEFAULT_BUDGET_MB))


def check_budget(order: int, max_degree: int, budget: Optional[float] = None):
    if max_degree < 1:
        raise ValueError(f"degree bound must be >= 1, got {max_degree}")
    budget = budget_mb() if budget is None else budget
    est = order ** (max_degree + 1) * (max_degree + 2) * _BYTES_PER_ENTRY
    if est > budget * 2 ** 20:
        raise BudgetExceeded(order, max_degree, budget)


@dataclass(frozen=True)
class BasisCodec:
    """Mixed-radix encoding of basis tuples, most significant factor first.

    A degree-k basis element is a tuple of ``lead + k`` digits in
    ``range(radix)``; ``lead`` is 1 for Hochschild chains (g_0), cochains (h)
    and groupoid nerves (a_0), and 0 for bar complexes.
    """

    radix: int
    lead: int = 1
    lead_radix: Optional[int] = None  # one-object nerve: a single object

    def length(self, k: int) -> int:
        return self.lead + k

    def size(self, k: int) -> int:
        if self.lead == 0:
            return self.radix ** k
        return (self.lead_radix or self.radix) * self.radix ** k

    def encode(self, digits) -> int:
        idx = 0
        n = self.radix
        for d in digits:
            idx = idx * n + d
        return idx

    def decode(self, index: int, k: int) -> tuple[int, ...]:
        n = self.radix
        out = []
        for _ in range(self.length(k)):
            index, d = divmod(index, n)
            out.append(d)
        return tuple(reversed(out))

    def describe(self) -> str:
        head = "(x_0" if self.lead else "("
        return f"mixed radix {self.radix}, most significant first {head}, x_1..x_k)"


@dataclass
class ChainComplexSlice:
    """A complex truncated at ``max_degree``.

    Homological: ``differentials[k]`` is d_k : C_k -> C_{k-1} for 1 <= k <= N.
    Cohomological: ``differentials[k]`` is the coboundary C^k -> C^{k+1}
    for 0 <= k <= N-1.
    """

    max_degree: int
    dims: list[int]
    differentials: dict[int, SparseMatrix]
    orientation: str
    codec: BasisCodec
    field: FieldSpec
    label: str = ""
    finite_support: bool = True
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.orientation not in ("homological", "cohomological"):
            raise ValueError(f"bad orientation {self.orientation!r}")

    @property
    def is_chain(self) -> bool:
        return self.orientation == "homological"

    def pair(self, k: int) -> tuple[SparseMatrix, Optional[SparseMatrix]]:
        """(outgoing, incoming) differentials at degree k; incoming is None past the truncation."""
        if not 0 <= k <= self.max_degree:
            raise DegreeOutOfRange(f"degree {k} outside 0..{self.max_degree}")
        n = self.dims[k]
        if self.is_chain:
            out = self.differentials[k] if k >= 1 else SparseMatrix.zeros(0, n, self.field)
            inc = self.differentials.get(k + 1)
        else:
            out = self.differentials.get(k)
            inc = self.differentials[k - 1] if k >= 1 else SparseMatrix.zeros(n, 0, self.field)
        return out, inc

    def full_pair(self, k: int) -> tuple[SparseMatrix, SparseMatrix]:
        out, inc = self.pair(k)
        if out is None or inc is None:
            raise DegreeOutOfRange(f"degree {k} is at the truncation boundary")
        return out, inc

    def homology_basis(self, k: int) -> HomologyBasis:
        """Cycle representatives at degree k (cached on the complex)."""
        cache = self.meta.setdefault("_hbasis", {})
        if k not in cache:
            cache[k] = homology_basis(*self.full_pair(k), self.field, k)
        return cache[k]

    def check(self):
        """Raise NotAComplex if two adjacent differentials fail to compose to zero."""
        ks = sorted(self.differentials)
        for a, b in zip(ks, ks[1:]):
            if self.is_chain:
                check_composable(self.differentials[a], self.differentials[b], a)
            else:
                check_composable(self.differentials[b], self.differentials[a], a)

    def composites_zero(self) -> bool:
        ks = sorted(self.differentials)
        for a, b in zip(ks, ks[1:]):
            x, y = self.differentials[a], self.differentials[b]
            comp = x @ y if self.is_chain else y @ x
            if not comp.is_zero():
                return False
        return True

    def homology(self, k: int, F: Optional[FieldSpec] = None) -> HomologySummary:
        F = F or self.field
        out, inc = self.pair(k)
        reliable = out is not None and inc is not None
        n = self.dims[k]
        if out is None:
            out = SparseMatrix.zeros(0, n, self.field)
        if inc is None:
            inc = SparseMatrix.zeros(n, 0, self.field)
        h = homology_dims(out, inc, F, degree=k, check=False)
        return HomologySummary(k, h.dimension, h.torsion, reliable)

    def betti(self, upto: Optional[int] = None, F: Optional[FieldSpec] = None) -> "BettiReport":
        upto = self.max_degree - 1 if upto is None else upto
        return BettiReport(self.orientation, (F or self.field).name,
                           tuple(self.homology(k, F) for k in range(upto + 1)))

    def transpose(self) -> "ChainComplexSlice":
        """The dual complex (cochains from chains, or back)."""
        if self.is_chain:
            diffs = {k - 1: d.transpose() for k, d in self.differentials.items()}
            orient = "cohomological"
        else:
            diffs = {k + 1: d.transpose() for k, d in self.differentials.items()}
            orient = "homological"
        return ChainComplexSlice(self.max_degree, list(self.dims), diffs, orient, self.codec,
                                 self.field, label=self.label, finite_support=self.finite_support,
                                 meta={})

    def restrict(self, keep: dict[int, list[int]], label: str = "") -> "ChainComplexSlice":
        """Sub-complex on the given basis indices per degree (must be closed under the differentials)."""
        diffs = {}
        for k, d in self.differentials.items():
            src, dst = (k, k - 1) if self.is_chain else (k, k + 1)
            diffs[k] = d.submatrix(keep[dst], keep[src])
        dims = [len(keep[k]) for k in range(self.max_degree + 1)]
        return ChainComplexSlice(self.max_degree, dims, diffs, self.orientation, self.codec,
                                 self.field, label=label or self.label,
                                 finite_support=self.finite_support,
                                 meta={"basis": keep})


@dataclass(frozen=True)
class BettiReport:
    orientation: str
    field: str
    degrees: tuple[HomologySummary, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(h.dimension for h in self.degrees)

    def to_json(self) -> dict:
        out = {"orientation": self.orientation, "field": self.field, "dims": list(self.dims)}
        if any(h.torsion for h in self.degrees):
            out["torsion"] = [list(h.torsion) for h in self.degrees]
        return out
