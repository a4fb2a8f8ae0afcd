"""Hochschild chain and cochain complexes of a group algebra k[G].

Both complexes are unnormalized. A degree-k chain basis element is a tensor
g_0 (x) g_1 (x) ... (x) g_k; a degree-k cochain basis element is the
multilinear map e^h_{g_1..g_k} sending (g_1, ..., g_k) to h and every other
basis tuple to 0. Tuples are encoded in mixed radix |G|, leading factor
(g_0 or h) most significant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .complexes import (BasisCodec, BettiReport, ChainComplexSlice, check_budget)
from .exactla import FieldSpec, SparseMatrix, rank
from .fingroup import FiniteGroup, conjugacy_classes

DEFAULT_MAX_DEGREE = 3


@dataclass(frozen=True)
class CochainCoefficient:
    """Basis cochain e^h_{g_1..g_k}."""

    h: int
    args: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.args)

    def index(self, order: int) -> int:
        return BasisCodec(order).encode((self.h,) + self.args)

    @classmethod
    def from_index(cls, index: int, k: int, order: int) -> "CochainCoefficient":
        digits = BasisCodec(order).decode(index, k)
        return cls(digits[0], digits[1:])


def hochschild_boundary(G: FiniteGroup, k: int, F: FieldSpec) -> SparseMatrix:
    """d_k : C_k -> C_{k-1}.

    d_k(g_0 (x) ... (x) g_k) = sum_{i<k} (-1)^i g_0 (x) .. (x) g_i g_{i+1} (x) .. (x) g_k
                               + (-1)^k g_k g_0 (x) g_1 (x) .. (x) g_{k-1}
    """
    n = G.order
    t = G.cayley
    codec = BasisCodec(n)
    entries = []
    for col, g in enumerate(itertools.product(range(n), repeat=k + 1)):
        for i in range(k):
            face = g[:i] + (t[g[i]][g[i + 1]],) + g[i + 2:]
            entries.append((codec.encode(face), col, -1 if i % 2 else 1))
        face = (t[g[k]][g[0]],) + g[1:k]
        entries.append((codec.encode(face), col, -1 if k % 2 else 1))
    return SparseMatrix.accumulate(n ** k, n ** (k + 1), entries, F)


def hochschild_coboundary(G: FiniteGroup, k: int, F: FieldSpec) -> SparseMatrix:
    """The coboundary C^k -> C^{k+1} on basis cochains.

    For a target tuple (h; g_1..g_{k+1}) the coefficient of d(f) picks up
    f^{g_1^-1 h}_{g_2..g_{k+1}}, the merged terms (-1)^j f^h_{..g_j g_{j+1}..}
    and (-1)^{k+1} f^{h g_{k+1}^-1}_{g_1..g_k}.
    """
    n = G.order
    t = G.cayley
    inv = G.inverses
    codec = BasisCodec(n)
    entries = []
    last_sign = -1 if (k + 1) % 2 else 1
    for row, tup in enumerate(itertools.product(range(n), repeat=k + 2)):
        h, g = tup[0], tup[1:]
        entries.append((row, codec.encode((t[inv[g[0]]][h],) + g[1:]), 1))
        for j in range(1, k + 1):
            merged = g[:j - 1] + (t[g[j - 1]][g[j]],) + g[j + 1:]
            entries.append((row, codec.encode((h,) + merged), -1 if j % 2 else 1))
        entries.append((row, codec.encode((t[h][inv[g[k]]],) + g[:k]), last_sign))
    return SparseMatrix.accumulate(n ** (k + 2), n ** (k + 1), entries, F)


def build_hochschild_chains(G: FiniteGroup, F: FieldSpec, N: int = DEFAULT_MAX_DEGREE,
                            budget: Optional[float] = None) -> ChainComplexSlice:
    check_budget(G.order, N, budget)
    n = G.order
    diffs = {k: hochschild_boundary(G, k, F) for k in range(1, N + 1)}
    return ChainComplexSlice(N, [n ** (k + 1) for k in range(N + 1)], diffs, "homological",
                             BasisCodec(n), F, label=f"HC_*({F}[{G.label}])")


def build_hochschild_cochains(G: FiniteGroup, F: FieldSpec, N: int = DEFAULT_MAX_DEGREE,
                              budget: Optional[float] = None) -> ChainComplexSlice:
    check_budget(G.order, N, budget)
    n = G.order
    diffs = {k: hochschild_coboundary(G, k, F) for k in range(N)}
    # every cochain of a finite group has finitely supported coefficients
    return ChainComplexSlice(N, [n ** (k + 1) for k in range(N + 1)], diffs, "cohomological",
                             BasisCodec(n), F, label=f"HC^*({F}[{G.label}])",
                             finite_support=True)


def hh_report(G: FiniteGroup, F: FieldSpec, N: int = DEFAULT_MAX_DEGREE,
              chains: Optional[ChainComplexSlice] = None,
              cochains: Optional[ChainComplexSlice] = None) -> tuple[BettiReport, BettiReport]:
    """Hochschild homology and cohomology dimensions in degrees 0..N-1."""
    chains = chains or build_hochschild_chains(G, F, N)
    cochains = cochains or build_hochschild_cochains(G, F, N)
    chains.check()
    cochains.check()
    return chains.betti(N - 1), cochains.betti(N - 1)


@dataclass(frozen=True)
class DerivationReport:
    dim_der: int
    dim_int: int
    dim_out: int
    hh1_dim: int
    center_dim: int

    @property
    def consistent(self) -> bool:
        return self.dim_out == self.dim_der - self.dim_int and self.dim_out == self.hh1_dim

    def to_json(self) -> dict:
        return {"dim_der": self.dim_der, "dim_int": self.dim_int, "dim_out": self.dim_out,
                "hh1_dim": self.hh1_dim, "consistent": self.consistent}


def leibniz_system(G: FiniteGroup, F: FieldSpec) -> SparseMatrix:
    """Rows: coefficient y of D(gh) - D(g)h - gD(h); columns: unknowns D(g)^x at g*n + x."""
    n = G.order
    t = G.cayley
    inv = G.inverses
    entries = []
    row = 0
    for g in range(n):
        for h in range(n):
            gh = t[g][h]
            for y in range(n):
                entries.append((row, gh * n + y, 1))
                entries.append((row, g * n + t[y][inv[h]], -1))
                entries.append((row, h * n + t[inv[g]][y], -1))
                row += 1
    return SparseMatrix.accumulate(n ** 3, n * n, entries, F)


def inner_derivation_map(G: FiniteGroup, F: FieldSpec) -> SparseMatrix:
    """x -> ad_x, with ad_x(g) = xg - gx written in the D(g)^y coordinates."""
    n = G.order
    t = G.cayley
    entries = []
    for x in range(n):
        for g in range(n):
            entries.append((g * n + t[x][g], x, 1))
            entries.append((g * n + t[g][x], x, -1))
    return SparseMatrix.accumulate(n * n, n, entries, F)


def derivations_report(G: FiniteGroup, F: FieldSpec,
                       cochains: Optional[ChainComplexSlice] = None) -> DerivationReport:
    """Der, Int and Out of k[G] from the Leibniz system, cross-checked against HH^1."""
    n = G.order
    dim_der = n * n - rank(leibniz_system(G, F), F)
    dim_int = rank(inner_derivation_map(G, F), F)
    center_dim = len(conjugacy_classes(G))
    if dim_int != n - center_dim:
        raise AssertionError(f"rank of ad is {dim_int}, expected |G| - #classes = {n - center_dim}")
    if cochains is None or cochains.max_degree < 2:
        cochains = build_hochschild_cochains(G, F, 2)
    hh1 = cochains.homology(1, F).dimension
    return DerivationReport(dim_der, dim_int, dim_der - dim_int, hh1, center_dim)
