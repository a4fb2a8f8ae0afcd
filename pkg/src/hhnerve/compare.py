"""Comparison maps between the Hochschild complexes and the adjoint nerve.

On bases both maps are permutations:

    S_k : g_0 (x) g_1 (x) .. (x) g_k  ->  (a_0 = g_0 g_1 .. g_k; g_1, .., g_k)
    T_k : e^h_{g_1..g_k}              ->  dual of (a_0 = (g_1 .. g_k)^-1 h; g_1, .., g_k)

With the face conventions used here, the Hochschild face merging g_i g_{i+1}
lands on the nerve face with the mirrored index, so both maps commute with
the differentials only up to the sign (-1)^{k+1} at step k -> k+1.
Multiplying the degree-k component by eps_k, with eps_0 = 1 and
eps_{k+1} = (-1)^{k+1} eps_k, gives maps that commute on the nose.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .complexes import BasisCodec, ChainComplexSlice, DegreeOutOfRange
from .exactla import FieldSpec, NotAChainMap, SparseMatrix, induced_homology_map
from .fingroup import (FiniteGroup, centralizer, conjugacy_classes, subgroup_as_group)
from .hochschild import build_hochschild_chains, build_hochschild_cochains
from .nerve import NerveComplex, build_adjoint_nerve, build_bar_complex, build_nerve_cochains

EXHAUSTIVE_MAX_ORDER = 8
EXHAUSTIVE_MAX_DEGREE = 3
DEFAULT_SAMPLE = 2000


def law_sign(k: int) -> int:
    """(-1)^{k+1}: the sign relating the two composites at step k -> k+1."""
    return -1 if k % 2 == 0 else 1


def epsilon(k: int) -> int:
    """eps_0 = 1, eps_{k+1} = (-1)^{k+1} eps_k."""
    e = 1
    for j in range(k):
        e *= law_sign(j)
    return e


def build_S(G: FiniteGroup, k: int, F: Optional[FieldSpec] = None,
            max_degree: Optional[int] = None) -> SparseMatrix:
    """S_k : C_k(k[G]) -> C_k(BG) as a permutation matrix."""
    if k < 0 or (max_degree is not None and k > max_degree):
        raise DegreeOutOfRange(f"S_{k} requested outside 0..{max_degree}")
    F = F or FieldSpec.rationals()
    n = G.order
    codec = BasisCodec(n)
    entries = []
    for col, g in enumerate(itertools.product(range(n), repeat=k + 1)):
        a0 = G.prod(g)
        entries.append((codec.encode((a0,) + g[1:]), col, 1))
    return SparseMatrix(n ** (k + 1), n ** (k + 1), entries, F)


def build_T(G: FiniteGroup, k: int, F: Optional[FieldSpec] = None,
            max_degree: Optional[int] = None) -> SparseMatrix:
    """T_k : C^k(k[G]) -> C^k(BG) as a permutation matrix.

    T_k(f)(a_0; g) = f^h_g with h = (g_1..g_k) a_0, so the basis cochain
    e^h_g goes to the simplex with a_0 = (g_1..g_k)^-1 h.
    """
    if k < 0 or (max_degree is not None and k > max_degree):
        raise DegreeOutOfRange(f"T_{k} requested outside 0..{max_degree}")
    F = F or FieldSpec.rationals()
    n = G.order
    codec = BasisCodec(n)
    entries = []
    for col, tup in enumerate(itertools.product(range(n), repeat=k + 1)):
        h, g = tup[0], tup[1:]
        a0 = G.mul(G.inv(G.prod(g)), h)
        entries.append((codec.encode((a0,) + g), col, 1))
    return SparseMatrix(n ** (k + 1), n ** (k + 1), entries, F)


@dataclass
class ChainMap:
    """Per-degree matrices source -> target with a declared commutation sign per step.

    Homological: f_k d_source_{k+1} = sign_law[k] * d_target_{k+1} f_{k+1}.
    Cohomological: f_{k+1} d_source_k = sign_law[k] * d_target_k f_k.
    """

    source: ChainComplexSlice
    target: ChainComplexSlice
    degree_matrices: dict[int, SparseMatrix]
    sign_law: dict[int, int]
    name: str = ""

    @property
    def is_chain(self) -> bool:
        return self.source.is_chain

    def rescaled(self, eps: dict[int, int], name: str = "") -> "ChainMap":
        mats = {k: m.scale(eps[k]) for k, m in self.degree_matrices.items()}
        law = {k: s * eps[k] * eps[k + 1] for k, s in self.sign_law.items()}
        return ChainMap(self.source, self.target, mats, law, name or self.name + "~")


@dataclass
class VerificationResult:
    law: str
    degrees: list[int]
    signs: list[int]
    passed: bool
    witness: Optional[dict] = None
    exhaustive: bool = True
    induced_isomorphism: dict[int, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "degrees": list(self.degrees),
            "signs": list(self.signs),
            "passed": self.passed,
            "exhaustive": self.exhaustive,
            "witness": self.witness,
            "induced_isomorphism": {str(k): v for k, v in sorted(self.induced_isomorphism.items())},
            "notes": list(self.notes),
        }


def chain_map_S(G: FiniteGroup, F: FieldSpec, N: int = 3,
                source: Optional[ChainComplexSlice] = None,
                target: Optional[ChainComplexSlice] = None,
                sign_law: Optional[dict[int, int]] = None) -> ChainMap:
    """The family S_0..S_N; by default the law declared is the signed one."""
    source = source or build_hochschild_chains(G, F, N)
    if target is None:
        target = build_adjoint_nerve(G, F, N).complex
    elif isinstance(target, NerveComplex):
        target = target.complex
    mats = {k: build_S(G, k, F) for k in range(N + 1)}
    law = sign_law if sign_law is not None else {k: law_sign(k) for k in range(N)}
    return ChainMap(source, target, mats, law, "S")


def cochain_map_T(G: FiniteGroup, F: FieldSpec, N: int = 3,
                  source: Optional[ChainComplexSlice] = None,
                  target: Optional[ChainComplexSlice] = None,
                  sign_law: Optional[dict[int, int]] = None) -> ChainMap:
    source = source or build_hochschild_cochains(G, F, N)
    if target is None:
        target = build_nerve_cochains(G, F, N).complex
    elif isinstance(target, NerveComplex):
        target = target.complex
    mats = {k: build_T(G, k, F) for k in range(N + 1)}
    law = sign_law if sign_law is not None else {k: law_sign(k) for k in range(N)}
    return ChainMap(source, target, mats, law, "T")


def _decode_witness(cx: ChainComplexSlice, k: int, index: int) -> dict:
    return {"degree": k, "index": index, "basis": list(cx.codec.decode(index, k))}


def _sampled_columns(ncols: int, sample: int, rng: random.Random) -> list[int]:
    if ncols <= sample:
        return list(range(ncols))
    return sorted(rng.sample(range(ncols), sample))


def check_law(fmap: ChainMap, degrees: list[int], exhaustive: bool = True, seed: int = 0,
              sample: int = DEFAULT_SAMPLE) -> Optional[dict]:
    """First basis element violating the declared law, or None."""
    rng = random.Random(seed)
    src, tgt, f = fmap.source, fmap.target, fmap.degree_matrices
    for k in degrees:
        s = fmap.sign_law[k]
        if fmap.is_chain:
            # f_k d_{k+1} vs s * delta_{k+1} f_{k+1}, columns indexed by C_{k+1}(source)
            d, delta = src.differentials[k + 1], tgt.differentials[k + 1]
            lhs_map, lhs_first = f[k], d
            rhs_map, rhs_first = delta, f[k + 1]
            col_space, w_deg = src, k + 1
        else:
            # f_{k+1} d_k vs s * delta_k f_k, columns indexed by C^k(source)
            d, delta = src.differentials[k], tgt.differentials[k]
            lhs_map, lhs_first = f[k + 1], d
            rhs_map, rhs_first = delta, f[k]
            col_space, w_deg = src, k
        cols = (range(lhs_first.cols) if exhaustive
                else _sampled_columns(lhs_first.cols, sample, rng))
        for c in cols:
            left = lhs_map.apply(lhs_first.column(c))
            right = rhs_map.apply(rhs_first.column(c))
            diff = dict(left)
            for r, v in right.items():
                diff[r] = diff.get(r, 0) - s * v
            diff = {r: v for r, v in diff.items() if fmap.source.field.coerce(v) != 0}
            if diff:
                wit = _decode_witness(col_space, w_deg, c)
                r = min(diff)
                wit.update({"step": k, "sign": s, "target_index": r,
                            "target_basis": list(fmap.target.codec.decode(
                                r, k if fmap.is_chain else k + 1)),
                            "lhs": left.get(r, 0), "rhs": right.get(r, 0)})
                return wit
    return None


def induced_isomorphisms(fmap: ChainMap, degrees: list[int]) -> dict[int, bool]:
    F = fmap.source.field
    out = {}
    for k in degrees:
        out[k] = induced_homology_map(fmap.degree_matrices[k], fmap.source.full_pair(k),
                                      fmap.target.full_pair(k), F, k,
                                      fmap.source.homology_basis(k),
                                      fmap.target.homology_basis(k))[1]
    return out


def verify_chain_map(fmap: ChainMap, exhaustive: Optional[bool] = None, seed: int = 0,
                     check_isomorphism: bool = True) -> VerificationResult:
    """Check the declared law on basis chains, then require induced isomorphisms below N."""
    N = fmap.source.max_degree
    degrees = list(range(N))
    if exhaustive is None:
        exhaustive = fmap.source.dims[1] <= EXHAUSTIVE_MAX_ORDER ** 2 and N <= EXHAUSTIVE_MAX_DEGREE
    signs = [fmap.sign_law[k] for k in degrees]
    law = (f"{fmap.name}_k d_(k+1) = sign_k * delta_(k+1) {fmap.name}_(k+1)" if fmap.is_chain
           else f"{fmap.name}_(k+1) d_k = sign_k * delta_k {fmap.name}_k")
    wit = check_law(fmap, degrees, exhaustive, seed)
    res = VerificationResult(law, degrees, signs, wit is None, wit, exhaustive)
    if wit is None and check_isomorphism:
        try:
            res.induced_isomorphism = induced_isomorphisms(fmap, degrees)
        except NotAChainMap as exc:
            res.passed = False
            res.witness = exc.witness
            return res
        if not all(res.induced_isomorphism.values()):
            res.passed = False
            bad = min(k for k, v in res.induced_isomorphism.items() if not v)
            res.witness = {"degree": bad, "reason": "induced map on homology is not invertible"}
    return res


def verify_cochain_map(fmap: ChainMap, exhaustive: Optional[bool] = None, seed: int = 0,
                       check_isomorphism: bool = True) -> VerificationResult:
    return verify_chain_map(fmap, exhaustive, seed, check_isomorphism)


def strict_law(N: int) -> dict[int, int]:
    return {k: 1 for k in range(N)}


@dataclass
class ComparisonReport:
    signed: VerificationResult
    rescaled: VerificationResult
    strict_as_drawn: VerificationResult

    @property
    def passed(self) -> bool:
        return self.signed.passed and self.rescaled.passed

    def to_json(self) -> dict:
        return {"signed": self.signed.to_json(), "rescaled": self.rescaled.to_json(),
                "strict_as_drawn": self.strict_as_drawn.to_json(), "passed": self.passed}


def compare_maps(fmap: ChainMap, exhaustive: Optional[bool] = None, seed: int = 0) -> ComparisonReport:
    """Signed law with isomorphisms, the eps-rescaled strict law, and the unsigned diagram as drawn.

    The last check is informational: it records whether the undecorated
    square commutes, which fails whenever some (-1)^{k+1} = -1 step is
    nonzero over the coefficient field.
    """
    N = fmap.source.max_degree
    signed = verify_chain_map(fmap, exhaustive, seed)
    eps = {k: epsilon(k) for k in range(N + 1)}
    tilde = fmap.rescaled(eps)
    rescaled = verify_chain_map(tilde, exhaustive, seed)
    if any(s != 1 for s in tilde.sign_law.values()):
        rescaled.passed = False
        rescaled.notes.append("rescaled sign law is not strict")
    drawn = ChainMap(fmap.source, fmap.target, fmap.degree_matrices, strict_law(N), fmap.name)
    strict = verify_chain_map(drawn, exhaustive, seed, check_isomorphism=False)
    if not strict.passed:
        strict.notes.append("unsigned square fails; the signed identity holds instead")
    return ComparisonReport(signed, rescaled, strict)


@dataclass
class BurgheleaReport:
    field: str
    hh_dims: tuple[int, ...]
    per_class: list[dict]
    sum_dims: tuple[int, ...]
    equal: tuple[bool, ...]
    hh_torsion: Optional[list] = None
    sum_torsion: Optional[list] = None

    @property
    def passed(self) -> bool:
        return all(self.equal)

    def to_json(self) -> dict:
        out = {"field": self.field, "hh_dims": list(self.hh_dims), "per_class": self.per_class,
               "sum_dims": list(self.sum_dims), "equal": list(self.equal), "passed": self.passed}
        if self.hh_torsion is not None:
            out["hh_torsion"] = self.hh_torsion
            out["sum_torsion"] = self.sum_torsion
        return out


def burghelea_report(G: FiniteGroup, F: FieldSpec, N: int = 3,
                     chains: Optional[ChainComplexSlice] = None) -> BurgheleaReport:
    """HH_n(F[G]) against the sum over classes of H_n(C_G(g); F), degrees 0..N-1."""
    chains = chains or build_hochschild_chains(G, F, N)
    chains.check()
    hh = chains.betti(N - 1)
    cc = conjugacy_classes(G)
    per_class = []
    total = [0] * N
    torsion_sum: list[list[int]] = [[] for _ in range(N)]
    for rep, cls in zip(cc.representatives, cc.classes):
        C = subgroup_as_group(centralizer(G, rep))
        bar = build_bar_complex(C, F, N)
        bar.check()
        b = bar.betti(N - 1)
        per_class.append({"representative": rep, "class_size": len(cls),
                          "centralizer_order": C.order, "dims": list(b.dims)})
        for k, h in enumerate(b.degrees):
            total[k] += h.dimension
            torsion_sum[k].extend(h.torsion)
    equal = [a == b for a, b in zip(hh.dims, total)]
    hh_t = sum_t = None
    if not F.is_field:
        hh_t = [sorted(h.torsion) for h in hh.degrees]
        sum_t = [sorted(t) for t in torsion_sum]
        # torsion parts compared as multisets of invariant factors up to regrouping
        equal = [e and _same_abelian(a, b) for e, a, b in zip(equal, hh_t, sum_t)]
    return BurgheleaReport(F.name, hh.dims, per_class, tuple(total), tuple(equal), hh_t, sum_t)


def _primary_parts(factors: list[int]) -> list[int]:
    from sympy import factorint
    out = []
    for d in factors:
        out.extend(p ** e for p, e in factorint(d).items())
    return sorted(out)


def _same_abelian(a: list[int], b: list[int]) -> bool:
    return _primary_parts(a) == _primary_parts(b)


@dataclass(frozen=True)
class BensonCheck:
    order: int
    classes: int
    lhs_dim: int
    rhs_dim: int
    strict: bool
    abelian: bool

    @property
    def consistent(self) -> bool:
        return self.strict == (not self.abelian) and (self.strict or self.lhs_dim == self.rhs_dim)

    @property
    def verdict(self) -> str:
        if self.strict:
            return "strict (non-abelian)"
        return "equal (abelian)" if self.lhs_dim == self.rhs_dim else "inconsistent"

    def to_json(self) -> dict:
        return {"order": self.order, "classes": self.classes, "lhs_dim": self.lhs_dim,
                "rhs_dim": self.rhs_dim, "strict": self.strict, "abelian": self.abelian,
                "verdict": self.verdict, "passed": self.consistent}


def benson_check(G: FiniteGroup) -> BensonCheck:
    """Dimension count of the induced-module identity: (#G)^2 against #classes * #G."""
    n = G.order
    m = len(conjugacy_classes(G))
    lhs, rhs = n * n, m * n
    return BensonCheck(n, m, lhs, rhs, lhs > rhs, G.is_abelian)


def corrupt_sign(cx: ChainComplexSlice, k: int) -> ChainComplexSlice:
    """Copy of ``cx`` with the first stored entry of differential k negated (negative control)."""
    d = cx.differentials[k]
    r, c, v = d.entries()[0]
    diffs = dict(cx.differentials)
    diffs[k] = d.with_entry(r, c, -v)
    return ChainComplexSlice(cx.max_degree, list(cx.dims), diffs, cx.orientation, cx.codec,
                             cx.field, label=cx.label + f" (sign flipped in degree {k})",
                             finite_support=cx.finite_support)
