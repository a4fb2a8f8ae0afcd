"""Nerves of the groupoids attached to a finite group, and bar complexes.

A k-simplex is stored as (a_0; g_1, ..., g_k) with arrows

    a_0 --g_k--> a_1 --g_{k-1}--> ... --g_1--> a_k

so the arrow leaving a_0 carries the last label. The remaining objects are
recomputed on demand:

* adjoint groupoid:  a_{j+1} = g_{k-j} a_j g_{k-j}^-1
* right-action:      a_{j+1} = a_j g_{k-j}
* one object (BG):   a single object 0

Face i of a k-simplex drops a_i. Face 0 carries sign +1, the inner faces
compose the two arrows at a_i with sign (-1)^i, and face k drops a_k with
sign (-1)^k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .complexes import BasisCodec, ChainComplexSlice, check_budget
from .exactla import FieldSpec, SparseMatrix
from .fingroup import FiniteGroup, centralizer, conjugacy_classes, subgroup_as_group

KINDS = ("adjoint", "right_action", "one_object")


@dataclass(frozen=True)
class NerveSimplex:
    a0: int
    labels: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.labels)

    def objects(self, G: FiniteGroup, kind: str = "adjoint") -> tuple[int, ...]:
        """(a_0, ..., a_k) along the arrows."""
        out = [self.a0]
        a = self.a0
        for g in reversed(self.labels):
            a = _act(G, kind, a, g)
            out.append(a)
        return tuple(out)


def _act(G: FiniteGroup, kind: str, a: int, g: int) -> int:
    if kind == "adjoint":
        return G.conj(g, a)
    if kind == "right_action":
        return G.mul(a, g)
    return a


def nerve_boundary(G: FiniteGroup, k: int, F: FieldSpec, kind: str = "adjoint") -> SparseMatrix:
    """delta_k : C_k -> C_{k-1} on simplices (a_0; g_1..g_k)."""
    n = G.order
    t = G.cayley
    inv = G.inverses
    n_obj = 1 if kind == "one_object" else n
    codec = BasisCodec(n)
    entries = []
    col = 0
    for a0 in range(n_obj):
        for g in itertools.product(range(n), repeat=k):
            last = g[k - 1]
            if kind == "adjoint":
                a1 = t[t[last][a0]][inv[last]]
            elif kind == "right_action":
                a1 = t[a0][last]
            else:
                a1 = 0
            entries.append((codec.encode((a1,) + g[:k - 1]), col, 1))
            for j in range(1, k):
                p = k - j - 1  # 0-based position of g_{k-j}
                if kind == "right_action":
                    m = t[g[p + 1]][g[p]]
                else:
                    m = t[g[p]][g[p + 1]]
                face = g[:p] + (m,) + g[p + 2:]
                entries.append((codec.encode((a0,) + face), col, -1 if j % 2 else 1))
            entries.append((codec.encode((a0,) + g[1:]), col, -1 if k % 2 else 1))
            col += 1
    return SparseMatrix.accumulate(n_obj * n ** (k - 1), n_obj * n ** k, entries, F)


@dataclass
class NerveComplex:
    complex: ChainComplexSlice
    groupoid_kind: str
    group: FiniteGroup = field(repr=False)
    component_of: Optional[tuple[int, ...]] = None

    @property
    def dims(self) -> list[int]:
        return self.complex.dims

    def __getattr__(self, name):
        # delegate ChainComplexSlice behaviour (pair, homology, betti, ...)
        if name in ("complex", "__setstate__"):
            raise AttributeError(name)
        return getattr(self.complex, name)

    def simplex(self, index: int, k: int) -> NerveSimplex:
        digits = self.complex.codec.decode(index, k)
        return NerveSimplex(digits[0], digits[1:])


def _build_nerve(G: FiniteGroup, F: FieldSpec, N: int, kind: str,
                 budget: Optional[float]) -> NerveComplex:
    if kind not in KINDS:
        raise ValueError(f"unknown groupoid kind {kind!r}")
    check_budget(G.order, N, budget)
    n = G.order
    n_obj = 1 if kind == "one_object" else n
    diffs = {k: nerve_boundary(G, k, F, kind) for k in range(1, N + 1)}
    codec = BasisCodec(n, lead=1, lead_radix=n_obj)
    cx = ChainComplexSlice(N, [n_obj * n ** k for k in range(N + 1)], diffs, "homological", codec,
                           F, label=f"{kind} nerve of {G.label}")
    comp = conjugacy_classes(G).class_of if kind == "adjoint" else None
    return NerveComplex(cx, kind, G, comp)


def build_adjoint_nerve(G: FiniteGroup, F: FieldSpec, N: int = 3,
                        budget: Optional[float] = None) -> NerveComplex:
    return _build_nerve(G, F, N, "adjoint", budget)


def build_right_nerve(G: FiniteGroup, F: FieldSpec, N: int = 3,
                      budget: Optional[float] = None) -> NerveComplex:
    """Nerve of the groupoid with Mor(a, b) = {x : ax = b}."""
    return _build_nerve(G, F, N, "right_action", budget)


def build_one_object_nerve(G: FiniteGroup, F: FieldSpec, N: int = 3,
                           budget: Optional[float] = None) -> NerveComplex:
    return _build_nerve(G, F, N, "one_object", budget)


def build_nerve_cochains(G: FiniteGroup, F: FieldSpec, N: int = 3, kind: str = "adjoint",
                         chains: Optional[NerveComplex] = None,
                         budget: Optional[float] = None) -> NerveComplex:
    """Cochains on the nerve: the transpose complex, coboundary C^k -> C^{k+1} for k < N.

    Cochains are arbitrary functions on simplices; for a finite group every
    cochain has finite support, which the ``finite_support`` flag records.
    """
    chains = chains or _build_nerve(G, F, N, kind, budget)
    co = chains.complex.transpose()
    co.label = f"cochains on {chains.complex.label}"
    co.finite_support = True
    return NerveComplex(co, chains.groupoid_kind, G, chains.component_of)


def build_bar_complex(H: FiniteGroup, F: FieldSpec, N: int = 3,
                      budget: Optional[float] = None) -> ChainComplexSlice:
    """Bar complex computing H_*(H; F) with trivial coefficients.

    Degree k has the k-tuples (h_1..h_k) as basis, written in the same arrow
    order as the nerve: the first face drops h_k, inner face j multiplies
    h_{k-j} h_{k-j+1}, and the last face drops h_1.
    """
    check_budget(H.order, N, budget)
    n = H.order
    t = H.cayley
    codec = BasisCodec(n, lead=0)
    diffs = {}
    for k in range(1, N + 1):
        entries = []
        for col, h in enumerate(itertools.product(range(n), repeat=k)):
            entries.append((codec.encode(h[:k - 1]), col, 1))
            for j in range(1, k):
                p = k - j - 1
                entries.append((codec.encode(h[:p] + (t[h[p]][h[p + 1]],) + h[p + 2:]), col,
                                -1 if j % 2 else 1))
            entries.append((codec.encode(h[1:]), col, -1 if k % 2 else 1))
        diffs[k] = SparseMatrix.accumulate(n ** (k - 1), n ** k, entries, F)
    return ChainComplexSlice(N, [n ** k for k in range(N + 1)], diffs, "homological", codec, F,
                             label=f"bar({H.label})")


@dataclass
class Component:
    class_id: int
    objects: tuple[int, ...]
    complex: ChainComplexSlice


def _union_find_components(nerve: NerveComplex) -> list[tuple[int, ...]]:
    n = nerve.group.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    d1 = nerve.complex.differentials[1] if nerve.complex.is_chain else nerve.complex.differentials[0].T
    for c in range(d1.cols):
        s = nerve.simplex(c, 1)
        a0, a1 = s.objects(nerve.group, nerve.groupoid_kind)
        ra, rb = find(a0), find(a1)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(v) for v in groups.values())


def components(nerve: NerveComplex) -> list[Component]:
    """Connected components of the adjoint nerve with their restricted complexes."""
    if nerve.groupoid_kind != "adjoint":
        raise ValueError("components() applies to the adjoint nerve")
    G = nerve.group
    parts = _union_find_components(nerve)
    cc = conjugacy_classes(G)
    if sorted(parts) != sorted(cc.classes):
        raise AssertionError(f"components {parts} differ from conjugacy classes {cc.classes}")
    n = G.order
    cx = nerve.complex
    out = []
    for objs in parts:
        # a simplex lies in the component of its first object; its index block is a0 * n^k
        keep = {k: [a * n ** k + r for a in objs for r in range(n ** k)]
                for k in range(cx.max_degree + 1)}
        sub = cx.restrict(keep, label=f"{cx.label} component {objs}")
        out.append(Component(cc.class_of[objs[0]], objs, sub))
    return out


def centralizer_bar_complex(G: FiniteGroup, g: int, F: FieldSpec, N: int = 3) -> ChainComplexSlice:
    return build_bar_complex(subgroup_as_group(centralizer(G, g)), F, N)


def quotient_map(G: FiniteGroup, k: int, F: FieldSpec) -> SparseMatrix:
    """Chain map from the right-action nerve to the one-object nerve.

    (a_0; g_1..g_k) goes to (g_1^-1, ..., g_k^-1); it is constant on orbits
    of a_0 -> x a_0, so it realizes BG as the orbit space of the right nerve.
    """
    n = G.order
    inv = G.inverses
    codec = BasisCodec(n)
    entries = []
    col = 0
    for a0 in range(n):
        for g in itertools.product(range(n), repeat=k):
            entries.append((codec.encode(tuple(inv[x] for x in g)), col, 1))
            col += 1
    return SparseMatrix(n ** k, n ** (k + 1), entries, F)


def orbit_counts(G: FiniteGroup, N: int) -> list[tuple[int, int, bool]]:
    """Per degree: (#orbits of left translation on right-nerve simplices, #BG simplices, free)."""
    n = G.order
    out = []
    for k in range(N + 1):
        seen = set()
        orbits = 0
        free = True
        for a0 in range(n):
            for g in itertools.product(range(n), repeat=k):
                if (a0, g) in seen:
                    continue
                orbit = {(G.mul(x, a0), g) for x in range(n)}
                free &= len(orbit) == n
                seen |= orbit
                orbits += 1
        out.append((orbits, n ** k, free))
    return out


def dot_one_skeleton(nerve: NerveComplex) -> str:
    """Graphviz DOT for the 1-skeleton of the adjoint nerve, one cluster per component."""
    G = nerve.group
    lines = ["digraph nerve {"]
    for ci, objs in enumerate(_union_find_components(nerve)):
        lines.append(f"  subgraph cluster_{ci} {{")
        lines.append(f'    label="class {ci}";')
        for a in objs:
            lines.append(f'    n{a} [label="{G.name_of(a)}"];')
        lines.append("  }")
    for a in range(G.order):
        for g in range(G.order):
            b = _act(G, nerve.groupoid_kind, a, g)
            lines.append(f'  n{a} -> n{b} [label="{G.name_of(g)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
