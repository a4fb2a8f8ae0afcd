from __future__ import annotations

import itertools

import pytest

from hhnerve.exactla import Q, FieldSpec
from hhnerve.fingroup import centralizer, conjugacy_classes, group_by_name, subgroup_as_group
from hhnerve.nerve import (NerveSimplex, build_adjoint_nerve, build_bar_complex,
                           build_nerve_cochains, build_one_object_nerve, build_right_nerve,
                           components, dot_one_skeleton, nerve_boundary, orbit_counts,
                           quotient_map)

F2 = FieldSpec.prime(2)


def test_delta1_is_target_minus_source():
    G = group_by_name("s3")
    n = G.order
    d1 = nerve_boundary(G, 1, Q, "adjoint")
    for a0, g in itertools.product(range(n), repeat=2):
        a1 = G.conj(g, a0)
        expect = {} if a1 == a0 else {a1: 1, a0: -1}
        assert d1.column(a0 * n + g) == expect


def test_simplex_objects_follow_arrows():
    G = group_by_name("s3")
    s = NerveSimplex(1, (2, 3))
    a0, a1, a2 = s.objects(G)
    assert a1 == G.conj(3, a0) and a2 == G.conj(2, a1)
    r = s.objects(G, "right_action")
    assert r[1] == G.mul(1, 3) and r[2] == G.mul(r[1], 2)


def face_oracle(G, kind, a0, g):
    """Faces computed from the object sequence and arrow composition, not index arithmetic."""
    k = len(g)
    s = NerveSimplex(a0, g)
    objs = s.objects(G, kind)
    arrows = list(reversed(g))  # arrows[i] goes from objs[i] to objs[i+1]
    out = []
    for i in range(k + 1):
        if i == 0:
            new_objs, new_arrows = objs[1:], arrows[1:]
        elif i == k:
            new_objs, new_arrows = objs[:-1], arrows[:-1]
        else:
            first, second = arrows[i - 1], arrows[i]
            comp = G.mul(first, second) if kind == "right_action" else G.mul(second, first)
            new_arrows = arrows[:i - 1] + [comp] + arrows[i + 1:]
            new_objs = objs[:i] + objs[i + 1:]
        out.append(((new_objs[0] if kind != "one_object" else 0), tuple(reversed(new_arrows)),
                     -1 if i % 2 else 1))
    return out


@pytest.mark.parametrize("kind", ["adjoint", "right_action", "one_object"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_faces_match_object_oracle(kind, k):
    G = group_by_name("s3")
    n = G.order
    d = nerve_boundary(G, k, Q, kind)
    n_obj = 1 if kind == "one_object" else n
    col = 0
    for a0 in range(n_obj):
        for g in itertools.product(range(n), repeat=k):
            expect = {}
            for b0, h, sgn in face_oracle(G, kind, a0, g):
                idx = b0
                for x in h:
                    idx = idx * n + x
                expect[idx] = expect.get(idx, 0) + sgn
            assert d.column(col) == {i: v for i, v in expect.items() if v}
            col += 1


def test_faces_are_simplices_of_the_groupoid():
    G = group_by_name("q8")
    for a0, g in itertools.product(range(G.order), itertools.product(range(G.order), repeat=2)):
        for b0, h, _ in face_oracle(G, "adjoint", a0, g):
            objs = NerveSimplex(b0, h).objects(G)
            assert set(objs) <= set(NerveSimplex(a0, g).objects(G))


def test_nerve_complexes_square_to_zero(corpus_group, field):
    for build in (build_adjoint_nerve, build_right_nerve, build_one_object_nerve):
        assert build(corpus_group, field, 3).composites_zero()
    assert build_nerve_cochains(corpus_group, field, 3).composites_zero()
    assert build_bar_complex(corpus_group, field, 3).composites_zero()


def test_s3_adjoint_rational():
    assert build_adjoint_nerve(group_by_name("s3"), Q, 3).betti().dims == (3, 0, 0)


def test_components_are_classes(corpus_group):
    G = corpus_group
    comps = components(build_adjoint_nerve(G, Q, 2))
    assert sorted(c.objects for c in comps) == sorted(conjugacy_classes(G).classes)


def test_s3_component_sizes():
    comps = components(build_adjoint_nerve(group_by_name("s3"), Q, 2))
    assert sorted(len(c.objects) for c in comps) == [1, 2, 3]


def test_components_match_centralizer_bar(corpus_group, field):
    G = corpus_group
    for comp in components(build_adjoint_nerve(G, field, 3)):
        C = subgroup_as_group(centralizer(G, comp.objects[0]))
        assert comp.complex.betti().dims == build_bar_complex(C, field, 3).betti().dims


def test_component_dims_add_up(corpus_group):
    G = corpus_group
    nerve = build_adjoint_nerve(G, F2, 3)
    comps = components(nerve)
    for k in range(4):
        assert sum(c.complex.dims[k] for c in comps) == nerve.dims[k]


def test_right_nerve_contractible(corpus_group, field):
    assert build_right_nerve(corpus_group, field, 3).betti().dims == (1, 0, 0)


def test_bar_complex_classical_values():
    assert build_bar_complex(group_by_name("c1"), Q, 3).betti().dims == (1, 0, 0)
    assert build_bar_complex(group_by_name("c2"), F2, 3).betti().dims == (1, 1, 1)
    assert build_bar_complex(group_by_name("q8"), Q, 3).betti().dims == (1, 0, 0)
    # H_1(Q8; F2) = (Z/2)^2, H_2(Q8; F2) has dimension 2 (H_2(Q8;Z) = 0, H_3 = Z/8)
    assert build_bar_complex(group_by_name("q8"), F2, 3).betti().dims == (1, 2, 2)


def textbook_bar(G, F, N):
    """Standard bar complex: first face drops h_1, inner face i multiplies h_i h_{i+1}."""
    from hhnerve.complexes import BasisCodec, ChainComplexSlice
    from hhnerve.exactla import SparseMatrix
    n = G.order
    enc = BasisCodec(n, lead=0).encode
    diffs = {}
    for k in range(1, N + 1):
        entries = []
        for col, h in enumerate(itertools.product(range(n), repeat=k)):
            entries.append((enc(h[1:]), col, 1))
            for i in range(1, k):
                entries.append((enc(h[:i - 1] + (G.mul(h[i - 1], h[i]),) + h[i + 1:]), col,
                                -1 if i % 2 else 1))
            entries.append((enc(h[:-1]), col, -1 if k % 2 else 1))
        diffs[k] = SparseMatrix.accumulate(n ** (k - 1), n ** k, entries, F)
    return ChainComplexSlice(N, [n ** k for k in range(N + 1)], diffs, "homological",
                             BasisCodec(n, lead=0), F)


@pytest.mark.parametrize("name", ["c2", "c3", "s3", "q8", "klein"])
@pytest.mark.parametrize("fname", ["Q", "F2", "F3"])
def test_bar_complex_agrees_with_textbook_ordering(name, fname):
    G, F = group_by_name(name), FieldSpec.parse(fname)
    ref = textbook_bar(G, F, 3)
    assert ref.composites_zero()
    assert build_bar_complex(G, F, 3).betti().dims == ref.betti().dims


def test_bg_equals_bar(corpus_group, field):
    bg = build_one_object_nerve(corpus_group, field, 3)
    bar = build_bar_complex(corpus_group, field, 3)
    for k in range(1, 4):
        assert bg.differentials[k] == bar.differentials[k]


def test_quotient_map_is_chain_map(corpus_group):
    G = corpus_group
    right = build_right_nerve(G, Q, 3)
    bg = build_one_object_nerve(G, Q, 3)
    q = {k: quotient_map(G, k, Q) for k in range(4)}
    for k in range(1, 4):
        assert q[k - 1] @ right.differentials[k] == bg.differentials[k] @ q[k]


def test_orbit_counts_free(corpus_group):
    for orbits, simplices, free in orbit_counts(corpus_group, 3):
        assert orbits == simplices and free


def test_dot_output():
    text = dot_one_skeleton(build_adjoint_nerve(group_by_name("c2"), Q, 1))
    assert text.startswith("digraph nerve {")
    assert text.count("subgraph cluster_") == 2
    assert text.count("->") == 4
