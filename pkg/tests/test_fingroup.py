from __future__ import annotations

import itertools
import json

import pytest

from hhnerve.fingroup import (CORPUS, NotAGroup, NotClosed, Subgroup, UnsupportedParameter,
                              builtin_group, centralizer, conjugacy_classes, from_cayley_table,
                              group_by_name, load_cayley_file, subgroup_as_group)


def test_c2_table():
    G = from_cayley_table([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.identity == 0
    assert G.inverses == (0, 1)


def test_identity_found_anywhere():
    # Z/3 written with identity at index 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_cayley_table(t)
    assert G.identity == 2
    assert all(G.mul(x, G.inv(x)) == 2 for x in range(3))


def test_non_associative_reports_triple():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as err:
        from_cayley_table(t)
    assert err.value.reason == "non-associative"
    x, y, z = err.value.witness
    assert t[t[x][y]][z] != t[x][t[y][z]]


@pytest.mark.parametrize("table,reason", [
    ([[0, 1], [1]], "not-square"),
    ([[0, 5], [1, 0]], "entry-out-of-range"),
    ([[1, 0], [0, 0]], "no-identity"),
    ([[0, 1, 2], [1, 1, 1], [2, 0, 1]], "missing-inverse"),
])
def test_rejections(table, reason):
    with pytest.raises(NotAGroup) as err:
        from_cayley_table(table)
    assert err.value.reason == reason


def test_repeated_row_entry_rejected():
    # identity 0, every element has an inverse, but row 1 repeats 0
    t = [[0, 1, 2, 3], [1, 0, 0, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    with pytest.raises(NotAGroup):
        from_cayley_table(t)


@pytest.mark.parametrize("name,order,classes", [
    ("c1", 1, 1), ("c5", 5, 5), ("klein", 4, 4), ("s3", 6, 3), ("d4", 8, 5), ("q8", 8, 5),
    ("s4", 24, 5), ("d5", 10, 4), ("d6", 12, 6), ("c8", 8, 8),
])
def test_builtin_orders_and_class_counts(name, order, classes):
    G = group_by_name(name)
    assert G.order == order
    assert len(conjugacy_classes(G)) == classes


def test_class_count_oracle_via_commuting_pairs():
    # k(G) = #{(x, y) : xy = yx} / |G|
    for name in CORPUS + ("s4", "d5"):
        G = group_by_name(name)
        pairs = sum(1 for x, y in itertools.product(G.elements(), repeat=2)
                    if G.mul(x, y) == G.mul(y, x))
        assert pairs % G.order == 0
        assert len(conjugacy_classes(G)) == pairs // G.order


def test_symmetric_matches_permutation_composition():
    G = builtin_group("symmetric", 3)
    perms = list(itertools.permutations(range(3)))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            composed = tuple(p[q[x]] for x in range(3))
            assert perms[G.mul(i, j)] == composed


def test_dihedral_relations():
    n = 5
    G = builtin_group("dihedral", n)
    r, s = 1, n
    assert G.prod([r] * n) == G.identity
    assert G.mul(s, s) == G.identity
    assert G.mul(G.mul(s, r), s) == G.inv(r)


def test_quaternion_relations():
    G = builtin_group("quaternion", 8)
    minus_one, i, j, k = 1, 2, 4, 6
    assert G.mul(i, i) == minus_one and G.mul(j, j) == minus_one and G.mul(k, k) == minus_one
    assert G.mul(i, j) == k
    assert not G.is_abelian


def test_unsupported_parameters():
    with pytest.raises(UnsupportedParameter):
        group_by_name("s9")
    with pytest.raises(UnsupportedParameter):
        builtin_group("cyclic", 0)
    with pytest.raises(UnsupportedParameter):
        builtin_group("symmetric", 6)


def test_orbit_stabilizer(corpus_group):
    G = corpus_group
    cc = conjugacy_classes(G)
    for rep, cls in zip(cc.representatives, cc.classes):
        assert len(cls) * centralizer(G, rep).order == G.order
    assert sum(cc.sizes) == G.order


def test_centralizer_as_group_embeds():
    G = group_by_name("s3")
    for g in G.elements():
        C = subgroup_as_group(centralizer(G, g))
        for a, b in itertools.product(range(C.order), repeat=2):
            assert C.parent_map[C.mul(a, b)] == G.mul(C.parent_map[a], C.parent_map[b])


def test_not_closed():
    G = group_by_name("s3")
    with pytest.raises(NotClosed):
        subgroup_as_group(Subgroup(G, (0, 1, 3)))


def test_load_cayley_file(tmp_path):
    p = tmp_path / "klein.json"
    p.write_text(json.dumps({"order": 4, "table": [[0, 1, 2, 3], [1, 0, 3, 2],
                                                   [2, 3, 0, 1], [3, 2, 1, 0]]}))
    G = load_cayley_file(p)
    assert G.order == 4 and G.is_abelian
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 3, "table": [[0, 1], [1, 0]]}))
    with pytest.raises(ValueError):
        load_cayley_file(bad)


def test_pinned_small_examples():
    with pytest.raises(NotAGroup):
        from_cayley_table([[0, 1], [1, 1]])
    S3 = builtin_group("symmetric", 3)
    assert sorted(conjugacy_classes(S3).sizes) == [1, 2, 3]
    assert sorted(conjugacy_classes(group_by_name("q8")).sizes) == [1, 1, 2, 2, 2]
    assert len(conjugacy_classes(builtin_group("dihedral", 4))) == 5
    three_cycle = next(x for x in S3.elements() if x != S3.identity and S3.prod([x] * 3) == S3.identity)
    assert centralizer(S3, three_cycle).order == 3
    assert centralizer(S3, S3.identity).order == 6
    C3 = subgroup_as_group(Subgroup(S3, (S3.identity, three_cycle, S3.inv(three_cycle))))
    assert C3.order == 3 and C3.is_abelian
    assert subgroup_as_group(Subgroup(S3, (S3.identity,))).order == 1
    K = group_by_name("klein")
    assert all(K.inv(x) == x for x in K.elements())
