"""Acceptance criteria, one test per criterion.

Run with ``pytest -v tests/test_acceptance.py``; each criterion shows up as
a single PASSED or FAILED line.
"""

from __future__ import annotations

import json
import subprocess
import sys
import time

from hhnerve.compare import (benson_check, burghelea_report, chain_map_S, cochain_map_T,
                             compare_maps, corrupt_sign, strict_law, verify_chain_map,
                             verify_cochain_map)
from hhnerve.exactla import FieldSpec
from hhnerve.fingroup import CORPUS, centralizer, conjugacy_classes, group_by_name, subgroup_as_group
from hhnerve.hochschild import (build_hochschild_chains, build_hochschild_cochains,
                                derivations_report)
from hhnerve.nerve import (build_adjoint_nerve, build_bar_complex, build_nerve_cochains,
                           build_one_object_nerve, build_right_nerve, components)

N = 3
FIELDS = [FieldSpec.parse(f) for f in ("Q", "F2", "F3")]
CASES = [(name, F) for name in CORPUS for F in FIELDS]


def cli(*args):
    return subprocess.run([sys.executable, "-m", "hhnerve", *args], capture_output=True,
                          check=False)


def test_criterion_1_complex_sanity_under_60s():
    t0 = time.perf_counter()
    bad = []
    for name, F in CASES:
        G = group_by_name(name)
        adj = build_adjoint_nerve(G, F, N)
        for cx in (build_hochschild_chains(G, F, N), build_hochschild_cochains(G, F, N),
                   adj.complex, build_nerve_cochains(G, F, N, chains=adj).complex):
            if not cx.composites_zero():
                bad.append((name, F.name, cx.label))
    elapsed = time.perf_counter() - t0
    assert not bad, bad
    assert elapsed < 60, f"{elapsed:.1f} s"


def test_criterion_2_burghelea_dimensions():
    bad = []
    for name, F in CASES:
        r = burghelea_report(group_by_name(name), F, N)
        if not r.passed:
            bad.append((name, F.name, r.hh_dims, r.sum_dims))
    assert not bad, bad
    assert burghelea_report(group_by_name("s3"), FIELDS[0], N).hh_dims == (3, 0, 0)
    assert burghelea_report(group_by_name("c2"), FIELDS[1], N).hh_dims == (2, 2, 2)


def test_criterion_3_benson_count():
    for name in CORPUS:
        b = benson_check(group_by_name(name))
        if b.abelian:
            assert b.lhs_dim == b.rhs_dim, name
        else:
            assert b.lhs_dim > b.rhs_dim, name
    s3, q8 = benson_check(group_by_name("s3")), benson_check(group_by_name("q8"))
    assert (s3.lhs_dim, s3.rhs_dim) == (36, 18)
    assert (q8.lhs_dim, q8.rhs_dim) == (64, 40)


def test_criterion_4_chain_map_strict_square_and_isomorphism():
    """S_k d_{k+1} = delta_{k+1} S_{k+1} with no sign, exhaustively, plus invertible H_0..H_2."""
    failures = []
    for name, F in CASES:
        G = group_by_name(name)
        fmap = chain_map_S(G, F, N, sign_law=strict_law(N))
        law = verify_chain_map(fmap, exhaustive=True, check_isomorphism=False)
        iso = verify_chain_map(chain_map_S(G, F, N), exhaustive=True)
        if not law.passed or not all(iso.induced_isomorphism.get(k, False) for k in range(N)):
            failures.append((name, F.name, law.witness,
                             {k: iso.induced_isomorphism.get(k) for k in range(N)}))
    assert not failures, f"{len(failures)} of {len(CASES)} cases fail; first: {failures[0]}"


def test_criterion_5_cochain_map_signed_law():
    bad = []
    for name, F in CASES:
        r = compare_maps(cochain_map_T(group_by_name(name), F, N), exhaustive=True)
        ok = (r.signed.passed and r.signed.exhaustive and r.signed.signs == [-1, 1, -1]
              and r.rescaled.passed
              and all(r.signed.induced_isomorphism[k] for k in range(N)))
        if not ok:
            bad.append((name, F.name, r.signed.witness, r.rescaled.witness))
    assert not bad, bad


def test_criterion_6_derivations_match_hh1():
    for name, F in CASES:
        rep = derivations_report(group_by_name(name), F)
        assert rep.dim_out == rep.hh1_dim, (name, F.name)
        if F.name == "Q":
            assert rep.dim_out == 0 and rep.hh1_dim == 0, name
    c2 = derivations_report(group_by_name("c2"), FIELDS[1])
    assert c2.dim_out == c2.hh1_dim == 2


def test_criterion_7_classifying_spaces():
    for name, F in CASES:
        G = group_by_name(name)
        comps = components(build_adjoint_nerve(G, F, N))
        assert len(comps) == len(conjugacy_classes(G)), name
        for comp in comps:
            C = subgroup_as_group(centralizer(G, comp.objects[0]))
            assert comp.complex.betti().dims == build_bar_complex(C, F, N).betti().dims, (name, F.name)
        assert build_right_nerve(G, F, N).betti().dims == (1, 0, 0), (name, F.name)
        bg, bar = build_one_object_nerve(G, F, N), build_bar_complex(G, F, N)
        for k in range(1, N + 1):
            assert bg.differentials[k] == bar.differentials[k], (name, F.name, k)


def test_criterion_8_byte_identical_json():
    for args in (("--group", "s3", "--field", "Q"), ("--group", "q8", "--field", "F2")):
        cmd = ("full-report", *args, "--max-degree", "3", "--format", "json")
        a, b = cli(*cmd), cli(*cmd)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout and a.stdout


def test_criterion_9_negative_control():
    G = group_by_name("s3")
    F = FIELDS[0]
    target = corrupt_sign(build_adjoint_nerve(G, F, N).complex, 2)
    res = verify_chain_map(chain_map_S(G, F, N, target=target), exhaustive=True)
    assert not res.passed and res.witness is not None
    proc = cli("compare", "--group", "s3", "--corrupt-sign", "2", "--format", "json")
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["compare"]["S"]["signed"]["witness"] is not None
    # the cochain side catches a corrupted coboundary the same way
    T = cochain_map_T(G, F, N)
    T.target = corrupt_sign(T.target, 1)
    assert not verify_cochain_map(T, exhaustive=True).passed

