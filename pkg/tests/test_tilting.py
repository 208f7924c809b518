import numpy as np
import pytest

from auslander.functors import endo_algebra
from auslander.io import load_indecomposables, load_module
from auslander.modcat import (ModuleError, direct_sum, injective, is_isomorphic, projective, regular, simple)
from auslander.tilting import (NotClusterTilting, c_resolution, correspondence_roundtrip, ct_candidate, fingerprint,
                               is_cluster_tilting, is_d_auslander, left_approximation, recover_ct,
                               right_approximation, sequence_is_exact)


def test_sequence_is_exact():
    assert sequence_is_exact([1, 2, 1], [1, 1])
    assert not sequence_is_exact([1, 2, 1], [1, 0])


def test_candidate_reports_missing(a3):
    cand = ct_candidate(regular(a3))
    assert cand.contains_regular and not cand.contains_cogenerator
    assert cand.missing == ["I1"]


def test_right_approximation_examples(a2, a3_ct):
    reg = regular(a2)
    ap = right_approximation(reg, simple(a2, 0))
    assert ap.indices == [1] and ap.term.dims == [1, 1]
    assert ap.map.rank() == 1
    P1 = projective(a2, 0)
    ap = right_approximation(reg, P1)
    assert is_isomorphic(ap.term, P1)
    with pytest.raises(ModuleError, match="P"):
        right_approximation(simple(a2, 0), simple(a2, 1))


def test_left_approximation_example(a2):
    ap = left_approximation(direct_sum([injective(a2, 0), injective(a2, 1)]).module, simple(a2, 1))
    assert ap.term.dims == [1, 1] and ap.map.rank() == 1
    with pytest.raises(ModuleError, match="I"):
        left_approximation(regular(a2), simple(a2, 0))


@pytest.mark.parametrize("direction", ["right", "left"])
def test_c_resolutions_a3(a3, a3_ct, direction):
    for M in load_indecomposables("a3rad2_indec", a3):
        res = c_resolution(a3_ct, M, 2, direction)
        assert res.certified and res.length <= 1


def test_c_resolution_of_s2(a3, a3_ct):
    res = c_resolution(a3_ct, simple(a3, 1), 2, "right")
    assert res.length == 1 and res.term_dims() == [2, 1]
    res = c_resolution(a3_ct, projective(a3, 0), 2, "right")
    assert res.length == 0


def test_c_resolution_d1_all_indecomposables(a2, a2_all):
    for M in (simple(a2, 0), simple(a2, 1), projective(a2, 0)):
        assert c_resolution(a2_all, M, 1).length == 0


def test_c_resolution_refutes(a3):
    X = direct_sum([projective(a3, v) for v in range(3)] + [injective(a3, 0)]).module
    with pytest.raises(NotClusterTilting):
        c_resolution(X, simple(a3, 1), 1)


def test_is_d_auslander(ss2, auslander_a2, a3_ct, kx2):
    for d in (0, 1):
        assert is_d_auslander(ss2, d).verdict is True
    assert is_d_auslander(auslander_a2.algebra, 1).verdict is True
    v = is_d_auslander(endo_algebra(a3_ct).algebra, 2)
    assert v.verdict is True and (v.gldim.value, v.domdim.value) == (3, 3)
    assert is_d_auslander(auslander_a2.algebra, 2).verdict is False
    assert is_d_auslander(kx2, 1, cutoff=2).verdict is None
    assert is_d_auslander(kx2, 1, cutoff=5).verdict is False


def test_cluster_tilting_examples(ss2, a3, a3_ct):
    assert is_cluster_tilting(regular(ss2), 1).verdict is True
    indec = load_indecomposables("a3rad2_indec", a3)
    for mode in ("criterion", "enumerated"):
        assert is_cluster_tilting(a3_ct, 2, mode, indecomposables=indec).verdict is True
    bad = load_module("a3rad2_ct_s2.mod", a3)
    for mode in ("criterion", "enumerated"):
        v = is_cluster_tilting(bad, 2, mode, indecomposables=indec)
        assert v.verdict is False and "Ext^1" in v.evidence


def test_cluster_tilting_a4(a4):
    X = load_module("a4rad2_ct.mod", a4)
    assert is_cluster_tilting(X, 3).verdict is True
    assert is_cluster_tilting(X, 2).verdict is False


def test_modes_agree_on_regular_a3(a3):
    indec = load_indecomposables("a3rad2_indec", a3)
    for d in (1, 2, 3):
        for X in (regular(a3), direct_sum(indec).module):
            a = is_cluster_tilting(X, d, "criterion").verdict
            b = is_cluster_tilting(X, d, "enumerated", indecomposables=indec).verdict
            assert a == b


def test_recover_ct_examples(ss2, a3, a2, auslander_a2, a3_ct):
    r = recover_ct(ss2, 1)
    assert r.algebra.n == 2 and r.passed and is_isomorphic(r.module, regular(r.algebra))
    r = recover_ct(auslander_a2.algebra, 1)
    assert r.algebra.n == 3 and fingerprint(r.algebra) == fingerprint(a2)
    parts = [s for s in r.summands if s.dim]
    assert len(parts) == 3 and r.module.dim == 4 and r.passed
    r = recover_ct(endo_algebra(a3_ct).algebra, 2)
    assert r.algebra.n == 5 and fingerprint(r.algebra) == fingerprint(a3)
    assert len([s for s in r.summands if s.dim]) == 4 and r.passed


def test_recover_ct_rejects_non_auslander(a2):
    with pytest.raises(ValueError):
        recover_ct(a2, 2)


def test_fingerprint_examples(ss2, a2):
    f = fingerprint(ss2)
    assert (f.vertices, f.cartan, f.ext1) == (2, ((1, 0), (0, 1)), ((0, 0), (0, 0)))
    f = fingerprint(a2)
    assert f.vertices == 2 and sorted(sum(f.cartan, ())) == [0, 1, 1, 1]
    assert sum(sum(f.ext1, ())) == 1


def test_roundtrips(ss2, a2_all, a3_ct):
    assert correspondence_roundtrip(regular(ss2), 1).passed
    r = correspondence_roundtrip(a2_all, 1)
    assert r.passed and r.gamma_dim == 5
    r = correspondence_roundtrip(a3_ct, 2)
    assert r.passed and str(r) == "PASS (Γ dim 7, fingerprint match)"


def test_roundtrip_reports_failure(a3):
    r = correspondence_roundtrip(regular(a3), 2)
    assert not r.passed and r.checks["cluster_tilting"] is False
