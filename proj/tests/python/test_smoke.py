"""Smoke tests for the python bindings."""

import json

import pytest

import ffdiamond as ffd


def test_field_arithmetic():
    gf4 = ffd.field("p=2,mod=x^2+x+1")
    g = gf4.generator()
    assert g * g == g + gf4.one()
    assert (g ** 3).is_one
    assert str(g) == "[0,1]"
    assert gf4.cardinality == 4
    assert g.mult_order() == 3
    assert g.trace_to(2).is_one
    assert g.generates(2, 2)
    assert [e.rank for e in gf4.elements()] == [0, 1, 2, 3]


def test_errors_surface_as_exceptions():
    with pytest.raises(ffd.Error):
        ffd.field("p=9")
    gf2 = ffd.field("p=2")
    with pytest.raises(ffd.Error):
        gf2.zero().inv()
    with pytest.raises(ffd.Error):
        gf2.poly("x^2+")


def test_polynomials():
    gf2 = ffd.field("p=2")
    f = gf2.poly("x^2+x+1")
    assert ffd.is_irreducible(f)
    assert not ffd.is_irreducible(gf2.poly("x^2+1"))
    gf4 = gf2.canonical_extension(2)
    roots = ffd.roots_in(f, gf4)
    assert len(roots) == 2
    assert all(f.eval(r).is_zero for r in roots)
    assert str(roots[0].minimal_polynomial(2)) == "x^2+x+1"
    assert len(ffd.all_monic_irreducibles(gf2, 3)) == ffd.irreducible_count(2, 3) == 2


def test_composed_product():
    gf2 = ffd.field("p=2")
    f = gf2.poly("x^2+x+1")
    g = gf2.poly("x^3+x+1")
    s = ffd.composed_product(f, g, ffd.DiamondOp.add())
    assert s.degree == 6
    assert ffd.is_irreducible(s)
    assert str(s) == "x^6+x^5+x^3+x^2+1"
    phi = gf2.bivar("x*y+x+y")
    p = ffd.composed_product(f, g, ffd.DiamondOp.bivar(phi))
    assert p.degree == 6


def test_weak_cancellation_ranges():
    gf2 = ffd.field("p=2")
    op = ffd.DiamondOp.bivar(gf2.bivar("x*y+x*y^2"))
    assert ffd.weak_cancellation(op, gf2, 2, 3).holds
    full = ffd.weak_cancellation(op, gf2, 2, 3, range="full")
    assert not full.holds
    assert full.cex.frobenius_shift is None


def test_checkers():
    gf2 = ffd.field("p=2")
    rep = ffd.brawley_carlitz_verify(gf2, 2, 3, ffd.DiamondOp.add())
    assert rep.equivalence_holds
    assert rep.irreducible_pairs == 2
    four = ffd.four_way_equivalence(gf2, 4, 3)
    assert four.consistent
    t = ffd.tightness_witness(gf2, 4, 3)
    assert t is not None
    assert str(t.phi) == "x^2*y+x*y"
    sweep = ffd.weak_cancellation_degree_sweep(gf2, 2, 3)
    assert sweep.all_hold and sweep.phis == 54


def test_witness_search():
    r = ffd.find_witness(2, 2, 2, strategy="exhaustive")
    assert not r.exhausted
    assert str(r.witness.f) == "x^2+x+[0,1]"
    assert ffd.witness_defects(r.witness, 2, 2, 2) == []
    w = ffd.artin_schreier_witness(3, 2)
    assert ffd.witness_defects(w, 3, 2, 3) == []
    assert ffd.binomial_witness(2, 1, 3) is None


def test_sweep_determinism():
    a = ffd.verify_range(500, shards=1)
    b = ffd.verify_range(500, shards=3)
    assert a.exhausted_count == 0
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["schema_version"] == 1
    assert doc["tasks"] == len(doc["rows"])
    assert [t[:1] for t in ffd.enumerate_tasks(4)] == [(2,), (2,)]
