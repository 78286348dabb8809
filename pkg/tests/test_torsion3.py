import pytest

from negcat import torsion3
from negcat.abelian import AbelianModel
from negcat.orbit import build_arc_model, make_params, parse_arcs
from negcat.repkit import BoundExceeded, Quiver

A2 = AbelianModel.from_quiver(Quiver.linear(2))


def test_e_levels(A65, B65):
    assert torsion3.e_level(A65) == (5, None)
    assert torsion3.e_level(B65) == (5, None)


def test_setup_with_itself_passes(A65):
    assert torsion3.check_setup(A65, A65).status == "pass"


def test_setup_rejects_far_pair(A65, m65, p65):
    other = AbelianModel.from_sms(m65, parse_arcs([(0, 6), (7, 13), (14, 20), (21, 27), (28, 34)], p65))
    rep = torsion3.check_setup(A65, other)
    assert rep.status == "fail" and rep.pair is None
    bad = {c.name: c.detail for c in rep.checks if not c.ok}
    assert bad == {"A in B*Σ^-1B*Σ^-2B": "no triangle for [(1,7)]", "B in Σ^2A*ΣA*A": "no triangle for [(0,6)]"}


def test_setup_needs_shared_category(A65):
    p = make_params(2, 3)
    m = build_arc_model(p)
    other = AbelianModel.from_sms(m, parse_arcs([(0, 2), (3, 5), (6, 8)], p))
    with pytest.raises(torsion3.SetupError):
        torsion3.check_setup(A65, other)


def test_setup_report_json(setup65):
    js = setup65.to_json()
    assert js["status"] == "pass"
    assert js["e_levels"] == {"A": 5, "B": 5}
    star = [c for c in js["checks"] if "*" in c["name"]]
    for c in star:
        for w in c["witnesses"]:
            t = w["triangle"]
            assert t["x"] == [tuple(w["object"])]
            assert set(w["first_stage"]) == {f"{a},{b}" for a, b in t["u"]}


def test_esets_json(td65):
    js = td65.to_json()
    assert js["E0"] == [[1, 7], [7, 13]]
    assert js["E2"] == [[21, 27]]
    assert all(js["identities"].values())


def test_filter_unknown_object(td65, m65):
    with pytest.raises(torsion3.SetupError):
        torsion3.filter_object(td65, [m65.parse(23, 29)])


def test_every_object_filters_uniquely(td65):
    for x in td65.A.indecs:
        part = torsion3.filter_object(td65, [x])
        found = torsion3.distinct_up_to_iso(torsion3.brute_force_filtrations(td65, [x]))
        assert [f.signature() for f in found] == [part.signature()]


def test_filter_decomposable_object(td65, m65):
    x = [m65.parse(7, 27), m65.parse(1, 7)]
    part = torsion3.filter_object(td65, x)
    assert [k.pair() for k in part.quotients[0]] == [(1, 7), (7, 13)]


def test_phi_rejects_bad_input():
    everything = A2.everything
    with pytest.raises(torsion3.AxiomError):
        torsion3.phi(A2, (everything, everything, frozenset()))
    with pytest.raises(torsion3.AxiomError):
        torsion3.phi_inv(A2, ((frozenset({(1, 1)}), frozenset()), (everything, frozenset())))


def test_nested_pair_count_a2():
    classes = torsion3.enumerate_torsion_classes(A2)
    assert len(classes) == 5
    # nested pairs T <= T2 in the lattice of torsion classes of A2
    assert len(torsion3.nested_pairs(A2)) == 13


def test_enumeration_bound():
    big = AbelianModel.from_quiver(Quiver.linear(6))
    with pytest.raises(BoundExceeded):
        torsion3.enumerate_torsion_classes(big)


def test_calibration_unique():
    cal = torsion3.calibrate_convention()
    assert cal.matches == ["anticlockwise"]
    assert cal.chosen == "anticlockwise"
    assert "clockwise" in cal.rejected
    assert all(cal.rotation_invariant.values())
