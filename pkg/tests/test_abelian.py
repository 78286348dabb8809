import itertools

import pytest
from hypothesis import given, settings, strategies as st

from negcat import repkit, torsion3
from negcat.abelian import AbelianModel, UnsupportedConfiguration, ext_quiver
from negcat.orbit import build_arc_model, make_params, parse_arcs
from negcat.repkit import Quiver

A3 = AbelianModel.from_quiver(Quiver.linear(3))


def brute_torsion_classes(am):
    """Subsets closed under quotients and extensions, checked class by class."""
    out = []
    for k in range(len(am.indecs) + 1):
        for c in itertools.combinations(am.indecs, k):
            if am.is_torsion_class(c):
                out.append(frozenset(c))
    return out


def test_from_quiver():
    assert len(A3) == 6
    assert A3.indecs == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    assert A3.hom((1, 3), (1, 1)) == 1


def test_realizations(A65, B65):
    assert len(A65) == 15 and A65.quiver.relations == ()
    assert len(B65) == 10
    assert B65.quiver.relations == ((3, 1, 2), (5, 4, 3))
    A65.check_realization()
    B65.check_realization()


def test_realized_hom_matches_arc_hom(A65, m65):
    for x in A65.indecs:
        for y in A65.indecs:
            assert repkit.hom_dim(A65.reps[x], A65.reps[y]) == m65.hom(x, y)


def test_torsion_class_counts(A65, B65):
    # any orientation of A5 has Catalan(6) torsion classes
    assert len(torsion3.enumerate_torsion_classes(A65)) == 132
    assert len(torsion3.enumerate_torsion_free_classes(A65)) == 132
    b = torsion3.enumerate_torsion_classes(B65)
    assert sorted(map(sorted, b)) == sorted(map(sorted, brute_torsion_classes(B65)))
    assert len(b) == 78


def test_torsion_classes_a3_brute():
    got = torsion3.enumerate_torsion_classes(A3)
    assert len(got) == 14
    assert set(got) == set(brute_torsion_classes(A3))


def test_layers_and_filt():
    s = {(1, 1), (2, 2), (3, 3)}
    assert A3.layers(s, 0) == frozenset()
    assert A3.layers(s, 1) == frozenset(s)
    assert (1, 2) in A3.layers(s, 2) and (1, 3) not in A3.layers(s, 2)
    assert A3.filt(s) == A3.everything


def test_gen_sub():
    assert A3.gen({(1, 3)}) == {(1, 1), (1, 2), (1, 3)}
    assert A3.sub({(1, 3)}) == {(1, 3), (2, 3), (3, 3)}


def test_find_filtration():
    f = A3.find_filtration(A3.reps[(1, 3)], {(1, 1), (2, 2), (3, 3)}, 3)
    assert f is not None and len(f.chain) == 4
    assert A3.find_filtration(A3.reps[(1, 3)], {(1, 1), (2, 2), (3, 3)}, 2) is None


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(A3.indecs), max_size=3))
def test_torsion_pair_laws_a3(s):
    t = A3.filt(A3.gen(s))
    pair = A3.torsion_pair(t)
    assert A3.is_torsion_class(t)
    assert pair.free == A3.perp_right(s)
    for x in A3.indecs:
        rad = pair.radical(A3.reps[x])
        assert A3.in_add(rad.as_rep(), pair.torsion)
        assert A3.in_add(repkit.quotient(A3.reps[x], rad), pair.free)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(A3.indecs), max_size=3), st.integers(0, 2), st.integers(0, 2))
def test_layer_composition(s, a, b):
    assert A3.layers(s, a + b) == A3.star_a(A3.layers(s, a), A3.layers(s, b))


def test_ext_quiver_rejects_cycles():
    p = make_params(1, 2)
    m = build_arc_model(p)
    # (0,1) and (2,3) extend each other in both directions, a 2-cycle
    with pytest.raises(UnsupportedConfiguration):
        ext_quiver(m, parse_arcs([(0, 1), (2, 3)], p))
