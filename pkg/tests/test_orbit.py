import pytest
from hypothesis import given, settings, strategies as st

from negcat import orbit
from negcat.orbit import ArcError, build_arc_model, make_params

PARAMS = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (6, 5)]


@pytest.mark.parametrize("w,n", PARAMS)
def test_arc_count(w, n):
    p = make_params(w, n)
    assert p.N == (w + 1) * (n + 1) - 2
    assert len(orbit.admissible_arcs(p)) == p.N * n // 2


def test_bad_arcs():
    p = make_params(6, 5)
    with pytest.raises(ArcError):
        orbit.Arc(1, 8, p)
    with pytest.raises(ArcError):
        orbit.Arc(7, 1, p)
    with pytest.raises(ArcError):
        orbit.Arc(0, 40, p)
    with pytest.raises(orbit.ParamError):
        make_params(0, 3)


def test_w1_keeps_edges():
    p = make_params(1, 2)
    assert orbit.Arc(0, 1, p).pair() == (0, 1)


@pytest.mark.parametrize("w,n", PARAMS)
def test_model_invariants(w, n):
    m = build_arc_model(make_params(w, n))
    assert sorted(m.arcs) == orbit.admissible_arcs(m.params)
    for x in m.arcs:
        # F = Σ^{w+1} τ acts trivially on objects
        assert m.shift(m.tau_on_arcs[x], w + 1) == x
        assert m.tau_on_arcs[x] == x.rotate(-(w + 1))
        assert m.hom(x, x) >= 1
        assert m.to_arc(m.lift[x]) == x


@pytest.mark.parametrize("w,n", PARAMS)
def test_calabi_yau(w, n):
    m = build_arc_model(make_params(w, n))
    for x in m.arcs:
        assert m.serre(x) == m.shift(x, -w)
        for y in m.arcs:
            assert m.hom(x, y) == m.hom(y, m.serre(x))


@pytest.mark.parametrize("w,n", [(2, 3), (6, 5)])
def test_rotation_symmetry(w, n):
    m = build_arc_model(make_params(w, n))
    for x in m.arcs:
        assert m.shift(x.rotate(1), 1) == m.shift(x, 1).rotate(1)
        for y in m.arcs[:20]:
            assert m.hom(x, y) == m.hom(x.rotate(1), y.rotate(1))


def test_mesh_positions_distinct():
    m = build_arc_model(make_params(6, 5))
    pos = {m.mesh_position(x) for x in m.arcs}
    assert len(pos) == len(m.arcs)


def test_middle_terms_errors():
    m = build_arc_model(make_params(6, 5))
    a = m.parse
    with pytest.raises(orbit.NoExtensionError):
        m.middle_terms(a(7, 13), a(7, 13))


def test_star_class_needs_orthogonality():
    m = build_arc_model(make_params(6, 5))
    x = m.parse(7, 13)
    with pytest.raises(orbit.Inconclusive):
        m.star_class([x], [x])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_star_witness_is_a_triangle(data):
    m = build_arc_model(make_params(2, 3))
    us = data.draw(st.sets(st.sampled_from(m.arcs), max_size=3))
    vs = data.draw(st.sets(st.sampled_from(m.arcs), max_size=3))
    if m.hom_obj(us, vs):
        return
    for x, wit in m.star_class(us, vs).items():
        assert set(wit.u) <= us and set(wit.v) <= vs and wit.x == (x,)
    for u in us:
        assert u in m.star_class(us, vs)


def test_crossing_and_endpoints():
    p = make_params(6, 5)
    a = lambda i, j: orbit.Arc(i, j, p)  # noqa: E731
    assert orbit.crosses(a(1, 14), a(7, 20))
    assert not orbit.crosses(a(1, 14), a(1, 7))
    assert orbit.shares_endpoint(a(1, 14), a(1, 7))
    assert orbit.is_sms([a(1, 7)], p) == (False, "size 1 != n = 5")


def test_conventions_differ():
    p = make_params(6, 5)
    anti = build_arc_model(p, "anticlockwise")
    clock = build_arc_model(p, "clockwise")
    assert anti.tau_step == -7 and clock.tau_step == 7
    with pytest.raises(orbit.ModelConventionError):
        build_arc_model(p, "sideways")


@pytest.mark.parametrize("w,n", [(2, 3), (6, 5)])
def test_hom_window_is_wide_enough(w, n):
    from negcat import derived

    m = build_arc_model(make_params(w, n))
    for x in m.arcs:
        xl = m.lift[x]
        for y in m.arcs:
            wide = m.translates(m.lift[y], xl.shift - 2 * (w + 2), xl.shift + 1 + 2 * (w + 2))
            assert sum(derived.hom_dim_db(xl, t) for t in wide) == m.hom(x, y)
