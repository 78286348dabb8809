import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from negcat import repkit
from negcat.repkit import Quiver, Rep


def brute_morphisms(m: Rep, n: Rep) -> int:
    """Count F2-morphisms by trying every tuple of matrices."""
    q = m.quiver
    shapes = [(n.dims[v - 1], m.dims[v - 1]) for v in q.vertices]
    total = sum(r * c for r, c in shapes)
    count = 0
    for bits in itertools.product((0, 1), repeat=total):
        phi, k = [], 0
        for r, c in shapes:
            phi.append(np.array(bits[k:k + r * c], dtype=np.uint8).reshape(r, c))
            k += r * c
        count += repkit.is_morphism(m, n, phi)
    return count


QUIVERS = [
    Quiver.linear(2),
    Quiver.linear(3),
    Quiver(3, ((2, 1), (2, 3))),
    Quiver(3, ((1, 2), (3, 2))),
]


@st.composite
def small_rep(draw, q=None, max_total=3):
    q = draw(st.sampled_from(QUIVERS)) if q is None else q
    dims = draw(st.lists(st.integers(0, 2), min_size=q.vertex_count, max_size=q.vertex_count)
                .filter(lambda d: sum(d) <= max_total))
    maps = []
    for s, t in q.arrows:
        r, c = dims[t - 1], dims[s - 1]
        bits = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
        maps.append(np.array(bits, dtype=np.uint8).reshape(r, c))
    return Rep(q, tuple(dims), tuple(maps))


@st.composite
def rep_pair(draw):
    q = draw(st.sampled_from(QUIVERS))
    return draw(small_rep(q)), draw(small_rep(q))


def test_rank_and_nullspace_small():
    a = repkit.f2([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert repkit.rank(a) == 2
    ns = repkit.nullspace(a)
    assert ns.shape[1] == 1
    assert not repkit.mul(a, ns).any()


@given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    a = repkit.f2(rows)
    assert repkit.rank(a) + repkit.nullspace(a).shape[1] == a.shape[1]


@given(st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_solve(rows, x):
    a = repkit.f2(rows)
    b = repkit.mul(a, repkit.f2(x).reshape(3, 1))
    y = repkit.solve(a, b)
    assert (repkit.mul(a, y) == b).all()


@settings(max_examples=60, deadline=None)
@given(rep_pair())
def test_hom_dim_matches_brute_force(pair):
    m, n = pair
    assert 2 ** repkit.hom_dim(m, n) == brute_morphisms(m, n)


@settings(max_examples=60, deadline=None)
@given(rep_pair())
def test_euler_form(pair):
    m, n = pair
    assert repkit.hom_dim(m, n) - repkit.ext1_dim(m, n) == repkit.euler_form(m.quiver, m.dims, n.dims)


@settings(max_examples=40, deadline=None)
@given(rep_pair())
def test_cocycle_ext_agrees_with_euler(pair):
    m, n = pair
    assert repkit._ext1_cocycles(m, n) == repkit.ext1_dim(m, n)


def test_intervals_of_linear_quiver():
    q = Quiver.linear(3)
    assert repkit.intervals(q) == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    for i, j in repkit.intervals(q):
        assert repkit.is_indecomposable(repkit.interval_rep(q, i, j))


def test_bound_quiver_drops_long_intervals():
    q = Quiver(3, ((1, 2), (2, 3)), relations=((1, 2, 3),))
    assert repkit.intervals(q) == [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]
    with pytest.raises(repkit.RepError):
        repkit.interval_rep(q, 1, 3)
    s1, s3 = repkit.interval_rep(q, 1, 1), repkit.interval_rep(q, 3, 3)
    # the relation kills the path, so S1 and S3 only meet in Ext^2
    assert repkit.ext1_dim(s1, s3) == 0 and repkit.ext1_dim(s3, s1) == 0
    assert repkit.ext1_dim(s1, repkit.interval_rep(q, 2, 2)) == 1


def test_relations_are_validated():
    with pytest.raises(repkit.RepError):
        Quiver(3, ((1, 2),), relations=((1, 2, 3),))
    q = Quiver(3, ((1, 2), (2, 3)), relations=((1, 2, 3),))
    with pytest.raises(repkit.RepError):
        Rep(q, (1, 1, 1), (repkit.f2([[1]]), repkit.f2([[1]])))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(repkit.intervals(Quiver.linear(3))), min_size=1, max_size=3))
def test_decompose_recovers_summands(labels):
    q = Quiver.linear(3)
    m = repkit.direct_sum([repkit.interval_rep(q, i, j) for i, j in labels], q)
    assert repkit.decompose_labels(m) == tuple(sorted(labels))


@settings(max_examples=30, deadline=None)
@given(small_rep(Quiver.linear(3)))
def test_subreps_are_submodules(m):
    subs = repkit.enumerate_subreps(m)
    assert repkit.zero_sub(m) in subs and repkit.full_sub(m) in subs
    assert len(set(subs)) == len(subs)
    for u in subs:
        q = repkit.quotient(m, u)
        assert tuple(a - b for a, b in zip(m.dims, u.dims)) == q.dims


@settings(max_examples=30, deadline=None)
@given(small_rep(Quiver.linear(3)))
def test_trace_and_reject(m):
    q = m.quiver
    s = [repkit.interval_rep(q, 1, 2)]
    t = repkit.trace(s, m)
    r = repkit.reject(s, m)
    # the trace is the image of all maps from s, the reject is the common kernel
    for phi in repkit.hom_basis(s[0], m):
        assert repkit.image(phi, m) <= t
    for phi in repkit.hom_basis(m, s[0]):
        assert r <= repkit.kernel(phi, m)


def test_bound_exceeded():
    q = Quiver.linear(1)
    big = Rep(q, (13,), ())
    with pytest.raises(repkit.BoundExceeded):
        repkit.enumerate_subreps(big)
