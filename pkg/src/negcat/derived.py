"""Combinatorics of D^b(kA_n) for the linear orientation 1 -> 2 -> ... -> n.

Indecomposables are shifted interval modules ``Σ^m M[a, b]``.  Projectives
are ``P_i = M[i, n]`` and injectives ``I_i = M[1, i]``.  All Hom spaces
between indecomposables have dimension at most one, so a morphism between
indecomposables is identified with its (source, target) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import repkit
from .repkit import Quiver, Rep


class NoMapError(ValueError):
    """The requested morphism space is zero."""


@dataclass(frozen=True, order=True)
class Interval:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty interval [{self.a},{self.b}]")

    def __repr__(self) -> str:
        return f"[{self.a},{self.b}]"

    @property
    def length(self) -> int:
        return self.b - self.a + 1


@dataclass(frozen=True, order=True)
class DbIndec:
    """``Σ^shift M[a, b]`` in D^b(kA_n)."""

    shift: int
    a: int
    b: int
    n: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b <= self.n:
            raise ValueError(f"interval [{self.a},{self.b}] not inside 1..{self.n}")

    @property
    def interval(self) -> Interval:
        return Interval(self.a, self.b)

    def __repr__(self) -> str:
        return f"Σ^{self.shift}[{self.a},{self.b}]"


DbObject = tuple  # sorted tuple of DbIndec


def db_object(items: Iterable[DbIndec]) -> DbObject:
    return tuple(sorted(items))


def _intervals_hom(a: int, b: int, c: int, d: int) -> int:
    return 1 if c <= a <= d <= b else 0


def _intervals_ext1(a: int, b: int, c: int, d: int, n: int) -> int:
    # Ext^1(M[a,b], M[c,d]) = D Hom(M[c,d], τ M[a,b]); zero when M[a,b] is projective
    if b == n:
        return 0
    return _intervals_hom(c, d, a + 1, b + 1)


def hom_dim_db(x: DbIndec, y: DbIndec) -> int:
    if x.n != y.n:
        raise ValueError("objects over different A_n")
    diff = y.shift - x.shift
    if diff == 0:
        return _intervals_hom(x.a, x.b, y.a, y.b)
    if diff == 1:
        return _intervals_ext1(x.a, x.b, y.a, y.b, x.n)
    return 0


def hom_dim_db_obj(xs: Iterable[DbIndec], ys: Iterable[DbIndec]) -> int:
    ys = list(ys)
    return sum(hom_dim_db(x, y) for x in xs for y in ys)


def sigma(x: DbIndec, k: int = 1) -> DbIndec:
    return DbIndec(x.shift + k, x.a, x.b, x.n)


def nakayama(x: DbIndec) -> DbIndec:
    """Serre functor; on modules P_i -> I_i, extended by ν = Σ τ."""
    if x.b == x.n:
        return DbIndec(x.shift, 1, x.a, x.n)
    return sigma(_tau_nonprojective(x), 1)


def nakayama_inv(x: DbIndec) -> DbIndec:
    if x.a == 1:
        return DbIndec(x.shift, x.b, x.n, x.n)
    return _tau_inv_noninjective(sigma(x, -1))


def _tau_nonprojective(x: DbIndec) -> DbIndec:
    return DbIndec(x.shift, x.a + 1, x.b + 1, x.n)


def _tau_inv_noninjective(x: DbIndec) -> DbIndec:
    return DbIndec(x.shift, x.a - 1, x.b - 1, x.n)


def tau(x: DbIndec) -> DbIndec:
    """AR translate; on projectives computed as Σ^{-1} ν."""
    if x.b < x.n:
        return _tau_nonprojective(x)
    return sigma(nakayama(x), -1)


def tau_inv(x: DbIndec) -> DbIndec:
    if x.a > 1:
        return _tau_inv_noninjective(x)
    return nakayama_inv(sigma(x, 1))


def composite_nonzero(x: DbIndec, y: DbIndec, z: DbIndec) -> bool:
    """Whether the composite of the nonzero maps x -> y -> z is nonzero.

    Both factors must be nonzero.  In D^b(kA_n) the category is directed with
    thin Hom spaces, and the composite survives exactly when Hom(x, z) != 0.
    """
    if not (hom_dim_db(x, y) and hom_dim_db(y, z)):
        raise NoMapError(f"no nonzero map in {x} -> {y} -> {z}")
    return bool(hom_dim_db(x, z))


def cone(source: DbIndec, target: DbIndec) -> DbObject:
    """Cone of the nonzero map source -> target (unique up to scalar)."""
    if not hom_dim_db(source, target):
        raise NoMapError(f"Hom({source}, {target}) = 0")
    n, m = source.n, source.shift
    out = []
    if target.shift == m:
        a, b, c, d = source.a, source.b, target.a, target.b
        if c <= a - 1:
            out.append(DbIndec(m, c, a - 1, n))
        if d + 1 <= b:
            out.append(DbIndec(m + 1, d + 1, b, n))
    else:
        # extension class M[a,b] -> Σ M[c,d]; middle term M[a,d] ⊕ M[c,b]
        a, b, c, d = source.a, source.b, target.a, target.b
        out.append(DbIndec(m + 1, a, d, n))
        if c <= b:
            out.append(DbIndec(m + 1, c, b, n))
    return db_object(out)


# ---------------------------------------------------------------------------
# Concrete module realisation, used for cones of maps out of direct sums


def module_rep(n: int, a: int, b: int) -> Rep:
    return repkit.interval_rep(Quiver.linear(n), a, b)


def _canonical_map(n: int, src: tuple[int, int], tgt: tuple[int, int]) -> tuple[np.ndarray, ...]:
    """The nonzero map M[src] -> M[tgt] that is the identity on the common support."""
    (a, b), (c, d) = src, tgt
    phi = []
    for v in range(1, n + 1):
        rows = 1 if c <= v <= d else 0
        cols = 1 if a <= v <= b else 0
        phi.append(np.ones((rows, cols), dtype=np.uint8))
    return tuple(phi)


def _block_map(n: int, sources: Sequence[tuple[int, int]], tgt: tuple[int, int]) -> tuple[np.ndarray, ...]:
    """Row of canonical maps ⊕ M[src_j] -> M[tgt]."""
    blocks = [_canonical_map(n, s, tgt) for s in sources]
    out = []
    for v in range(n):
        rows = 1 if tgt[0] <= v + 1 <= tgt[1] else 0
        parts = [bl[v] for bl in blocks]
        out.append(np.hstack(parts) if parts else np.zeros((rows, 0), dtype=np.uint8))
    return tuple(out)


def cone_of_sum(sources: Sequence[DbIndec], target: DbIndec) -> DbObject:
    """Cone of the map ⊕ sources -> target whose every component is nonzero.

    Sources must sit in degree 0 or -1 relative to the target.  With
    f0 the degree-0 part and f1 the extension part, the cone is
    Σ ker(f0) ⊕ E where E is the extension of the f1-sources by coker(f0)
    with class π∘f1.  Computed with exact F2 linear algebra.
    """
    if not sources:
        return db_object([target])
    n, m = target.n, target.shift
    for s in sources:
        if not hom_dim_db(s, target):
            raise NoMapError(f"Hom({s}, {target}) = 0")
    q = Quiver.linear(n)
    tgt = (target.a, target.b)
    deg0 = [(s.a, s.b) for s in sources if s.shift == m]
    deg1 = [(s.a, s.b) for s in sources if s.shift == m - 1]

    n_rep = module_rep(n, *tgt)
    u0 = repkit.direct_sum([module_rep(n, *s) for s in deg0], q)
    f0 = _block_map(n, deg0, tgt)
    ker = repkit.kernel(f0, u0).as_rep()
    qt = repkit.quotient_with_map(n_rep, repkit.image(f0, n_rep))
    coker = qt.rep

    out = [DbIndec(m + 1, a_, b_, n) for a_, b_ in _labels(ker)]

    if not deg1:
        out += [DbIndec(m, a_, b_, n) for a_, b_ in _labels(coker)]
        return db_object(out)

    # projective presentations 0 -> P_{b+1} -> P_a -> M[a,b] -> 0
    proj = [(a, n) for a, _ in deg1]
    syz = [(b + 1, n) for _, b in deg1]
    p_rep = repkit.direct_sum([module_rep(n, *p) for p in proj], q)
    omega_parts = [s for s in syz if s[0] <= n]
    omega = repkit.direct_sum([module_rep(n, *s) for s in omega_parts], q)
    # inclusion Ω -> P, blockwise
    incl = []
    for v in range(1, n + 1):
        mat = np.zeros((p_rep.dim(v), omega.dim(v)), dtype=np.uint8)
        r = c = 0
        for (a, _), (sa, _) in zip(proj, syz):
            pr = 1 if a <= v else 0
            oc = 1 if sa <= v and sa <= n else 0
            if pr and oc:
                mat[r, c] = 1
            r += pr
            c += oc
        incl.append(mat)
    # φ: Ω -> N canonical componentwise, then project to coker
    phi = _block_map(n, omega_parts, tgt)
    g = tuple(repkit.mul(qt.projections[v], phi[v]) for v in range(n))
    total = repkit.direct_sum([coker, p_rep], q)
    graph = []
    for v in range(n):
        graph.append(np.vstack([g[v], incl[v]]) if total.dims[v] else np.zeros((0, omega.dims[v]), dtype=np.uint8))
    sub = repkit.SubRep(total, tuple(repkit.colspace(gr) if gr.size else np.zeros((total.dims[v], 0), dtype=np.uint8)
                                     for v, gr in enumerate(graph)))
    ext = repkit.quotient(total, sub)
    out += [DbIndec(m, a_, b_, n) for a_, b_ in _labels(ext)]
    return db_object(out)


def _labels(r: Rep) -> tuple[tuple[int, int], ...]:
    if r.is_zero():
        return ()
    return repkit.decompose_labels(r, bound=10**6)
