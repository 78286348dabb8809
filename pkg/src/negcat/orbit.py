"""The negative cluster category C_{-w}(A_n) = D^b(kA_n) / Σ^{w+1}τ.

Indecomposables are admissible diagonals ``(a, b)`` of an N-gon with
``N = (w+1)(n+1) - 2``: ``w + 1`` divides ``b - a + 1``.  Irreducible maps
move one endpoint of a diagonal by w + 1 corners, so the AR translate is
rotation by w + 1 corners.

Morphisms are computed on lifts to the derived category:
Hom_C(X, Y) = ⊕_i Hom_D(X, F^i Y) with F = Σ^{w+1}τ.  Only the finitely many
i for which F^i Y lands in shift degree 0 or 1 relative to X can contribute,
so the window is derived per pair.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import derived
from .derived import DbIndec


class ParamError(ValueError):
    pass


class ArcError(ValueError):
    pass


class ModelConventionError(RuntimeError):
    pass


class NoExtensionError(ValueError):
    """The connecting Hom space of a requested triangle is zero."""


class MultiComponentError(ValueError):
    """A Hom space is spread over several orbit components; cones are not taken componentwise."""


@dataclass(frozen=True, order=True)
class CatParams:
    w: int
    n: int

    @property
    def N(self) -> int:
        return (self.w + 1) * (self.n + 1) - 2

    def __repr__(self) -> str:
        return f"C_-{self.w}(A_{self.n})"


def make_params(w: int, n: int) -> CatParams:
    if w < 1 or n < 1:
        raise ParamError(f"w and n must be positive, got w={w}, n={n}")
    p = CatParams(int(w), int(n))
    if p.N < 4:
        raise ParamError(f"N = {p.N}: the polygon has no diagonals")
    return p


@dataclass(frozen=True, order=True)
class Arc:
    a: int
    b: int
    params: CatParams = field(compare=True, repr=False)

    def __post_init__(self):
        p = self.params
        if not 0 <= self.a < self.b <= p.N - 1:
            raise ArcError(f"({self.a},{self.b}) is not a pair of corner labels 0 <= a < b <= {p.N - 1}")
        if (self.b - self.a + 1) % (p.w + 1):
            raise ArcError(f"({self.a},{self.b}) is not admissible: {p.w + 1} does not divide {self.b - self.a + 1}")
        # for w = 1 the shortest admissible chords are polygon edges; they stay objects
        if p.w > 1 and (self.b - self.a == 1 or self.b - self.a == p.N - 1):
            raise ArcError(f"({self.a},{self.b}) is a polygon edge")

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def rotate(self, k: int) -> "Arc":
        return arc(self.a + k, self.b + k, self.params)


def arc(a: int, b: int, params: CatParams) -> Arc:
    """Arc from two corner labels, reduced mod N and ordered."""
    a %= params.N
    b %= params.N
    return Arc(min(a, b), max(a, b), params)


CObject = tuple  # sorted tuple of Arc


def cobject(arcs: Iterable[Arc]) -> CObject:
    return tuple(sorted(arcs))


def admissible_arcs(params: CatParams) -> list[Arc]:
    out = []
    for a in range(params.N):
        for b in range(a + 1, params.N):
            try:
                out.append(Arc(a, b, params))
            except ArcError:
                pass
    return out


def _check_params(x: Arc, y: Arc) -> None:
    if x.params != y.params:
        raise ParamError("arcs from different categories")


def crosses(x: Arc, y: Arc) -> bool:
    _check_params(x, y)
    a, b, c, d = x.a, x.b, y.a, y.b
    return a < c < b < d or c < a < d < b


def shares_endpoint(x: Arc, y: Arc) -> bool:
    _check_params(x, y)
    return bool({x.a, x.b} & {y.a, y.b})


def is_sms(arcs: Iterable[Arc], params: CatParams | None = None) -> tuple[bool, str]:
    """Combinatorial w-simple-minded-system criterion with the first failing clause."""
    arcs = sorted(set(arcs))
    if params is None:
        params = arcs[0].params if arcs else None
    if params is not None and any(x.params != params for x in arcs):
        return False, "arcs from different categories"
    n = params.n if params is not None else 0
    if len(arcs) != n:
        return False, f"size {len(arcs)} != n = {n}"
    for x, y in itertools.combinations(arcs, 2):
        if crosses(x, y):
            return False, f"{x} and {y} cross"
        if shares_endpoint(x, y):
            return False, f"{x} and {y} share an endpoint"
    return True, "ok"


# ---------------------------------------------------------------------------
# Orbit bookkeeping

CONVENTIONS = ("anticlockwise", "clockwise")
# selected by calibration against the worked example at w=6, n=5;
# see negcat.torsion3.calibrate_convention
DEFAULT_CONVENTION = "anticlockwise"


@dataclass(frozen=True)
class Witness:
    """A triangle u -> x -> v -> Σu in C, each vertex given as arcs."""

    u: CObject
    x: CObject
    v: CObject

    def to_json(self) -> dict:
        return {k: [a.pair() for a in getattr(self, k)] for k in ("u", "x", "v")}


class Inconclusive(Exception):
    """A bounded search could not decide."""


class ArcModel:
    """Bijection between F-orbits of indecomposables of D^b(kA_n) and arcs.

    The shift-0 module M[a, b] goes to the diagonal
    ``(offset - (w+1) b, offset - (w+1)(a-1) - 1)``: growing the interval at
    its head moves the second corner anticlockwise by w + 1, shrinking it at
    its tail moves the first corner the same way.  Everything else is reached
    by τ-equivariance with τ^{-1} = rotation by w + 1.  The "clockwise"
    convention is the mirror image.
    """

    def __init__(self, params: CatParams, convention: str = DEFAULT_CONVENTION, offset: int = 0):
        if convention not in CONVENTIONS:
            raise ModelConventionError(f"unknown convention {convention!r}")
        self.params = params
        self.w, self.n, self.N = params.w, params.n, params.N
        self.convention = convention
        self.offset = offset
        self._to_arc: dict[DbIndec, Arc] = {}
        self.arcs: list[Arc] = admissible_arcs(params)
        self.lift: dict[Arc, DbIndec] = {}
        for shift in range(0, self.w + 1):
            for a in range(1, self.n + 1):
                for b in range(a, self.n + 1):
                    x = DbIndec(shift, a, b, self.n)
                    t = self.to_arc(x)
                    if t not in self.lift or x < self.lift[t]:
                        self.lift[t] = x
        self.sigma_on_arcs = {t: self.to_arc(derived.sigma(self.lift[t], 1)) for t in self.arcs if t in self.lift}
        self.tau_on_arcs = {t: self.to_arc(derived.tau(self.lift[t])) for t in self.arcs if t in self.lift}
        self._validate()

    # --- functors on lifts
    def F(self, x: DbIndec) -> DbIndec:
        return derived.sigma(derived.tau(x), self.w + 1)

    def F_inv(self, x: DbIndec) -> DbIndec:
        return derived.tau_inv(derived.sigma(x, -(self.w + 1)))

    @property
    def tau_step(self) -> int:
        """Rotation (in corners) realising τ on diagonals."""
        return -(self.w + 1) if self.convention == "anticlockwise" else self.w + 1

    def _module_arc(self, a: int, b: int) -> Arc:
        start = self.offset - (self.w + 1) * b
        end = self.offset - (self.w + 1) * (a - 1) - 1
        if self.convention == "anticlockwise":
            return arc(start, end, self.params)
        return arc(-end, -start, self.params)

    def to_arc(self, x: DbIndec) -> Arc:
        if x.n != self.n:
            raise ParamError("object over a different A_n")
        hit = self._to_arc.get(x)
        if hit is not None:
            return hit
        y, steps = _walk_to_projective(x)
        result = self._module_arc(y.a, y.b).rotate(-steps * self.tau_step)
        self._to_arc[x] = result
        return result

    def mesh_position(self, x: Arc) -> tuple[int, int]:
        """(column, row) of x in the AR quiver drawn as a strip N columns wide.

        x = τ^{-j} P_i sits at column 2j + row with row = n - i + 1; F moves
        columns by N, so the lift with column in [0, N) is used.
        """
        z = self.lift[x]
        for _ in range(4):
            y, steps = _walk_to_projective(z)
            row = self.n - y.a + 1
            col = 2 * steps + row
            if col < 0:
                z = self.F(z)
            elif col >= self.N:
                z = self.F_inv(z)
            else:
                return col, row
        raise ModelConventionError(f"no lift of {x} in the drawing window")

    def to_cobject(self, xs: Iterable[DbIndec]) -> CObject:
        return cobject(self.to_arc(x) for x in xs)

    def _validate(self) -> None:
        p = self.params
        expected = p.N * p.n // 2
        if len(self.arcs) != expected:
            raise ModelConventionError(f"{len(self.arcs)} admissible arcs, expected {expected}")
        missing = [t for t in self.arcs if t not in self.lift]
        if missing:
            raise ModelConventionError(f"arcs without a preimage: {missing[:5]}")
        for t, x in self.lift.items():
            if self.to_arc(self.F(x)) != t or self.to_arc(self.F_inv(x)) != t:
                raise ModelConventionError(f"assignment is not F-invariant at {x}")
            if self.F(x) == x:
                raise ModelConventionError(f"F fixes {x}")
            if self.tau_on_arcs[t] != t.rotate(self.tau_step):
                raise ModelConventionError(f"τ is not the rotation by {self.tau_step} at {t}")
        for t in self.arcs:
            if self.sigma_on_arcs[self.tau_on_arcs[t]] != self.tau_on_arcs[self.sigma_on_arcs[t]]:
                raise ModelConventionError("Σ and τ do not commute on arcs")
        if len(set(self.sigma_on_arcs.values())) != len(self.arcs):
            raise ModelConventionError("Σ is not a permutation of arcs")

    # --- arcs as objects
    def parse(self, a: int, b: int) -> Arc:
        return Arc(a, b, self.params)

    def shift(self, x: Arc, k: int) -> Arc:
        if k >= 0:
            for _ in range(k):
                x = self.sigma_on_arcs[x]
            return x
        inv = self._sigma_inv()
        for _ in range(-k):
            x = inv[x]
        return x

    @functools.cache
    def _sigma_inv(self) -> dict[Arc, Arc]:
        return {v: k for k, v in self.sigma_on_arcs.items()}

    def shift_obj(self, xs: Iterable[Arc], k: int) -> CObject:
        return cobject(self.shift(x, k) for x in xs)

    def translates(self, y: DbIndec, lo: int, hi: int) -> list[DbIndec]:
        """All F^i y with shift in [lo, hi]."""
        z = y
        while z.shift >= lo:
            z = self.F_inv(z)
        out = []
        while z.shift <= hi:
            if z.shift >= lo:
                out.append(z)
            z = self.F(z)
        return out

    def components(self, x: Arc, y: Arc) -> list[tuple[DbIndec, DbIndec]]:
        """Nonzero components (lift(x), F^i lift(y)) of Hom_C(x, y)."""
        xl = self.lift[x]
        return [(xl, t) for t in self.translates(self.lift[y], xl.shift, xl.shift + 1)
                if derived.hom_dim_db(xl, t)]

    def hom(self, x: Arc, y: Arc) -> int:
        return self._hom(x, y)

    @functools.cache
    def _hom(self, x: Arc, y: Arc) -> int:
        return len(self.components(x, y))

    def hom_obj(self, xs: Iterable[Arc], ys: Iterable[Arc]) -> int:
        ys = list(ys)
        return sum(self.hom(x, y) for x in xs for y in ys)

    def serre(self, x: Arc) -> Arc:
        """The Serre functor Σ^{-w}."""
        return self.shift(x, -self.w)

    # --- triangles
    def middle_terms(self, x: Arc, z: Arc) -> list[CObject]:
        """Middle terms y of nonsplit triangles x -> y -> z -> Σx."""
        comps = self.components(z, self.shift(x, 1))
        if not comps:
            raise NoExtensionError(f"Hom({z}, Σ{x}) = 0")
        if len(comps) > 1:
            raise MultiComponentError(f"Hom({z}, Σ{x}) has {len(comps)} orbit components")
        src, tgt = comps[0]
        c = self.to_cobject(derived.cone(src, tgt))
        return [self.shift_obj(c, -1)]

    def right_approximation(self, us: Iterable[Arc], x: Arc) -> tuple[list[DbIndec], DbIndec]:
        """Minimal right add(us)-approximation of x, computed on lifts."""
        xl = self.lift[x]
        cands = []
        for u in sorted(set(us)):
            for t in self.translates(self.lift[u], xl.shift - 1, xl.shift):
                if derived.hom_dim_db(t, xl):
                    cands.append(t)
        minimal = [t for t in cands
                   if not any(s != t and derived.hom_dim_db(t, s) and derived.hom_dim_db(s, xl) for s in cands)]
        return minimal, xl

    def star_witness(self, us: Iterable[Arc], vs: Iterable[Arc], x: Arc) -> Witness | None:
        """Try the triangle u -> x -> v -> Σu with u the minimal right approximation.

        Returns the witness if its cone lies in add(vs).  When Hom(us, vs) = 0 a
        None answer is exact: then any triangle with u in add(us), v in add(vs)
        contains this one as a summand.
        """
        vs = set(vs)
        sources, xl = self.right_approximation(us, x)
        c = self.to_cobject(derived.cone_of_sum(sources, xl))
        if all(t in vs for t in c):
            return Witness(self.to_cobject(sources), (x,), c)
        return None

    def star_membership(self, xs: Iterable[Arc], us: Iterable[Arc], vs: Iterable[Arc]) -> Witness | None:
        """Witness that the object xs lies in add(us) * add(vs), or None if it does not.

        Raises Inconclusive when the search found nothing but Hom(us, vs) != 0,
        so absence cannot be certified.
        """
        us, vs = set(us), set(vs)
        orth = self.hom_obj(us, vs) == 0
        xs = list(xs)
        if not xs:
            return Witness((), (), ())
        if len(xs) > 1 and not orth:
            raise Inconclusive("decomposable object and Hom(U, V) != 0")
        parts = []
        for x in xs:
            wit = self.star_witness(us, vs, x)
            if wit is None:
                if orth:
                    return None
                raise Inconclusive(f"no witness for {x} and Hom(U, V) != 0")
            parts.append(wit)
        return Witness(cobject(t for p in parts for t in p.u), cobject(xs),
                       cobject(t for p in parts for t in p.v))

    def star_class(self, us: Iterable[Arc], vs: Iterable[Arc]) -> dict[Arc, Witness]:
        """Indecomposables of add(us) * add(vs) with witnesses; requires Hom(us, vs) = 0."""
        us, vs = set(us), set(vs)
        if self.hom_obj(us, vs):
            raise Inconclusive("star classes are only computed exactly when Hom(U, V) = 0")
        out = {}
        for x in self.arcs:
            wit = self.star_witness(us, vs, x)
            if wit is not None:
                out[x] = wit
        return out


def _walk_to_projective(x: DbIndec) -> tuple[DbIndec, int]:
    """The shift-0 projective P and j with x = τ^{-j} P."""
    y, steps = x, 0
    while not (y.shift == 0 and y.b == y.n):
        if y.shift > 0 or (y.shift == 0 and y.b < y.n):
            y = derived.tau(y)
            steps += 1
        else:
            y = derived.tau_inv(y)
            steps -= 1
    return y, steps


@functools.cache
def build_arc_model(params: CatParams, convention: str = DEFAULT_CONVENTION, offset: int = 0) -> ArcModel:
    return ArcModel(params, convention, offset)


def parse_arcs(pairs: Iterable[Sequence[int]], params: CatParams) -> list[Arc]:
    return [Arc(int(p[0]), int(p[1]), params) for p in pairs]
