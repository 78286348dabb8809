"""Torsion triples from a pair of SMS-generated abelian subcategories.

Given A and B inside the same orbit category with

    A ⊆ B * Σ^{-1}B * Σ^{-2}B   and   B ⊆ Σ^2 A * Σ A * A,

both satisfying E_5, the classes

    E0 = <Gen(A ∩ B)>,   E1 = A ∩ Σ^{-1}B,   E2 = <Sub(A ∩ Σ^{-2}B)>

form a torsion triple of A, and every object x of A has a unique filtration
0 ⊆ x1 ⊆ x2 ⊆ x with factors in E0, E1, E2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import repkit
from .abelian import AbelianModel, ClassA, NotATorsionClass, TorsionPair
from .orbit import (
    CONVENTIONS,
    Arc,
    ArcModel,
    CatParams,
    Inconclusive,
    ModelConventionError,
    Witness,
    build_arc_model,
    parse_arcs,
)
from .repkit import Rep, SubRep

E_MAX = 5


class SetupError(ValueError):
    """The pair (A, B) does not satisfy the hypotheses."""


class ModelError(RuntimeError):
    """A structural identity that must hold failed; signals a convention or Hom bug."""


class AxiomError(ValueError):
    """Input to phi / phi_inv violates the torsion axioms."""


def _pairs(xs: Iterable[Arc]) -> list[list[int]]:
    return [list(x.pair()) for x in sorted(xs)]


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "inconclusive"
    detail: str = ""
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "witnesses": self.witnesses}


@dataclass
class SetupReport:
    checks: list[Check]
    e_levels: dict[str, int]
    pair: "SetupPair | None" = None

    @property
    def status(self) -> str:
        if all(c.ok for c in self.checks):
            return "pass"
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        return "inconclusive"

    def to_json(self) -> dict:
        return {"status": self.status, "e_levels": dict(sorted(self.e_levels.items())),
                "checks": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class SetupPair:
    A: AbelianModel
    B: AbelianModel

    @property
    def model(self) -> ArcModel:
        return self.A.arc_model


def e_level(am: AbelianModel, limit: int = E_MAX) -> tuple[int, tuple | None]:
    """Largest n <= limit with Hom(a, Σ^{-i} a') = 0 for 1 <= i <= n, and the first failing pair."""
    m = am.arc_model
    for i in range(1, limit + 1):
        for a in am.indecs:
            for b in am.indecs:
                if m.hom(a, m.shift(b, -i)):
                    return i - 1, (a, b, i)
    return limit, None


def _shifted(m: ArcModel, xs: Iterable[Arc], k: int) -> frozenset:
    return frozenset(m.shift(x, k) for x in xs)


def _triple_star_check(name: str, m: ArcModel, xs: Iterable[Arc],
                       first: frozenset, second: frozenset, third: frozenset) -> Check:
    """Every x lies in (first * second) * third, each x with an explicit triangle."""
    try:
        inner = m.star_class(first, second)
    except Inconclusive as exc:
        return Check(name, "inconclusive", str(exc))
    witnesses, missing = [], []
    for x in sorted(xs):
        try:
            wit = m.star_membership([x], inner.keys(), third)
        except Inconclusive as exc:
            return Check(name, "inconclusive", f"{x}: {exc}")
        if wit is None:
            missing.append(x)
            continue
        witnesses.append({
            "object": list(x.pair()),
            "triangle": wit.to_json(),
            "first_stage": {f"{u.a},{u.b}": inner[u].to_json() for u in wit.u},
        })
    if missing:
        return Check(name, "fail", f"no triangle for {missing}", [list(x.pair()) for x in missing])
    return Check(name, "pass", f"{len(witnesses)} objects", witnesses)


def check_setup(A: AbelianModel, B: AbelianModel) -> SetupReport:
    if A.arc_model is None or A.arc_model is not B.arc_model:
        raise SetupError("A and B must live in the same arc model")
    m = A.arc_model
    checks, levels = [], {}
    for label, am in (("A", A), ("B", B)):
        lvl, bad = e_level(am)
        levels[label] = lvl
        if lvl >= E_MAX:
            checks.append(Check(f"E5({label})", "pass", f"Hom({label}, Σ^-i {label}) = 0 for 1 <= i <= 5"))
        else:
            a, b, i = bad
            checks.append(Check(f"E5({label})", "fail", f"Hom({a}, Σ^-{i}{b}) != 0",
                                [[list(a.pair()), list(b.pair()), i]]))
    aset, bset = A.everything, B.everything
    checks.append(_triple_star_check("A in B*Σ^-1B*Σ^-2B", m, aset,
                                     bset, _shifted(m, bset, -1), _shifted(m, bset, -2)))
    checks.append(_triple_star_check("B in Σ^2A*ΣA*A", m, bset,
                                     _shifted(m, aset, 2), _shifted(m, aset, 1), aset))
    rep = SetupReport(checks, levels)
    if rep.status == "pass":
        rep.pair = SetupPair(A, B)
    return rep


# ---------------------------------------------------------------------------
# E-sets


@dataclass
class TorsionData:
    pair: SetupPair
    E0: ClassA
    E1: ClassA
    E2: ClassA
    pair_low: TorsionPair
    pair_high: TorsionPair
    identities: dict[str, bool]

    @property
    def A(self) -> AbelianModel:
        return self.pair.A

    def to_json(self) -> dict:
        return {
            "E0": _pairs(self.E0),
            "E1": _pairs(self.E1),
            "E2": _pairs(self.E2),
            "pair_low": {"torsion": _pairs(self.pair_low.torsion), "free": _pairs(self.pair_low.free)},
            "pair_high": {"torsion": _pairs(self.pair_high.torsion), "free": _pairs(self.pair_high.free)},
            "identities": dict(sorted(self.identities.items())),
        }


def intersect_shifted(pair: SetupPair, k: int) -> frozenset:
    """A ∩ Σ^{-k} B on indecomposables."""
    m, bset = pair.model, pair.B.everything
    return frozenset(x for x in pair.A.indecs if m.shift(x, k) in bset)


def compute_esets(pair: SetupPair) -> TorsionData:
    A, m = pair.A, pair.model
    bset = pair.B.everything
    a0, a1, a2 = (intersect_shifted(pair, k) for k in (0, 1, 2))
    E0 = A.filt(A.gen(a0))
    E1 = a1
    E2 = A.filt(A.sub(a2))
    low = A.torsion_pair(E0)
    high = A.torsion_free_pair(E2)

    b1, b2 = _shifted(m, bset, -1), _shifted(m, bset, -2)
    aset = A.everything
    star_12 = aset & frozenset(m.star_class(b1, b2))
    star_01 = aset & frozenset(m.star_class(bset, b1))
    ids = {
        "E0_perp == (A∩B)_perp": A.perp_right(E0) == A.perp_right(a0),
        "(A∩B)_perp == A∩(Σ^-1B*Σ^-2B)": A.perp_right(a0) == star_12,
        "perp_E2 == perp_(A∩Σ^-2B)": A.perp_left(E2) == A.perp_left(a2),
        "perp_(A∩Σ^-2B) == A∩(B*Σ^-1B)": A.perp_left(a2) == star_01,
        "E0 ⊆ perp_E2": E0 <= A.perp_left(E2),
        "perp_E2 is a torsion class": A.is_torsion_class(A.perp_left(E2)),
    }
    bad = [k for k, v in ids.items() if not v]
    if bad:
        raise ModelError(f"identities failed: {bad}")
    return TorsionData(pair, E0, E1, E2, low, high, ids)


# ---------------------------------------------------------------------------
# Filtrations


@dataclass(frozen=True)
class TriplePartition:
    """0 = x0 ⊆ x1 ⊆ x2 ⊆ x3 = x with quotients in E0, E1, E2."""

    x: tuple
    chain: tuple[SubRep, ...]
    levels: tuple[tuple, ...]
    quotients: tuple[tuple, ...]

    def signature(self) -> tuple:
        """Isomorphism type of the chain: dims and summands of each level and quotient."""
        return (tuple(c.dims for c in self.chain), self.levels, self.quotients)

    def to_json(self) -> dict:
        return {
            "object": _pairs(self.x) if self.x and isinstance(self.x[0], Arc) else [list(k) for k in self.x],
            "chain": [_keys_json(lv) for lv in self.levels],
            "quotients": [_keys_json(q) for q in self.quotients],
        }


def _keys_json(keys) -> list:
    return [list(k.pair()) if isinstance(k, Arc) else list(k) for k in keys]


def _partition(A: AbelianModel, xkeys: tuple, chain: Sequence[SubRep]) -> TriplePartition:
    levels = tuple(A.keys_of(c.as_rep()) for c in chain)
    quots = []
    for lo, hi in zip(chain, chain[1:]):
        quots.append(A.keys_of(_subquotient(lo, hi)))
    return TriplePartition(xkeys, tuple(chain), levels, tuple(quots))


def _subquotient(lo: SubRep, hi: SubRep) -> Rep:
    """hi / lo for subreps lo ⊆ hi of the same parent."""
    bases = []
    for bl, bh in zip(lo.bases, hi.bases):
        bases.append(repkit.solve(bh, bl) if bh.shape[1] else repkit.zeros(0, bl.shape[1]))
    inner = SubRep(hi.as_rep(), tuple(bases))
    return repkit.quotient(hi.as_rep(), inner)


def filter_object(td: TorsionData, x: Iterable) -> TriplePartition:
    A = td.A
    xkeys = tuple(A.sorted_keys(x))
    r = A.member(xkeys)
    if r is None:
        raise SetupError(f"{list(xkeys)} is not an object of A")
    x2 = td.pair_high.radical(r)
    inner = td.pair_low.radical(x2.as_rep())
    x1 = repkit.subrep_of_sub(x2, inner)
    chain = (repkit.zero_sub(r), x1, x2, repkit.full_sub(r))
    part = _partition(A, xkeys, chain)
    for q, cls in zip(part.quotients, (td.E0, td.E1, td.E2)):
        if not all(k in cls for k in q):
            raise ModelError(f"filtration of {list(xkeys)} has a factor {q} outside its class")
    return part


def brute_force_filtrations(td: TorsionData, x: Iterable, bound: int = repkit.DEFAULT_DIM_BOUND) -> list[TriplePartition]:
    """Every chain u ⊆ v ⊆ x with u ∈ E0, v/u ∈ E1, x/v ∈ E2, by exhaustive subrep search."""
    A = td.A
    xkeys = tuple(A.sorted_keys(x))
    r = A.member(xkeys)
    if r is None:
        raise SetupError(f"{list(xkeys)} is not an object of A")
    try:
        subs = repkit.enumerate_subreps(r, bound)
    except repkit.BoundExceeded as exc:
        raise Inconclusive(str(exc)) from exc
    zero, full = repkit.zero_sub(r), repkit.full_sub(r)
    out = []
    for v in subs:
        if not A.in_add(repkit.quotient(r, v), td.E2):
            continue
        for u in subs:
            if not u <= v:
                continue
            if A.in_add(u.as_rep(), td.E0) and A.in_add(_subquotient(u, v), td.E1):
                out.append(_partition(A, xkeys, (zero, u, v, full)))
    return out


def distinct_up_to_iso(parts: Iterable[TriplePartition]) -> list[TriplePartition]:
    seen, out = set(), []
    for p in parts:
        sig = p.signature()
        if sig not in seen:
            seen.add(sig)
            out.append(p)
    return out


@dataclass
class TripleReport:
    hom_failures: list
    partition_failures: list
    partitions: int

    @property
    def ok(self) -> bool:
        return not self.hom_failures and not self.partition_failures

    def to_json(self) -> dict:
        return {"status": "pass" if self.ok else "fail", "hom_failures": self.hom_failures,
                "partition_failures": self.partition_failures, "partitions": self.partitions}


def verify_triple(td: TorsionData) -> TripleReport:
    A = td.A
    classes = (td.E0, td.E1, td.E2)
    hom_bad = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for a in A.sorted_keys(classes[i]):
            for b in A.sorted_keys(classes[j]):
                if A.hom(a, b):
                    hom_bad.append({"from": f"E{i}", "to": f"E{j}", "pair": _keys_json((a, b))})
    part_bad, count = [], 0
    for x in A.indecs:
        try:
            filter_object(td, [x])
            count += 1
        except ModelError as exc:
            part_bad.append({"object": _keys_json((x,)), "error": str(exc)})
    return TripleReport(hom_bad, part_bad, count)


# ---------------------------------------------------------------------------
# The bijection between torsion triples and nested pairs of torsion pairs

Triple = tuple  # (S0, S1, S2)
PairOfPairs = tuple  # ((T, F), (T2, F2))


def check_torsion_triple(A: AbelianModel, triple: Triple) -> None:
    s0, s1, s2 = (frozenset(s) for s in triple)
    for (i, a), (j, b) in itertools.combinations(enumerate((s0, s1, s2)), 2):
        for x in a:
            for y in b:
                if A.hom(x, y):
                    raise AxiomError(f"Hom(S{i}, S{j}) != 0 at {x} -> {y}")
    if A.star_a(A.star_a(s0, s1), s2) != A.everything:
        raise AxiomError("A != S0 * S1 * S2")


def check_torsion_pair(A: AbelianModel, t: ClassA, f: ClassA) -> None:
    if not A.is_torsion_class(t):
        raise AxiomError(f"{A.sorted_keys(t)} is not a torsion class")
    if A.perp_right(t) != f:
        raise AxiomError("torsion-free part is not the right perpendicular of the torsion part")


def phi(A: AbelianModel, triple: Triple) -> PairOfPairs:
    check_torsion_triple(A, triple)
    s0, s1, s2 = (frozenset(s) for s in triple)
    return ((s0, A.star_a(s1, s2)), (A.star_a(s0, s1), s2))


def phi_inv(A: AbelianModel, pairs: PairOfPairs) -> Triple:
    (t, f), (t2, f2) = ((frozenset(a), frozenset(b)) for a, b in pairs)
    check_torsion_pair(A, t, f)
    check_torsion_pair(A, t2, f2)
    if not t <= t2:
        raise AxiomError("torsion classes are not nested")
    return (t, f & t2, f2)


ENUMERATION_LIMIT = 20


def _masks(A: AbelianModel):
    idx = {k: i for i, k in enumerate(A.indecs)}

    def mask(keys) -> int:
        out = 0
        for k in keys:
            out |= 1 << idx[k]
        return out

    quot = [mask(A.quotient_keys(k)) for k in A.indecs]
    subo = [mask(A.subobject_keys(k)) for k in A.indecs]
    ses = [[(mask(s), mask(q)) for _, s, q in A.ses_types(k)] for k in A.indecs]
    return quot, subo, ses


def _enumerate(A: AbelianModel, closure: str) -> list[ClassA]:
    n = len(A.indecs)
    if n > ENUMERATION_LIMIT:
        raise repkit.BoundExceeded("enumerate_torsion_classes", n, ENUMERATION_LIMIT)
    quot, subo, ses = _masks(A)
    down = quot if closure == "quotient" else subo
    out = []
    for t in range(1 << n):
        ok = True
        for i in range(n):
            if t >> i & 1:
                if down[i] & ~t:
                    ok = False
                    break
            elif any(not (s & ~t) and not (q & ~t) for s, q in ses[i]):
                ok = False
                break
        if ok:
            out.append(frozenset(A.indecs[i] for i in range(n) if t >> i & 1))
    return out


def enumerate_torsion_classes(A: AbelianModel) -> list[ClassA]:
    """All torsion classes, by exhaustion over subsets of indecomposables."""
    return _enumerate(A, "quotient")


def enumerate_torsion_free_classes(A: AbelianModel) -> list[ClassA]:
    return _enumerate(A, "sub")


def nested_pairs(A: AbelianModel, classes: Sequence[ClassA] | None = None) -> list[PairOfPairs]:
    classes = enumerate_torsion_classes(A) if classes is None else classes
    perps = {t: A.perp_right(t) for t in classes}
    return [((t, perps[t]), (t2, perps[t2])) for t in classes for t2 in classes if t <= t2]


# ---------------------------------------------------------------------------
# Calibration of the arc model against the worked example

EXAMPLE_W, EXAMPLE_N = 6, 5
EXAMPLE_SA = ((28, 34), (14, 20), (21, 27), (1, 7), (0, 13))
EXAMPLE_SB = ((23, 29), (7, 13), (22, 35), (1, 14), (15, 21))
EXAMPLE_E0 = ((1, 7), (7, 13))
EXAMPLE_E1 = ((0, 34), (0, 20), (14, 20), (14, 34), (21, 34), (0, 13), (28, 34))
EXAMPLE_E2 = ((21, 27),)
EXAMPLE_X = ((7, 27),)
EXAMPLE_CHAIN = ((), ((7, 13),), ((7, 20),), ((7, 27),))
EXAMPLE_QUOTIENTS = (((7, 13),), ((14, 20),), ((21, 27),))


@dataclass
class Calibration:
    matches: list[str]
    rejected: dict[str, str]
    rotation_invariant: dict[str, bool]

    @property
    def chosen(self) -> str:
        if len(self.matches) != 1:
            raise ModelConventionError(f"calibration is not unique: {self.matches}")
        return self.matches[0]

    def to_json(self) -> dict:
        return {"matches": self.matches, "rejected": dict(sorted(self.rejected.items())),
                "rotation_invariant": dict(sorted(self.rotation_invariant.items()))}


def _as_pairs(keys) -> tuple:
    return tuple(sorted(k.pair() for k in keys))


def reproduces_example(model: ArcModel) -> tuple[bool, str]:
    p = model.params
    try:
        A = AbelianModel.from_sms(model, parse_arcs(EXAMPLE_SA, p))
        B = AbelianModel.from_sms(model, parse_arcs(EXAMPLE_SB, p))
        rep = check_setup(A, B)
        if rep.pair is None:
            return False, f"setup {rep.status}"
        td = compute_esets(rep.pair)
    except Exception as exc:  # any failure means this convention does not fit
        return False, f"{type(exc).__name__}: {exc}"
    got = (_as_pairs(td.E0), _as_pairs(td.E1), _as_pairs(td.E2))
    want = tuple(tuple(sorted(e)) for e in (EXAMPLE_E0, EXAMPLE_E1, EXAMPLE_E2))
    if got != want:
        return False, f"E-sets {got}"
    part = filter_object(td, parse_arcs(EXAMPLE_X, p))
    if tuple(tuple(sorted(k.pair() for k in lv)) for lv in part.levels) != EXAMPLE_CHAIN:
        return False, "filtration differs"
    return True, "ok"


def rotation_invariant(model: ArcModel) -> bool:
    """Rotating all arcs by one corner preserves Hom and commutes with Σ.

    When this holds, every rotated variant of the bijection induces the same
    arc-level structure, so the rotation offset needs no calibration.
    """
    for x in model.arcs:
        if model.shift(x.rotate(1), 1) != model.shift(x, 1).rotate(1):
            return False
        for y in model.arcs:
            if model.hom(x, y) != model.hom(x.rotate(1), y.rotate(1)):
                return False
    return True


def calibrate_convention(params: CatParams | None = None) -> Calibration:
    from .orbit import make_params

    params = params or make_params(EXAMPLE_W, EXAMPLE_N)
    matches, rejected, rot = [], {}, {}
    for conv in CONVENTIONS:
        try:
            model = build_arc_model(params, conv)
        except ModelConventionError as exc:
            rejected[conv] = str(exc)
            continue
        rot[conv] = rotation_invariant(model)
        ok, why = reproduces_example(model)
        if ok:
            matches.append(conv)
        else:
            rejected[conv] = why
    return Calibration(matches, rejected, rot)
