"""Built-in invariant suites behind ``negcat selftest``.

Each suite returns a SuiteResult with pass/fail counts and the first few
failures.  Randomised suites draw from a seeded generator, so reruns agree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import derived, repkit, torsion3
from .abelian import AbelianModel, UnsupportedConfiguration, RealizationError
from .derived import DbIndec
from .orbit import CatParams, admissible_arcs, build_arc_model, is_sms, parse_arcs
from .repkit import Quiver

SEED = 20240601
MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: str = ""
    failures: list = field(default_factory=list)

    def check(self, ok: bool, what) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(str(what))

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.failed == 0 else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "passed": self.passed, "failed": self.failed,
               "failures": self.failures}
        if self.skipped:
            out["skipped"] = self.skipped
        return out


def db_oracle(x: DbIndec, y: DbIndec) -> int:
    """hom in D^b computed by repkit: Hom for equal shifts, Ext^1 one step up."""
    q = Quiver.linear(x.n)
    rx, ry = repkit.interval_rep(q, x.a, x.b), repkit.interval_rep(q, y.a, y.b)
    d = y.shift - x.shift
    if d == 0:
        return repkit.hom_dim(rx, ry)
    if d == 1:
        return repkit.ext1_dim(rx, ry)
    return 0


def suite_oracle(params: CatParams) -> SuiteResult:
    res = SuiteResult("oracle")
    for n in range(1, 5):
        objs = [DbIndec(m, a, b, n) for m in range(-3, 4) for a in range(1, n + 1) for b in range(a, n + 1)]
        for x in objs:
            for y in objs:
                res.check(derived.hom_dim_db(x, y) == db_oracle(x, y), (x, y))
    return res


def suite_serre(params: CatParams) -> SuiteResult:
    res = SuiteResult("serre")
    m = build_arc_model(params)
    for x in m.arcs:
        sx = m.serre(x)
        for y in m.arcs:
            res.check(m.hom(x, y) == m.hom(y, sx), (x, y))
    return res


def suite_cones(params: CatParams) -> SuiteResult:
    res = SuiteResult("cones")
    for n in range(1, 5):
        objs = [DbIndec(s, a, b, n) for s in (0, 1) for a in range(1, n + 1) for b in range(a, n + 1)]
        for x in objs:
            for y in objs:
                if derived.hom_dim_db(x, y):
                    res.check(derived.cone(x, y) == derived.cone_of_sum([x], y), (x, y))
    return res


def default_sms(params: CatParams) -> list:
    """The worked example's S_A at (6, 5); otherwise the first realizable SMS."""
    m = build_arc_model(params)
    if (params.w, params.n) == (torsion3.EXAMPLE_W, torsion3.EXAMPLE_N):
        return parse_arcs(torsion3.EXAMPLE_SA, params)
    for combo in itertools.combinations(m.arcs, params.n):
        if is_sms(combo, params)[0]:
            try:
                AbelianModel.from_sms(m, combo)
            except (UnsupportedConfiguration, RealizationError):
                continue
            return list(combo)
    raise UnsupportedConfiguration(f"no realizable simple-minded system at {params}")


def law_models(params: CatParams) -> list[tuple[str, AbelianModel]]:
    m = build_arc_model(params)
    return [
        ("A2", AbelianModel.from_quiver(Quiver.linear(2))),
        ("A3", AbelianModel.from_quiver(Quiver.linear(3))),
        (f"{params!r}", AbelianModel.from_sms(m, default_sms(params))),
    ]


def _random_classes(am: AbelianModel, rng: random.Random, count: int) -> list[frozenset]:
    out = []
    for _ in range(count):
        k = rng.randint(0, min(3, len(am.indecs)))
        out.append(frozenset(rng.sample(am.indecs, k)))
    return out


def suite_star(params: CatParams, samples: int = 50) -> SuiteResult:
    """(S)_{m+n} = (S)_m * (S)_n for m + n <= 4."""
    res = SuiteResult("star")
    rng = random.Random(SEED)
    for name, am in law_models(params):
        for s in _random_classes(am, rng, samples):
            layer = {k: am.layers(s, k) for k in range(5)}
            for a, b in itertools.product(range(5), repeat=2):
                if 1 <= a + b <= 4:
                    res.check(layer[a + b] == am.star_a(layer[a], layer[b]), (name, sorted(map(str, s)), a, b))
    return res


def suite_perp(params: CatParams, samples: int = 50) -> SuiteResult:
    res = SuiteResult("perp")
    rng = random.Random(SEED + 1)
    for name, am in law_models(params):
        for s in _random_classes(am, rng, samples):
            right = am.perp_right(s)
            left = am.perp_left(s)
            res.check(right == am.perp_right(am.gen(s)), (name, "gen", s))
            res.check(right == am.perp_right(am.filt(s)), (name, "filt right", s))
            res.check(left == am.perp_left(am.sub(s)), (name, "sub", s))
            res.check(left == am.perp_left(am.filt(s)), (name, "filt left", s))
    return res


def suite_torsion(params: CatParams, samples: int = 50) -> SuiteResult:
    """(<Gen S>, S^perp) and (^perp S, <Sub S>) are torsion pairs with canonical radicals."""
    res = SuiteResult("torsion")
    rng = random.Random(SEED + 2)
    for name, am in law_models(params):
        for s in _random_classes(am, rng, samples):
            t = am.filt(am.gen(s))
            f = am.filt(am.sub(s))
            res.check(am.is_torsion_class(t), (name, "gen quotient/extension closed", s))
            res.check(am.is_torsion_free_class(f), (name, "sub subobject/extension closed", s))
            res.check(am.perp_right(t) == am.perp_right(s), (name, "T^perp", s))
            res.check(am.perp_left(f) == am.perp_left(s), (name, "^perp F", s))
            res.check(radicals_canonical(am, am.torsion_pair(t)), (name, "radical", s))
            res.check(radicals_canonical(am, am.torsion_free_pair(f)), (name, "dual radical", s))
    return res


def radicals_canonical(am: AbelianModel, pair) -> bool:
    """For each indecomposable x the radical is the only subobject with torsion kernel and free cokernel."""
    for x in am.indecs:
        r = am.reps[x]
        rad = pair.radical(r)
        good = [u for u in repkit.enumerate_subreps(r)
                if am.in_add(u.as_rep(), pair.torsion) and am.in_add(repkit.quotient(r, u), pair.free)]
        if good != [rad]:
            return False
    return True


def suite_bijection(params: CatParams) -> SuiteResult:
    res = SuiteResult("bijection")
    for name, am in (("A2", AbelianModel.from_quiver(Quiver.linear(2))),
                     ("A3", AbelianModel.from_quiver(Quiver.linear(3)))):
        for pp in torsion3.nested_pairs(am):
            tri = torsion3.phi_inv(am, pp)
            res.check(torsion3.phi(am, tri) == pp, (name, pp))
            res.check(torsion3.phi_inv(am, torsion3.phi(am, tri)) == tri, (name, tri))
    if (params.w, params.n) == (torsion3.EXAMPLE_W, torsion3.EXAMPLE_N):
        td = example_data(params)
        tri = (td.E0, td.E1, td.E2)
        pp = ((td.pair_low.torsion, td.pair_low.free), (td.pair_high.torsion, td.pair_high.free))
        res.check(torsion3.phi(td.A, tri) == pp, "example phi")
        res.check(torsion3.phi_inv(td.A, pp) == tri, "example phi_inv")
    return res


def example_data(params: CatParams):
    m = build_arc_model(params)
    A = AbelianModel.from_sms(m, parse_arcs(torsion3.EXAMPLE_SA, params))
    B = AbelianModel.from_sms(m, parse_arcs(torsion3.EXAMPLE_SB, params))
    rep = torsion3.check_setup(A, B)
    if rep.pair is None:
        raise torsion3.SetupError(f"setup {rep.status}")
    return torsion3.compute_esets(rep.pair)


def suite_example(params: CatParams) -> SuiteResult:
    res = SuiteResult("example")
    if (params.w, params.n) != (torsion3.EXAMPLE_W, torsion3.EXAMPLE_N):
        res.skipped = "the worked example lives at w=6, n=5"
        return res
    td = example_data(params)
    for got, want, label in ((td.E0, torsion3.EXAMPLE_E0, "E0"), (td.E1, torsion3.EXAMPLE_E1, "E1"),
                             (td.E2, torsion3.EXAMPLE_E2, "E2")):
        res.check(sorted(x.pair() for x in got) == sorted(want), label)
    part = torsion3.filter_object(td, parse_arcs(torsion3.EXAMPLE_X, params))
    res.check(tuple(tuple(sorted(k.pair() for k in lv)) for lv in part.levels) == torsion3.EXAMPLE_CHAIN, "chain")
    res.check(torsion3.verify_triple(td).ok, "torsion triple")
    return res


def suite_sms(params: CatParams) -> SuiteResult:
    """is_sms against an independent brute-force filter over all n-subsets."""
    res = SuiteResult("sms")
    arcs = admissible_arcs(params)
    if len(arcs) > 40:
        res.skipped = f"{len(arcs)} arcs: too many subsets"
        return res
    for combo in itertools.combinations(arcs, params.n):
        ends = [e for t in combo for e in (t.a, t.b)]
        disjoint = len(set(ends)) == len(ends)
        nested = all(not (a.a < b.a < a.b < b.b or b.a < a.a < b.b < a.b) for a, b in itertools.combinations(combo, 2))
        res.check(is_sms(combo, params)[0] == (disjoint and nested), combo)
    return res


SUITES: dict[str, Callable[[CatParams], SuiteResult]] = {
    "oracle": suite_oracle,
    "serre": suite_serre,
    "cones": suite_cones,
    "sms": suite_sms,
    "star": suite_star,
    "perp": suite_perp,
    "torsion": suite_torsion,
    "bijection": suite_bijection,
    "example": suite_example,
}


def run(params: CatParams, names: list[str] | None = None) -> list[SuiteResult]:
    names = list(SUITES) if not names else names
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    return [SUITES[n](params) for n in names]
