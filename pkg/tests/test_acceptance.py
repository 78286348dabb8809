"""Acceptance criteria, one test each.  A PASS/FAIL line per criterion is printed
in the terminal summary (see conftest.py)."""

import itertools
import subprocess
import sys

import pytest

from negcat import selftest, torsion3
from negcat.abelian import AbelianModel, ext_quiver, is_isomorphic_digraph
from negcat.orbit import admissible_arcs, build_arc_model, is_sms, make_params, parse_arcs
from negcat.repkit import Quiver

acc = pytest.mark.acceptance


def pairs(xs):
    return {x.pair() for x in xs}


@acc(1, "E-sets of the w=6, n=5 example")
def test_esets(td65):
    assert pairs(td65.E0) == {(1, 7), (7, 13)}
    assert pairs(td65.E1) == {(0, 34), (0, 20), (14, 20), (14, 34), (21, 34), (0, 13), (28, 34)}
    assert pairs(td65.E2) == {(21, 27)}


@acc(2, "filtration of (7,27) and its uniqueness")
def test_filtration(td65, m65):
    x = [m65.parse(7, 27)]
    part = torsion3.filter_object(td65, x)
    assert [[k.pair() for k in lv] for lv in part.levels] == [[], [(7, 13)], [(7, 20)], [(7, 27)]]
    assert [[k.pair() for k in q] for q in part.quotients] == [[(7, 13)], [(14, 20)], [(21, 27)]]
    for q, cls in zip(part.quotients, (td65.E0, td65.E1, td65.E2)):
        assert set(q) <= cls
    found = torsion3.distinct_up_to_iso(torsion3.brute_force_filtrations(td65, x))
    assert len(found) == 1
    assert found[0].signature() == part.signature()


@acc(3, "the two displayed triangles, arc-level and as short exact sequences")
def test_triangles(m65, A65):
    a = m65.parse
    for x, y, z in (((7, 13), (7, 20), (14, 20)), ((7, 20), (7, 27), (21, 27))):
        assert m65.middle_terms(a(*x), a(*z)) == [(a(*y),)]
        assert A65.realized_middle_term(a(*x), a(*z)) == (a(*y),)


@acc(4, "E5 for A and B, both sandwich inclusions with witnesses")
def test_setup(setup65, m65, A65, B65):
    assert setup65.status == "pass"
    assert setup65.e_levels == {"A": 5, "B": 5}
    for am in (A65, B65):
        for x in am.indecs:
            for y in am.indecs:
                for i in range(1, 6):
                    assert m65.hom(x, m65.shift(y, -i)) == 0
    sandwiches = [c for c in setup65.checks if "*" in c.name]
    assert len(sandwiches) == 2
    assert [len(c.witnesses) for c in sandwiches] == [15, 10]


@acc(5, "Ext-quiver of S_A is 1->2->3->4<-5")
def test_ext_quiver(m65, p65):
    q = ext_quiver(m65, parse_arcs(torsion3.EXAMPLE_SA, p65))
    assert is_isomorphic_digraph(q, Quiver(5, ((1, 2), (2, 3), (3, 4), (5, 4))))


@acc(6, "Calabi-Yau property at (6,5) and (2,3)")
def test_calabi_yau():
    counts = []
    for w, n in ((6, 5), (2, 3)):
        m = build_arc_model(make_params(w, n))
        eq = 0
        for x in m.arcs:
            sx = m.shift(x, -w)
            for y in m.arcs:
                assert m.hom(x, y) == m.hom(y, sx)
                eq += 1
        counts.append(eq)
    assert counts == [10000, 225]


@acc(7, "rule-based Hom in D^b equals linear algebra, n <= 4, |m| <= 3")
def test_oracle_equivalence(p65):
    res = selftest.suite_oracle(p65)
    assert res.failed == 0 and res.passed > 0, res.failures


@acc(8, "abelian law suite on A2, A3 and the (6,5) A-model")
def test_law_suite(p65):
    for suite in (selftest.suite_star, selftest.suite_perp, selftest.suite_torsion):
        res = suite(p65)
        assert res.failed == 0 and res.passed > 0, (res.name, res.failures)


@acc(9, "perpendicular identities and the chain 0 in E0 in perp E2 in A")
def test_perp_identities(td65, m65, A65, B65):
    A = A65
    pair = td65.pair
    a0 = torsion3.intersect_shifted(pair, 0)
    a2 = torsion3.intersect_shifted(pair, 2)
    b1 = frozenset(m65.shift(x, -1) for x in B65.everything)
    b2 = frozenset(m65.shift(x, -2) for x in B65.everything)
    assert A.perp_right(td65.E0) == A.perp_right(a0) == A.everything & set(m65.star_class(b1, b2))
    assert A.perp_left(td65.E2) == A.perp_left(a2) == A.everything & set(m65.star_class(B65.everything, b1))
    middle = A.perp_left(td65.E2)
    assert frozenset() <= td65.E0 <= middle <= A.everything
    assert all(td65.identities.values())


@acc(10, "torsion triple at (6,5) and phi / phi_inv round trips")
def test_bijection(td65, p65):
    assert torsion3.verify_triple(td65).ok
    for q in (Quiver.linear(2), Quiver.linear(3)):
        am = AbelianModel.from_quiver(q)
        nested = torsion3.nested_pairs(am)
        assert nested
        for pp in nested:
            tri = torsion3.phi_inv(am, pp)
            assert torsion3.phi(am, tri) == pp
            assert torsion3.phi_inv(am, torsion3.phi(am, tri)) == tri
    tri = (td65.E0, td65.E1, td65.E2)
    pp = ((td65.pair_low.torsion, td65.pair_low.free), (td65.pair_high.torsion, td65.pair_high.free))
    assert torsion3.phi(td65.A, tri) == pp
    assert torsion3.phi_inv(td65.A, pp) == tri


@acc(11, "simple-minded system recognition")
def test_sms_recognition(p65, m65):
    a = m65.parse
    assert is_sms(parse_arcs(torsion3.EXAMPLE_SA, p65), p65) == (True, "ok")
    assert is_sms(parse_arcs(torsion3.EXAMPLE_SB, p65), p65) == (True, "ok")
    shared = [a(1, 7), a(1, 14), a(28, 34), a(21, 27), a(15, 21)]
    ok, why = is_sms(shared, p65)
    assert not ok and "share an endpoint" in why
    crossing = [a(1, 14), a(7, 20), a(28, 34), a(21, 27), a(0, 6)]
    ok, why = is_sms(crossing, p65)
    assert not ok and "cross" in why
    p = make_params(2, 3)
    accepted = {c for c in itertools.combinations(admissible_arcs(p), 3) if is_sms(c, p)[0]}
    brute = set()
    for c in itertools.combinations(admissible_arcs(p), 3):
        ends = [e for t in c for e in t.pair()]
        if len(set(ends)) < 6:
            continue
        if any(x.a < y.a < x.b < y.b or y.a < x.a < y.b < x.b for x, y in itertools.combinations(c, 2)):
            continue
        brute.add(c)
    assert accepted == brute and accepted


@acc(12, "byte-identical JSON and SVG for the bundled scenario")
def test_determinism(tmp_path):
    outputs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        proc = subprocess.run([sys.executable, "-m", "negcat.cli", "run", "paper_4_2", "--out", str(d / "report.json")],
                              capture_output=True, text=True, cwd=d)
        assert proc.returncode == 0, proc.stderr
        outputs.append({f.name: f.read_bytes() for f in sorted(d.iterdir())})
    assert outputs[0] == outputs[1]
    assert sum(name.endswith(".svg") for name in outputs[0]) == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
