"""Command line: ``negcat run``, ``negcat diagram`` and ``negcat selftest``.

Exit codes: 0 everything passed, 1 a verification failed, 2 bad input,
3 something could not be decided within the search bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib

from . import __version__, selftest, torsion3
from .abelian import AbelianModel, RealizationError, UnsupportedConfiguration
from .diagrams import FORMATS, KINDS, DiagramError, render
from .orbit import (Arc, ArcError, CatParams, Inconclusive, MultiComponentError, ParamError, build_arc_model,
                    is_sms, make_params, parse_arcs)

REPORT_VERSION = "negcat-report/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
TASK_KINDS = ("check_sms", "check_setup", "esets", "filter", "verify", "enumerate", "diagram")
BUNDLED = ("paper_4_2",)


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario; maps to exit code 2."""


# ---------------------------------------------------------------------------
# scenario loading


@dataclass
class Scenario:
    name: str
    params: CatParams
    sms: dict[str, list[Arc]]
    tasks: list[dict]


def resolve_scenario(path: str) -> tuple[str, str]:
    """Return (stem, text).  Bare bundled names work when no such file exists."""
    p = Path(path)
    if p.exists():
        return p.stem, p.read_text(encoding="utf-8")
    stem = p.name[:-5] if p.name.endswith(".toml") else p.name
    if stem in BUNDLED and p.parent == Path("."):
        return stem, resources.files("negcat").joinpath("data", f"{stem}.toml").read_text(encoding="utf-8")
    raise ScenarioError(f"{path}: no such file (bundled scenarios: {', '.join(BUNDLED)})")


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(f"{where}: expected an integer, got {v!r}")
    return v


def _arc_list(v, params: CatParams, where: str) -> list[Arc]:
    if not isinstance(v, list) or not all(isinstance(p, list) and len(p) == 2 for p in v):
        raise ScenarioError(f"{where}: expected a list of [a, b] pairs")
    try:
        return parse_arcs([(_int(p[0], where), _int(p[1], where)) for p in v], params)
    except ArcError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{name}: TOML parse error: {exc}") from None
    cat = data.get("category")
    if not isinstance(cat, dict) or "w" not in cat or "n" not in cat:
        raise ScenarioError(f"{name}: missing [category] table with w and n")
    try:
        params = make_params(_int(cat["w"], "category.w"), _int(cat["n"], "category.n"))
    except ParamError as exc:
        raise ScenarioError(f"{name}: {exc}") from None
    sms = {}
    for key, table in sorted(data.get("sms", {}).items()):
        if not isinstance(table, dict) or "arcs" not in table:
            raise ScenarioError(f"sms.{key}: expected a table with an arcs list")
        sms[key] = _arc_list(table["arcs"], params, f"sms.{key}.arcs")
    tasks = data.get("tasks", [])
    if not isinstance(tasks, list):
        raise ScenarioError(f"{name}: tasks must be an array of tables ([[tasks]])")
    for i, t in enumerate(tasks):
        validate_task(i, t, params, sms)
    return Scenario(name, params, sms, tasks)


def _task_label(i: int, t) -> str:
    kind = t.get("kind", "?") if isinstance(t, dict) else "?"
    return f"tasks[{i}] ({kind})"


def validate_task(i: int, t, params: CatParams, sms: dict) -> None:
    where = _task_label(i, t)
    if not isinstance(t, dict) or t.get("kind") not in TASK_KINDS:
        raise ScenarioError(f"{where}: kind must be one of {', '.join(TASK_KINDS)}")
    kind = t["kind"]
    if kind in ("check_setup", "esets", "filter", "verify", "diagram") and not {"A", "B"} <= set(sms):
        if kind != "diagram" or t.get("diagram") == "arquiver":
            raise ScenarioError(f"{where}: needs [sms.A] and [sms.B]")
    if kind == "check_sms" and "sms" in t:
        names = [t["sms"]] if isinstance(t["sms"], str) else t["sms"]
        missing = [s for s in names if s not in sms]
        if missing:
            raise ScenarioError(f"{where}: unknown sms {missing}")
    if kind == "enumerate" and t.get("sms", "A") not in sms:
        raise ScenarioError(f"{where}: unknown sms {t.get('sms', 'A')!r}")
    if kind == "filter":
        if "object" not in t:
            raise ScenarioError(f"{where}: missing object = [[a, b], ...]")
        t["_object"] = _arc_list(t["object"], params, f"{where}.object")
    if kind == "diagram":
        if t.get("diagram") not in KINDS:
            raise ScenarioError(f"{where}: diagram must be one of {', '.join(KINDS)}")
        if t.get("format", "svg") not in FORMATS:
            raise ScenarioError(f"{where}: format must be one of {', '.join(FORMATS)}")
        if t["diagram"] == "polygon" and t.get("sms", "A") not in sms:
            raise ScenarioError(f"{where}: unknown sms {t.get('sms', 'A')!r}")


# ---------------------------------------------------------------------------
# running


@dataclass
class Context:
    scenario: Scenario
    figure_dir: Path
    figures: list[str] = field(default_factory=list)
    _models: dict = field(default_factory=dict)
    _setup: object = None
    _td: object = None

    @property
    def model(self):
        return build_arc_model(self.scenario.params)

    def abelian(self, name: str) -> AbelianModel:
        if name not in self._models:
            arcs = self.scenario.sms[name]
            ok, why = is_sms(arcs, self.scenario.params)
            if not ok:
                raise TaskFailure(f"sms.{name} is not a simple-minded system: {why}")
            self._models[name] = AbelianModel.from_sms(self.model, arcs)
        return self._models[name]

    def setup(self):
        if self._setup is None:
            self._setup = torsion3.check_setup(self.abelian("A"), self.abelian("B"))
        return self._setup

    def torsion_data(self):
        if self._td is None:
            rep = self.setup()
            if rep.status == "inconclusive":
                raise Inconclusive("setup could not be decided")
            if rep.pair is None:
                raise TaskFailure("(A, B) fails the setup checks; run check_setup for details")
            self._td = torsion3.compute_esets(rep.pair)
        return self._td


class TaskFailure(Exception):
    pass


def _pairs(xs) -> list:
    return [list(x.pair()) for x in sorted(xs)]


def task_check_sms(ctx: Context, t: dict) -> tuple[str, dict]:
    names = t.get("sms", sorted(ctx.scenario.sms))
    names = [names] if isinstance(names, str) else names
    out = {}
    for name in names:
        ok, why = is_sms(ctx.scenario.sms[name], ctx.scenario.params)
        out[name] = {"accepted": ok, "reason": why}
    return ("pass" if all(v["accepted"] for v in out.values()) else "fail"), {"sms": out}


def task_check_setup(ctx: Context, t: dict) -> tuple[str, dict]:
    rep = ctx.setup()
    return rep.status, rep.to_json()


def task_esets(ctx: Context, t: dict) -> tuple[str, dict]:
    return "pass", ctx.torsion_data().to_json()


def task_filter(ctx: Context, t: dict) -> tuple[str, dict]:
    td = ctx.torsion_data()
    part = torsion3.filter_object(td, t["_object"])
    found = torsion3.distinct_up_to_iso(torsion3.brute_force_filtrations(td, t["_object"]))
    out = part.to_json()
    out["filtrations_found"] = len(found)
    return ("pass" if len(found) == 1 else "fail"), out


def task_verify(ctx: Context, t: dict) -> tuple[str, dict]:
    td = ctx.torsion_data()
    rep = torsion3.verify_triple(td)
    out = rep.to_json()
    triple = (td.E0, td.E1, td.E2)
    pp = ((td.pair_low.torsion, td.pair_low.free), (td.pair_high.torsion, td.pair_high.free))
    out["phi_matches_pairs"] = torsion3.phi(td.A, triple) == pp
    out["phi_inv_matches_triple"] = torsion3.phi_inv(td.A, pp) == triple
    ok = rep.ok and out["phi_matches_pairs"] and out["phi_inv_matches_triple"]
    return ("pass" if ok else "fail"), out


def task_enumerate(ctx: Context, t: dict) -> tuple[str, dict]:
    name = t.get("sms", "A")
    am = ctx.abelian(name)
    tors = torsion3.enumerate_torsion_classes(am)
    free = torsion3.enumerate_torsion_free_classes(am)
    out = {"sms": name, "indecomposables": len(am.indecs), "torsion_classes": len(tors),
           "torsion_free_classes": len(free)}
    if t.get("list", False):
        out["classes"] = sorted(_pairs(c) for c in tors)
    return "pass", out


def task_diagram(ctx: Context, t: dict, index: int) -> tuple[str, dict]:
    kind, fmt = t["diagram"], t.get("format", "svg")
    m = ctx.model
    if kind == "polygon":
        name = t.get("sms", "A")
        text = render(kind, fmt, m, arcs=ctx.scenario.sms[name], title=f"sms {name}")
        extra = {"sms": name}
    else:
        fills, outlines = {}, {"A": ctx.abelian("A").everything, "B": ctx.abelian("B").everything}
        if t.get("fill", True):
            td = ctx.torsion_data()
            fills = {"E0": td.E0, "E1": td.E1, "E2": td.E2}
        text = render(kind, fmt, m, fills=fills, outlines=outlines)
        extra = {"filled": sorted(fills)}
    fname = f"{ctx.scenario.name}_{index}_{kind}.{fmt}"
    ctx.figure_dir.mkdir(parents=True, exist_ok=True)
    (ctx.figure_dir / fname).write_text(text, encoding="utf-8")
    ctx.figures.append(fname)
    return "pass", {"file": fname, "diagram": kind, "format": fmt, **extra}


TASKS = {
    "check_sms": task_check_sms,
    "check_setup": task_check_setup,
    "esets": task_esets,
    "filter": task_filter,
    "verify": task_verify,
    "enumerate": task_enumerate,
}


def run_task(ctx: Context, i: int, t: dict) -> dict:
    entry = {"index": i, "kind": t["kind"]}
    try:
        if t["kind"] == "diagram":
            status, result = task_diagram(ctx, t, i)
        else:
            status, result = TASKS[t["kind"]](ctx, t)
    except Inconclusive as exc:
        status, result = "inconclusive", {"error": str(exc)}
    except (TaskFailure, torsion3.ModelError, torsion3.SetupError, RealizationError) as exc:
        status, result = "fail", {"error": str(exc)}
    except (UnsupportedConfiguration, MultiComponentError) as exc:
        raise ScenarioError(f"{_task_label(i, t)}: {exc}") from None
    entry["status"] = status
    entry["result"] = result
    return entry


def overall(statuses) -> str:
    statuses = list(statuses)
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


def run_scenario(sc: Scenario, figure_dir: Path) -> dict:
    ctx = Context(sc, figure_dir)
    entries = [run_task(ctx, i, t) for i, t in enumerate(sc.tasks)]
    return {
        "version": REPORT_VERSION,
        "negcat": __version__,
        "scenario": sc.name,
        "category": {"w": sc.params.w, "n": sc.params.n, "N": sc.params.N},
        "sms": {k: _pairs(v) for k, v in sc.sms.items()},
        "tasks": entries,
        "figures": ctx.figures,
        "status": overall(e["status"] for e in entries),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


EXIT_FOR = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}


# ---------------------------------------------------------------------------
# subcommands


def cmd_run(args) -> int:
    stem, text = resolve_scenario(args.scenario)
    sc = parse_scenario(text, stem)
    if args.figures:
        fig_dir = Path(args.figures)
    elif args.out:
        fig_dir = Path(args.out).parent
    else:
        fig_dir = Path(".")
    report = run_scenario(sc, fig_dir)
    out = dump_report(report)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    print(f"{stem}: {report['status']}", file=sys.stderr)
    return EXIT_FOR[report["status"]]


def parse_params(s: str) -> CatParams:
    try:
        w, n = (int(v) for v in s.split(","))
    except ValueError:
        raise ScenarioError(f"--params expects w,n (two integers), got {s!r}") from None
    try:
        return make_params(w, n)
    except ParamError as exc:
        raise ScenarioError(str(exc)) from None


def cmd_diagram(args) -> int:
    if args.params:
        params = parse_params(args.params)
        m = build_arc_model(params)
        arcs = parse_arcs_arg(args.arcs, params) if args.arcs else []
        text = render(args.kind, args.format, m, arcs=arcs)
    else:
        stem, src = resolve_scenario(args.scenario)
        sc = parse_scenario(src, stem)
        ctx = Context(sc, Path("."))
        m = ctx.model
        if args.kind == "polygon":
            arcs = parse_arcs_arg(args.arcs, sc.params) if args.arcs else sc.sms.get(args.sms, [])
            text = render("polygon", args.format, m, arcs=arcs, title=f"sms {args.sms}" if not args.arcs else "")
        else:
            fills, outlines = {}, {}
            if {"A", "B"} <= set(sc.sms):
                outlines = {"A": ctx.abelian("A").everything, "B": ctx.abelian("B").everything}
                td = ctx.torsion_data()
                fills = {"E0": td.E0, "E1": td.E1, "E2": td.E2}
            text = render("arquiver", args.format, m, fills=fills, outlines=outlines)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parse_arcs_arg(s: str, params: CatParams) -> list[Arc]:
    try:
        pairs = [tuple(int(v) for v in chunk.split(",")) for chunk in s.split()]
        return parse_arcs(pairs, params)
    except (ValueError, ArcError, IndexError) as exc:
        raise ScenarioError(f"--arcs: {exc}") from None


def cmd_selftest(args) -> int:
    params = parse_params(args.params)
    names = args.suite or None
    try:
        results = selftest.run(params, names)
    except KeyError as exc:
        raise ScenarioError(exc.args[0]) from None
    for r in results:
        line = f"{r.name:10s} {r.status:8s} passed={r.passed} failed={r.failed}"
        if r.skipped:
            line += f" ({r.skipped})"
        print(line)
        for f in r.failures:
            print(f"    {f}")
    if args.json:
        Path(args.json).write_text(json.dumps({"version": REPORT_VERSION, "params": [params.w, params.n],
                                               "suites": [r.to_json() for r in results]},
                                              sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="negcat", description="Torsion triples in negative cluster categories of type A.")
    ap.add_argument("--version", action="version", version=f"negcat {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario file and write a JSON report")
    r.add_argument("scenario", help="path to a scenario .toml, or a bundled name such as paper_4_2")
    r.add_argument("--out", help="report path (default: stdout); figures go next to it")
    r.add_argument("--figures", help="directory for diagram files (overrides the --out directory)")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("diagram", help="draw the polygon or the AR quiver")
    d.add_argument("--kind", choices=KINDS, default="polygon")
    d.add_argument("--format", choices=FORMATS, default="svg")
    d.add_argument("--scenario", default="paper_4_2", help="scenario supplying arcs and colourings")
    d.add_argument("--sms", default="A", help="which sms of the scenario to draw on the polygon")
    d.add_argument("--params", help="w,n: draw a bare category instead of a scenario")
    d.add_argument("--arcs", help='arcs to draw on the polygon, e.g. "1,7 0,13"')
    d.add_argument("--out", help="output file (default: stdout)")
    d.set_defaults(func=cmd_diagram)

    s = sub.add_parser("selftest", help="run the built-in invariant suites")
    s.add_argument("--suite", action="append", help=f"suite name, repeatable ({', '.join(selftest.SUITES)})")
    s.add_argument("--params", default="6,5", help="w,n for the category-level suites (default 6,5)")
    s.add_argument("--json", help="also write the results as JSON to this file")
    s.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
