"""Proper abelian subcategories generated by simple-minded systems.

An SMS with a type A Ext-quiver Q generates a subcategory equivalent to
mod kQ.  The model keeps three views in sync: the SMS arcs, the interval
representations of Q over F2, and a dictionary between the two.  Classes of
objects are frozensets of indecomposable keys (arcs, or interval labels for a
bare quiver model); additive closure is implicit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from . import repkit
from .orbit import Arc, ArcModel, Inconclusive, MultiComponentError, NoExtensionError, is_sms
from .repkit import Quiver, Rep, SubRep

Key = Hashable
ClassA = frozenset


class UnsupportedConfiguration(ValueError):
    """The SMS has an Ext-quiver this package does not model."""


class RealizationError(RuntimeError):
    """The representation model disagrees with the arc model."""


class NotATorsionClass(ValueError):
    pass


@dataclass(frozen=True)
class Filtration:
    """0 = x_0 ⊆ x_1 ⊆ ... ⊆ x_k = x with the successive quotients."""

    x: Rep
    chain: tuple[SubRep, ...]
    quotients: tuple[Rep, ...]

    def to_json(self) -> dict:
        return {
            "object": self.x.to_json(),
            "chain": [s.to_json() for s in self.chain],
            "quotient_dims": [list(q.dims) for q in self.quotients],
        }


@dataclass(frozen=True)
class TorsionPair:
    torsion: ClassA
    free: ClassA
    radical: Callable[[Rep], SubRep] = field(compare=False, repr=False)


def _label_sort_key(k):
    return (0, k.a, k.b) if isinstance(k, Arc) else (1,) + tuple(k)


class AbelianModel:
    """Finite-length abelian category mod kQ, Q of type A, with named indecomposables."""

    def __init__(self, quiver: Quiver, names: dict[tuple[int, int], Key],
                 arc_model: ArcModel | None = None, sms: Sequence[Arc] = ()):
        self.quiver = quiver
        self.arc_model = arc_model
        self.sms = tuple(sms)
        self.key_of_label = dict(names)
        self.label_of = {k: lab for lab, k in names.items()}
        if len(self.label_of) != len(names):
            raise RealizationError("two interval modules share a name")
        self.indecs: list[Key] = sorted(self.label_of, key=_label_sort_key)
        self.reps: dict[Key, Rep] = {k: repkit.interval_rep(quiver, *lab) for k, lab in self.label_of.items()}
        order = quiver.line_order()
        pos = {v: i + 1 for i, v in enumerate(order)}
        self.simples: list[Key] = [names[(pos[v], pos[v])] for v in quiver.vertices]
        self._hom = {(x, y): repkit.hom_dim(self.reps[x], self.reps[y]) for x in self.indecs for y in self.indecs}
        self._ses: dict[Key, list[tuple[SubRep, tuple, tuple]]] = {}

    # --- constructors
    @classmethod
    def from_quiver(cls, quiver: Quiver) -> "AbelianModel":
        """Model of mod kQ whose indecomposables are named by interval labels."""
        if not quiver.is_type_a():
            raise UnsupportedConfiguration("only type A quivers are supported")
        return cls(quiver, {lab: lab for lab in repkit.intervals(quiver)})

    @classmethod
    def from_sms(cls, model: ArcModel, sms: Iterable[Arc]) -> "AbelianModel":
        simples = sorted(set(sms))
        ok, reason = is_sms(simples, model.params)
        if not ok:
            raise UnsupportedConfiguration(f"not a simple-minded system: {reason}")
        quiver = ext_quiver(model, simples)
        order = quiver.line_order()
        if order is None:
            raise UnsupportedConfiguration(f"Ext-quiver {quiver.arrows} is not of type A")
        arrows = set(quiver.arrows)
        names: dict[tuple[int, int], Arc] = {}
        for i, v in enumerate(order, start=1):
            names[(i, i)] = simples[v - 1]
        n = len(order)
        relations = []
        # grow each interval by one vertex at its right end, one triangle at a time;
        # an interval with no extension is a zero relation of the Ext-quiver
        for length in range(2, n + 1):
            for i in range(1, n - length + 2):
                j = i + length - 1
                if (i, j - 1) not in names or (i + 1, j) not in names:
                    continue
                prev, last = order[j - 2], order[j - 1]
                if (prev, last) in arrows:
                    sub, top = names[(j, j)], names[(i, j - 1)]
                else:
                    sub, top = names[(i, j - 1)], names[(j, j)]
                try:
                    mids = model.middle_terms(sub, top)
                except NoExtensionError:
                    relations.append(_relation_path(order[i - 1 : j], arrows))
                    continue
                except MultiComponentError as exc:
                    raise RealizationError(f"cannot realize interval [{i},{j}]: {exc}") from exc
                mids = [m for m in mids if len(m) == 1]
                if len(mids) != 1:
                    raise RealizationError(f"interval [{i},{j}] has no indecomposable middle term")
                names[(i, j)] = mids[0][0]
        if relations:
            quiver = Quiver(quiver.vertex_count, quiver.arrows, tuple(relations))
        am = cls(quiver, names, model, simples)
        am.check_realization()
        return am

    def check_realization(self) -> None:
        """Hom and Ext in the rep model agree with the arc model on every pair."""
        m = self.arc_model
        if m is None:
            return
        for x, y in itertools.product(self.indecs, repeat=2):
            rx, ry = self.reps[x], self.reps[y]
            if self.hom(x, y) != m.hom(x, y):
                raise RealizationError(f"Hom({x},{y}): rep {self.hom(x, y)} vs arcs {m.hom(x, y)}")
            e = repkit.ext1_dim(rx, ry)
            if e != m.hom(x, m.shift(y, 1)):
                raise RealizationError(f"Ext({x},{y}): rep {e} vs arcs {m.hom(x, m.shift(y, 1))}")

    # --- dictionary
    def __len__(self) -> int:
        return len(self.indecs)

    @property
    def everything(self) -> ClassA:
        return frozenset(self.indecs)

    def hom(self, x: Key, y: Key) -> int:
        return self._hom[(x, y)]

    def keys_of(self, r: Rep) -> tuple:
        """Indecomposable summands of ``r`` as keys, with multiplicity."""
        if r.is_zero():
            return ()
        return tuple(sorted((self.key_of_label[lab] for lab in repkit.decompose_labels(r, bound=10**6)),
                            key=_label_sort_key))

    def rep_of(self, xs: Iterable[Key]) -> Rep:
        return repkit.direct_sum([self.reps[x] for x in xs], self.quiver)

    def member(self, xs: Iterable[Key]) -> Rep | None:
        xs = list(xs)
        if any(x not in self.reps for x in xs):
            return None
        return self.rep_of(xs)

    def in_add(self, r: Rep, cls: ClassA) -> bool:
        return all(k in cls for k in self.keys_of(r))

    def ses_types(self, y: Key) -> list[tuple[SubRep, tuple, tuple]]:
        """Every subrep u of y with the summands of u and of y/u."""
        if y not in self._ses:
            r = self.reps[y]
            out = []
            for u in repkit.enumerate_subreps(r):
                out.append((u, self.keys_of(u.as_rep()), self.keys_of(repkit.quotient(r, u))))
            self._ses[y] = out
        return self._ses[y]

    def subobject_keys(self, y: Key) -> frozenset:
        return frozenset(k for _, sub, _ in self.ses_types(y) for k in sub)

    def quotient_keys(self, y: Key) -> frozenset:
        return frozenset(k for _, _, quot in self.ses_types(y) for k in quot)

    def realized_middle_term(self, x: Key, z: Key) -> tuple | None:
        """Middle term of the nonsplit extension of z by x, found by search over reps.

        Returns None if Ext^1(z, x) = 0.  Candidates are all sums of
        indecomposables with the right dimension vector other than x ⊕ z.
        """
        rx, rz = self.reps[x], self.reps[z]
        if repkit.ext1_dim(rz, rx) == 0:
            return None
        target = tuple(a + b for a, b in zip(rx.dims, rz.dims))
        split = tuple(sorted((x, z), key=_label_sort_key))
        found = []
        for cand in _sums_with_dims(self, target):
            if cand == split:
                continue
            y = self.rep_of(cand)
            for u in repkit.enumerate_subreps(y):
                if self.keys_of(u.as_rep()) == (x,) and self.keys_of(repkit.quotient(y, u)) == (z,):
                    found.append(cand)
                    break
        if len(found) != 1:
            raise RealizationError(f"expected one nonsplit middle term, found {found}")
        return found[0]

    # --- classes
    def cls(self, xs: Iterable[Key]) -> ClassA:
        xs = frozenset(xs)
        bad = [x for x in xs if x not in self.reps]
        if bad:
            raise KeyError(f"not indecomposables of this model: {bad}")
        return xs

    def gen(self, s: Iterable[Key]) -> ClassA:
        reps = [self.reps[k] for k in s]
        return frozenset(x for x in self.indecs
                         if repkit.trace(reps, self.reps[x]) == repkit.full_sub(self.reps[x]))

    def sub(self, s: Iterable[Key]) -> ClassA:
        reps = [self.reps[k] for k in s]
        return frozenset(x for x in self.indecs if repkit.reject(reps, self.reps[x]).total_dim == 0)

    def star_a(self, xs: Iterable[Key], zs: Iterable[Key]) -> ClassA:
        """Indecomposables y with a short exact sequence x ↣ y ↠ z, x ∈ add X, z ∈ add Z."""
        xs, zs = frozenset(xs), frozenset(zs)
        out = set()
        for y in self.indecs:
            try:
                types = self.ses_types(y)
            except repkit.BoundExceeded as exc:
                raise Inconclusive(str(exc)) from exc
            if any(all(k in xs for k in sub) and all(k in zs for k in quot) for _, sub, quot in types):
                out.add(y)
        return frozenset(out)

    def layers(self, s: Iterable[Key], n: int) -> ClassA:
        """(S)_n: indecomposables filtered in n steps with factors in add S."""
        if n < 0:
            raise ValueError("n must be non-negative")
        s = frozenset(s)
        cur: ClassA = frozenset()
        for _ in range(n):
            cur = self.star_a(cur, s)
        return cur

    def filt(self, s: Iterable[Key]) -> ClassA:
        s = frozenset(s)
        cur, k = frozenset(), 0
        while True:
            k += 1
            nxt = self.layers(s, k)
            if nxt == cur:
                return cur
            cur = nxt

    def find_filtration(self, x: Rep, s: Iterable[Key], n: int) -> Filtration | None:
        """A filtration of x of length n with every factor in add S, if one exists."""
        s = frozenset(s)

        def search(r: Rep, k: int) -> list[SubRep] | None:
            if r.is_zero():
                return [repkit.zero_sub(r)] * (k + 1) if k >= 0 else None
            if k == 0:
                return None
            for u in repkit.enumerate_subreps(r):
                if u.total_dim == r.total_dim:
                    continue
                if not self.in_add(repkit.quotient(r, u), s):
                    continue
                inner = search(u.as_rep(), k - 1)
                if inner is not None:
                    return [repkit.subrep_of_sub(u, c) for c in inner] + [repkit.full_sub(r)]
            return None

        chain = search(x, n)
        if chain is None:
            return None
        quots = tuple(repkit.quotient(chain[i + 1].as_rep(), _relative(chain[i], chain[i + 1]))
                      for i in range(len(chain) - 1))
        return Filtration(x, tuple(chain), quots)

    def perp_right(self, s: Iterable[Key]) -> ClassA:
        s = list(s)
        return frozenset(x for x in self.indecs if all(self.hom(t, x) == 0 for t in s))

    def perp_left(self, s: Iterable[Key]) -> ClassA:
        s = list(s)
        return frozenset(x for x in self.indecs if all(self.hom(x, t) == 0 for t in s))

    def is_quotient_closed(self, t: Iterable[Key]) -> bool:
        t = frozenset(t)
        return all(self.quotient_keys(x) <= t for x in t)

    def is_sub_closed(self, f: Iterable[Key]) -> bool:
        f = frozenset(f)
        return all(self.subobject_keys(x) <= f for x in f)

    def is_extension_closed(self, c: Iterable[Key]) -> bool:
        c = frozenset(c)
        return self.star_a(c, c) <= c

    def is_torsion_class(self, t: Iterable[Key]) -> bool:
        return self.is_quotient_closed(t) and self.is_extension_closed(t)

    def is_torsion_free_class(self, f: Iterable[Key]) -> bool:
        return self.is_sub_closed(f) and self.is_extension_closed(f)

    def torsion_pair(self, t: Iterable[Key]) -> TorsionPair:
        t = frozenset(t)
        if not self.is_torsion_class(t):
            raise NotATorsionClass(f"{sorted(t, key=_label_sort_key)} is not a torsion class")
        reps = [self.reps[k] for k in sorted(t, key=_label_sort_key)]
        return TorsionPair(t, self.perp_right(t), lambda x: repkit.trace(reps, x))

    def torsion_free_pair(self, f: Iterable[Key]) -> TorsionPair:
        """The torsion pair (^⊥F, F); the radical is the reject of F."""
        f = frozenset(f)
        if not self.is_torsion_free_class(f):
            raise NotATorsionClass(f"{sorted(f, key=_label_sort_key)} is not a torsion-free class")
        reps = [self.reps[k] for k in sorted(f, key=_label_sort_key)]
        return TorsionPair(self.perp_left(f), f, lambda x: repkit.reject(reps, x))

    def sorted_keys(self, c: Iterable[Key]) -> list:
        return sorted(c, key=_label_sort_key)


def _relative(inner: SubRep, outer: SubRep) -> SubRep:
    """``inner`` as a subrep of ``outer.as_rep()``."""
    bases = []
    for bi, bo in zip(inner.bases, outer.bases):
        if bo.shape[1] == 0:
            bases.append(repkit.zeros(0, bi.shape[1]))
        else:
            bases.append(repkit.solve(bo, bi))
    return SubRep(outer.as_rep(), tuple(bases))


def _sums_with_dims(am: AbelianModel, target: tuple[int, ...]):
    """All multisets of indecomposables whose dimension vectors add up to target."""
    keys = am.indecs
    dims = [am.reps[k].dims for k in keys]

    def rec(start: int, rest: tuple[int, ...], acc: list):
        if not any(rest):
            yield tuple(sorted(acc, key=_label_sort_key))
            return
        for i in range(start, len(keys)):
            d = dims[i]
            if all(a <= b for a, b in zip(d, rest)):
                acc.append(keys[i])
                yield from rec(i, tuple(b - a for a, b in zip(d, rest)), acc)
                acc.pop()

    yield from rec(0, target, [])


def _relation_path(vertices: Sequence[int], arrows: set) -> tuple[int, ...]:
    """The vertices as a directed path; anything else is not a monomial relation."""
    vs = list(vertices)
    if all((s, t) in arrows for s, t in zip(vs, vs[1:])):
        return tuple(vs)
    if all((t, s) in arrows for s, t in zip(vs, vs[1:])):
        return tuple(reversed(vs))
    raise UnsupportedConfiguration(f"interval {vs} has no extension but is not a directed path")


def ext_quiver(model: ArcModel, simples: Sequence[Arc]) -> Quiver:
    """Vertex i is simples[i-1]; arrows i -> j counted by dim Hom(s_i, Σ s_j)."""
    arrows = []
    for i, s in enumerate(simples, start=1):
        for j, t in enumerate(simples, start=1):
            k = model.hom(s, model.shift(t, 1))
            if k > 1:
                raise UnsupportedConfiguration(f"{k} arrows between {s} and {t}")
            if k and i == j:
                raise UnsupportedConfiguration(f"self-extension of {s}")
            arrows += [(i, j)] * k
    try:
        return Quiver(len(simples), tuple(arrows))
    except repkit.RepError as exc:
        raise UnsupportedConfiguration(f"Ext-quiver is not acyclic: {exc}") from exc


def is_isomorphic_digraph(q1: Quiver, q2: Quiver) -> bool:
    """Brute-force directed graph isomorphism for small quivers."""
    if q1.vertex_count != q2.vertex_count or len(q1.arrows) != len(q2.arrows):
        return False
    target = sorted(q2.arrows)
    for perm in itertools.permutations(q2.vertices):
        mapped = sorted((perm[s - 1], perm[t - 1]) for s, t in q1.arrows)
        if mapped == target:
            return True
    return False
