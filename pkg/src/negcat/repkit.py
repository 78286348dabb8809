"""Exact linear algebra over F2 for representations of acyclic quivers.

Quivers may carry zero relations (directed paths whose composite must
vanish); reps of such bound quivers are checked against them.

Everything here is deliberately brute force: Hom spaces are solved as
nullspaces of the intertwiner system, subrepresentations are enumerated
exhaustively.  This module is the oracle the combinatorial rules in the rest
of the package are checked against, and it is also the concrete model of the
abelian subcategories built in :mod:`negcat.abelian`.

Vertices are numbered from 1.  A map attached to an arrow ``i -> j`` is a
``dims[j] x dims[i]`` matrix with entries in {0, 1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_DIM_BOUND = 12


class RepError(ValueError):
    """Invalid quiver or representation data."""


class DimensionVectorError(RepError):
    pass


class QuiverMismatch(RepError):
    pass


class BoundExceeded(RuntimeError):
    """An exhaustive search was refused because the input is too large."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: total dimension {size} exceeds bound {bound}")
        self.size = size
        self.bound = bound


class UnsupportedQuiver(RepError):
    pass


# ---------------------------------------------------------------------------
# F2 matrices


def f2(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.uint8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a.astype(np.int64) @ b.astype(np.int64) & 1).astype(np.uint8)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F2 and the pivot columns."""
    r = f2(m).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        p = row + nz[0]
        if p != row:
            r[[row, p]] = r[[p, row]]
        hits = np.nonzero(r[:, col])[0]
        for h in hits:
            if h != row:
                r[h] ^= r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> np.ndarray:
    """Columns form a basis of ``{x : m x = 0}``."""
    rows, cols = m.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return eye(cols)
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = r[i, fc]
    return basis


def colspace(m: np.ndarray) -> np.ndarray:
    """Canonical basis of the column space (transpose of the nonzero RREF rows)."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return zeros(m.shape[0], 0)
    r, pivots = rref(m.T)
    return r[: len(pivots)].T.copy()


def intersect(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Canonical basis of colspace(a) ∩ colspace(b)."""
    d = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(d, 0)
    ns = nullspace(np.hstack([a, b]))
    return colspace(mul(a, ns[: a.shape[1]]))


def contains(big: np.ndarray, small: np.ndarray) -> bool:
    """True if colspace(small) ⊆ colspace(big)."""
    if small.shape[1] == 0:
        return True
    return rank(np.hstack([big, small])) == rank(big)


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Some x with a x = b (b may have several columns)."""
    rows, cols = a.shape
    aug, pivots = rref(np.hstack([a, b]))
    if any(p >= cols for p in pivots):
        raise ArithmeticError("inconsistent F2 system")
    x = zeros(cols, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = aug[i, cols:]
    return x


def annihilator_rows(u: np.ndarray, d: int) -> np.ndarray:
    """Rows spanning the linear forms vanishing on colspace(u); a quotient map."""
    if u.shape[1] == 0:
        return eye(d)
    return nullspace(u.T).T.copy()


# ---------------------------------------------------------------------------
# Quivers and representations


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...] = ()
    # zero relations, each a directed path v0 -> v1 -> ... -> vk with k >= 2
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(self, "relations", tuple(sorted(tuple(r) for r in self.relations)))
        if self.vertex_count < 0:
            raise RepError("negative vertex count")
        for s, t in self.arrows:
            if not (1 <= s <= self.vertex_count and 1 <= t <= self.vertex_count):
                raise RepError(f"arrow {s}->{t} has a vertex outside 1..{self.vertex_count}")
            if s == t:
                raise RepError(f"loop at vertex {s}")
        if self._has_cycle():
            raise RepError("quiver has a directed cycle")
        for rel in self.relations:
            if len(rel) < 3:
                raise RepError(f"relation {rel} is shorter than two arrows")
            for s, t in zip(rel, rel[1:]):
                if (s, t) not in self.arrows:
                    raise RepError(f"relation {rel} uses the missing arrow {s}->{t}")

    def arrow_index(self, s: int, t: int) -> int:
        return self.arrows.index((s, t))

    def _has_cycle(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return seen != self.vertex_count

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """1 -> 2 -> ... -> n"""
        return cls(n, tuple((i, i + 1) for i in range(1, n)))

    def line_order(self) -> list[int] | None:
        """Vertices in path order if the underlying graph is a simple path (type A)."""
        n = self.vertex_count
        if n == 0:
            return []
        if len(self.arrows) != n - 1:
            return None
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            adj[s].append(t)
            adj[t].append(s)
        if any(len(set(a)) != len(a) for a in adj.values()):
            return None
        ends = [v for v in self.vertices if len(adj[v]) <= 1]
        if n == 1:
            return [1]
        if len(ends) != 2 or any(len(adj[v]) > 2 for v in self.vertices):
            return None
        order = [min(ends)]
        prev = None
        while len(order) < n:
            nxt = [u for u in adj[order[-1]] if u != prev]
            if not nxt:
                return None
            prev = order[-1]
            order.append(nxt[0])
        return order

    def is_type_a(self) -> bool:
        return self.line_order() is not None

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows],
                "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        return cls(int(data["vertices"]), tuple(tuple(a) for a in data["arrows"]),
                   tuple(tuple(r) for r in data.get("relations", ())))


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum_{i->j} d_i e_j"""
    if len(d) != q.vertex_count or len(e) != q.vertex_count:
        raise DimensionVectorError(
            f"dimension vectors must have length {q.vertex_count}, got {len(d)} and {len(e)}"
        )
    total = sum(x * y for x, y in zip(d, e))
    total -= sum(d[s - 1] * e[t - 1] for s, t in q.arrows)
    return total


@dataclass(frozen=True, eq=False)
class Rep:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) != self.quiver.vertex_count:
            raise DimensionVectorError("dims length differs from vertex count")
        if any(x < 0 for x in dims):
            raise DimensionVectorError("negative dimension")
        if len(self.maps) != len(self.quiver.arrows):
            raise RepError("one matrix per arrow required")
        fixed = []
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            m = f2(m).reshape(dims[t - 1], dims[s - 1])
            fixed.append(m)
        object.__setattr__(self, "maps", tuple(fixed))
        for rel in self.quiver.relations:
            if _path_map(self, rel).any():
                raise RepError(f"representation violates the relation {rel}")

    @classmethod
    def zero(cls, q: Quiver) -> "Rep":
        return cls(q, (0,) * q.vertex_count, tuple(zeros(0, 0) for _ in q.arrows))

    @classmethod
    def simple(cls, q: Quiver, v: int) -> "Rep":
        dims = tuple(1 if u == v else 0 for u in q.vertices)
        return cls(q, dims, tuple(zeros(dims[t - 1], dims[s - 1]) for s, t in q.arrows))

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> tuple:
        """Hashable fingerprint of the exact matrices (not an isomorphism invariant)."""
        return (self.dims, tuple(m.tobytes() for m in self.maps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Rep) and self.quiver == other.quiver and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Rep(dims={self.dims})"

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "dims": list(self.dims),
            "maps": [m.astype(int).tolist() for m in self.maps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Rep":
        q = Quiver.from_json(data["quiver"])
        dims = tuple(data["dims"])
        maps = []
        for (s, t), rows in zip(q.arrows, data["maps"]):
            maps.append(f2(rows).reshape(dims[t - 1], dims[s - 1]) if rows else zeros(dims[t - 1], dims[s - 1]))
        return cls(q, dims, tuple(maps))


def _path_map(m: Rep, path: Sequence[int]) -> np.ndarray:
    acc = eye(m.dim(path[0]))
    for s, t in zip(path, path[1:]):
        acc = mul(m.maps[m.quiver.arrow_index(s, t)], acc)
    return acc


def direct_sum(reps: Sequence[Rep], q: Quiver | None = None) -> Rep:
    if not reps:
        if q is None:
            raise RepError("empty direct sum needs a quiver")
        return Rep.zero(q)
    q = reps[0].quiver
    for r in reps:
        if r.quiver != q:
            raise QuiverMismatch("direct sum over different quivers")
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(q.vertex_count))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        m = zeros(dims[t - 1], dims[s - 1])
        ro = co = 0
        for r in reps:
            a = r.maps[k]
            m[ro : ro + a.shape[0], co : co + a.shape[1]] = a
            ro += a.shape[0]
            co += a.shape[1]
        maps.append(m)
    return Rep(q, dims, tuple(maps))


def interval_allowed(q: Quiver, i: int, j: int) -> bool:
    """Whether positions i..j of the line order support a rep (no relation path inside)."""
    order = q.line_order()
    support = set(order[i - 1 : j])
    return not any(set(rel) <= support for rel in q.relations)


def interval_rep(q: Quiver, i: int, j: int) -> Rep:
    """The thin indecomposable supported on positions i..j of the line order."""
    order = q.line_order()
    if order is None:
        raise UnsupportedQuiver("interval modules need a type A quiver")
    if not 1 <= i <= j <= q.vertex_count:
        raise RepError(f"bad interval [{i},{j}]")
    if not interval_allowed(q, i, j):
        raise RepError(f"interval [{i},{j}] contains a zero relation")
    support = set(order[i - 1 : j])
    dims = tuple(1 if v in support else 0 for v in q.vertices)
    maps = []
    for s, t in q.arrows:
        maps.append(f2(np.ones((dims[t - 1], dims[s - 1]))))
    return Rep(q, dims, tuple(maps))


def intervals(q: Quiver) -> list[tuple[int, int]]:
    n = q.vertex_count
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1) if interval_allowed(q, i, j)]


# ---------------------------------------------------------------------------
# Morphisms


def _check_same(m: Rep, n: Rep) -> None:
    if m.quiver != n.quiver:
        raise QuiverMismatch("representations live on different quivers")


def hom_basis(m: Rep, n: Rep) -> list[tuple[np.ndarray, ...]]:
    """Basis of Hom(m, n); each element is a tuple of per-vertex matrices."""
    _check_same(m, n)
    q = m.quiver
    offsets = []
    size = 0
    for v in q.vertices:
        offsets.append(size)
        size += n.dim(v) * m.dim(v)
    if size == 0:
        return []
    eqs = []
    for k, (s, t) in enumerate(q.arrows):
        ma, na = m.maps[k], n.maps[k]
        # phi_t ma - na phi_s = 0, row-major vectorisation
        rows = n.dim(t) * m.dim(s)
        if rows == 0:
            continue
        block = zeros(rows, size)
        if n.dim(t) * m.dim(t):
            block[:, offsets[t - 1] : offsets[t - 1] + n.dim(t) * m.dim(t)] ^= np.kron(eye(n.dim(t)), ma.T) & 1
        if n.dim(s) * m.dim(s):
            block[:, offsets[s - 1] : offsets[s - 1] + n.dim(s) * m.dim(s)] ^= np.kron(na, eye(m.dim(s))) & 1
        eqs.append(block)
    system = np.vstack(eqs) if eqs else zeros(0, size)
    ns = nullspace(system)
    basis = []
    for c in range(ns.shape[1]):
        vec = ns[:, c]
        phi = tuple(
            vec[offsets[v - 1] : offsets[v - 1] + n.dim(v) * m.dim(v)].reshape(n.dim(v), m.dim(v)).copy()
            for v in q.vertices
        )
        basis.append(phi)
    return basis


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_basis(m, n))


def ext1_dim(m: Rep, n: Rep) -> int:
    """dim Ext^1(m, n) via dim Hom - dim Ext^1 = Euler form (hereditary).

    With relations the Euler form picks up Ext^2, so the cocycle complex is
    used instead.
    """
    if m.quiver.relations:
        return _ext1_cocycles(m, n)
    value = hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)
    if value < 0:
        raise AssertionError(f"negative Ext^1 dimension {value}: Hom computation is inconsistent")
    return value


def _ext1_cocycles(m: Rep, n: Rep) -> int:
    """Extensions as arrow matrices f_a: m_s -> n_t keeping the relations, modulo coboundaries.

    The middle term has maps [[n_a, f_a], [0, m_a]]; a relation path vanishes
    on it iff the sum over positions i of n...n f_i m...m is zero.
    """
    _check_same(m, n)
    q = m.quiver
    offsets, size = [], 0
    for s, t in q.arrows:
        offsets.append(size)
        size += n.dim(t) * m.dim(s)
    if size == 0:
        return 0
    eqs = []
    for rel in q.relations:
        rows = n.dim(rel[-1]) * m.dim(rel[0])
        if rows == 0:
            continue
        block = zeros(rows, size)
        steps = list(zip(rel, rel[1:]))
        for i, (s, t) in enumerate(steps):
            left = _path_map(n, rel[i + 1 :])
            right = _path_map(m, rel[: i + 1])
            k = q.arrow_index(s, t)
            width = n.dim(t) * m.dim(s)
            if width:
                block[:, offsets[k] : offsets[k] + width] ^= np.kron(left, right.T) & 1
        eqs.append(block)
    cocycles = size - (rank(np.vstack(eqs)) if eqs else 0)
    # coboundaries g -> (n_a g_s - g_t m_a)
    goffs, gsize = [], 0
    for v in q.vertices:
        goffs.append(gsize)
        gsize += n.dim(v) * m.dim(v)
    delta = zeros(size, gsize)
    for k, (s, t) in enumerate(q.arrows):
        r0, rows = offsets[k], n.dim(t) * m.dim(s)
        if rows == 0:
            continue
        if n.dim(s) * m.dim(s):
            delta[r0 : r0 + rows, goffs[s - 1] : goffs[s - 1] + n.dim(s) * m.dim(s)] ^= np.kron(n.maps[k], eye(m.dim(s))) & 1
        if n.dim(t) * m.dim(t):
            delta[r0 : r0 + rows, goffs[t - 1] : goffs[t - 1] + n.dim(t) * m.dim(t)] ^= np.kron(eye(n.dim(t)), m.maps[k].T) & 1
    return cocycles - rank(delta)


def is_morphism(m: Rep, n: Rep, phi: Sequence[np.ndarray]) -> bool:
    for k, (s, t) in enumerate(m.quiver.arrows):
        if not np.array_equal(mul(phi[t - 1], m.maps[k]), mul(n.maps[k], phi[s - 1])):
            return False
    return True


# ---------------------------------------------------------------------------
# Subrepresentations


@dataclass(frozen=True, eq=False)
class SubRep:
    parent: Rep
    bases: tuple[np.ndarray, ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.parent.quiver
        if len(self.bases) != q.vertex_count:
            raise RepError("one basis per vertex required")
        canon = []
        for v, b in zip(q.vertices, self.bases):
            b = f2(b).reshape(self.parent.dim(v), -1) if np.size(b) else zeros(self.parent.dim(v), 0)
            cb = colspace(b)
            canon.append(cb)
        object.__setattr__(self, "bases", tuple(canon))
        if not self._checked and not self.is_stable():
            raise RepError("subspace family is not closed under the arrow maps")

    def is_stable(self) -> bool:
        for k, (s, t) in enumerate(self.parent.quiver.arrows):
            img = mul(self.parent.maps[k], self.bases[s - 1])
            if not contains(self.bases[t - 1], img):
                return False
        return True

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.bases)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def key(self) -> tuple:
        return tuple(b.tobytes() + bytes([b.shape[1]]) for b in self.bases)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubRep) and self.parent == other.parent and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __le__(self, other: "SubRep") -> bool:
        return all(contains(b, a) for a, b in zip(self.bases, other.bases))

    def __repr__(self) -> str:
        return f"SubRep(dims={self.dims} of {self.parent.dims})"

    def as_rep(self) -> Rep:
        """The subrepresentation in its own coordinates."""
        q = self.parent.quiver
        maps = []
        for k, (s, t) in enumerate(q.arrows):
            img = mul(self.parent.maps[k], self.bases[s - 1])
            maps.append(solve(self.bases[t - 1], img) if img.size else zeros(self.dims[t - 1], self.dims[s - 1]))
        return Rep(q, self.dims, tuple(maps))

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "bases": [b.astype(int).tolist() for b in self.bases]}


def zero_sub(m: Rep) -> SubRep:
    return SubRep(m, tuple(zeros(m.dim(v), 0) for v in m.quiver.vertices), True)


def full_sub(m: Rep) -> SubRep:
    return SubRep(m, tuple(eye(m.dim(v)) for v in m.quiver.vertices), True)


def sub_sum(parts: Iterable[SubRep], m: Rep) -> SubRep:
    acc = [zeros(m.dim(v), 0) for v in m.quiver.vertices]
    for p in parts:
        acc = [np.hstack([a, b]) for a, b in zip(acc, p.bases)]
    return SubRep(m, tuple(acc))


def sub_intersection(parts: Iterable[SubRep], m: Rep) -> SubRep:
    acc = [eye(m.dim(v)) for v in m.quiver.vertices]
    for p in parts:
        acc = [intersect(a, b) for a, b in zip(acc, p.bases)]
    return SubRep(m, tuple(acc))


def image(phi: Sequence[np.ndarray], target: Rep) -> SubRep:
    return SubRep(target, tuple(colspace(p) if p.size else zeros(target.dim(v), 0)
                                for v, p in zip(target.quiver.vertices, phi)))


def kernel(phi: Sequence[np.ndarray], source: Rep) -> SubRep:
    return SubRep(source, tuple(nullspace(p) if p.shape[1] else zeros(0, 0)
                                for p in phi))


def _subspaces(d: int) -> list[np.ndarray]:
    """All subspaces of F2^d as canonical column bases."""
    out = [zeros(d, 0)]
    if d == 0:
        return out
    seen = {out[0].tobytes() + b"\x00"}
    vectors = [f2([(x >> i) & 1 for i in range(d)]).reshape(d, 1) for x in range(1, 2**d)]
    frontier = [out[0]]
    while frontier:
        nxt = []
        for b in frontier:
            for vec in vectors:
                if contains(b, vec):
                    continue
                c = colspace(np.hstack([b, vec]))
                k = c.tobytes() + bytes([c.shape[1]])
                if k not in seen:
                    seen.add(k)
                    out.append(c)
                    nxt.append(c)
        frontier = nxt
    return out


_SUBSPACE_CACHE: dict[int, list[np.ndarray]] = {}


def subspaces(d: int) -> list[np.ndarray]:
    if d not in _SUBSPACE_CACHE:
        _SUBSPACE_CACHE[d] = _subspaces(d)
    return _SUBSPACE_CACHE[d]


def enumerate_subreps(m: Rep, bound: int = DEFAULT_DIM_BOUND) -> list[SubRep]:
    """Every subrepresentation of ``m``, each listed once."""
    if m.total_dim > bound:
        raise BoundExceeded("enumerate_subreps", m.total_dim, bound)
    q = m.quiver
    order = _topological(q)
    out: list[SubRep] = []
    chosen: dict[int, np.ndarray] = {}

    def compatible(v: int, b: np.ndarray) -> bool:
        for k, (s, t) in enumerate(q.arrows):
            if s == v and t in chosen:
                if not contains(chosen[t], mul(m.maps[k], b)):
                    return False
            if t == v and s in chosen:
                if not contains(b, mul(m.maps[k], chosen[s])):
                    return False
        return True

    def rec(idx: int) -> None:
        if idx == len(order):
            out.append(SubRep(m, tuple(chosen[v] for v in q.vertices), True))
            return
        v = order[idx]
        for b in subspaces(m.dim(v)):
            if compatible(v, b):
                chosen[v] = b
                rec(idx + 1)
                del chosen[v]

    rec(0)
    return out


def _topological(q: Quiver) -> list[int]:
    indeg = {v: 0 for v in q.vertices}
    for _, t in q.arrows:
        indeg[t] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for s, t in q.arrows:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    return out


@dataclass(frozen=True)
class Quotient:
    rep: Rep
    projections: tuple[np.ndarray, ...]  # per vertex, (dim quotient) x (dim parent)


def quotient_with_map(m: Rep, u: SubRep) -> Quotient:
    if u.parent != m:
        raise RepError("subrepresentation of a different parent")
    if not u.is_stable():
        raise RepError("subspace family is not arrow-stable")
    q = m.quiver
    projs = [annihilator_rows(u.bases[v - 1], m.dim(v)) for v in q.vertices]
    sections = [solve(p, eye(p.shape[0])) if p.shape[0] else zeros(p.shape[1], 0) for p in projs]
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        maps.append(mul(mul(projs[t - 1], m.maps[k]), sections[s - 1]))
    dims = tuple(p.shape[0] for p in projs)
    return Quotient(Rep(q, dims, tuple(maps)), tuple(projs))


def quotient(m: Rep, u: SubRep) -> Rep:
    return quotient_with_map(m, u).rep


def preimage(qt: Quotient, parent: Rep, w: SubRep) -> SubRep:
    """Subrep of the parent mapping onto ``w`` under the projection."""
    bases = []
    for v in parent.quiver.vertices:
        p = qt.projections[v - 1]
        target = w.bases[v - 1]
        # x with p x in colspace(target): kernel of (annihilator of target) p
        ann = annihilator_rows(target, p.shape[0])
        bases.append(nullspace(mul(ann, p)) if parent.dim(v) else zeros(0, 0))
    return SubRep(parent, tuple(bases))


def subrep_of_sub(u: SubRep, inner: SubRep) -> SubRep:
    """Transport a subrep of ``u.as_rep()`` into the parent of ``u``."""
    return SubRep(u.parent, tuple(mul(b, ib) for b, ib in zip(u.bases, inner.bases)))


# ---------------------------------------------------------------------------
# Torsion radicals


def trace(ss: Sequence[Rep], x: Rep) -> SubRep:
    """Sum of the images of all morphisms s -> x, s in ss."""
    parts = []
    for s in ss:
        _check_same(s, x)
        for phi in hom_basis(s, x):
            parts.append(image(phi, x))
    return sub_sum(parts, x)


def reject(ss: Sequence[Rep], x: Rep) -> SubRep:
    """Intersection of the kernels of all morphisms x -> s, s in ss."""
    parts = []
    for s in ss:
        _check_same(s, x)
        for phi in hom_basis(x, s):
            parts.append(kernel(phi, x))
    return sub_intersection(parts, x)


# ---------------------------------------------------------------------------
# Krull-Schmidt decomposition (type A only)


_CATALOGUE: dict[Quiver, tuple[list[tuple[int, int]], list[Rep], np.ndarray]] = {}


def _catalogue(q: Quiver):
    if q not in _CATALOGUE:
        if not q.is_type_a():
            raise UnsupportedQuiver(f"no decomposition strategy for non-type-A quiver {q.arrows}")
        labels = intervals(q)
        reps = [interval_rep(q, i, j) for i, j in labels]
        h = np.array([[hom_dim(a, b) for b in reps] for a in reps], dtype=float)
        _CATALOGUE[q] = (labels, reps, np.linalg.inv(h))
    return _CATALOGUE[q]


_DECOMP_CACHE: dict[tuple, tuple[tuple[int, int], ...]] = {}


def decompose_labels(m: Rep, bound: int = DEFAULT_DIM_BOUND) -> tuple[tuple[int, int], ...]:
    """Interval labels (positions along the line order) of the summands, sorted.

    Uses Auslander's theorem: a module over a representation-finite algebra is
    determined by dim Hom(I, -) over all indecomposables I.
    """
    if m.total_dim > bound:
        raise BoundExceeded("decompose", m.total_dim, bound)
    labels, reps, hinv = _catalogue(m.quiver)
    key = (m.quiver, m.key())
    if key in _DECOMP_CACHE:
        return _DECOMP_CACHE[key]
    fp = np.array([hom_dim(r, m) for r in reps], dtype=float)
    mult = np.rint(hinv @ fp).astype(int)
    if (mult < 0).any():
        raise AssertionError("negative multiplicity in decomposition")
    out = []
    for lab, k in zip(labels, mult):
        out.extend([lab] * int(k))
    dims = [0] * m.quiver.vertex_count
    for lab in out:
        for v, d in enumerate(interval_rep(m.quiver, *lab).dims):
            dims[v] += d
    if tuple(dims) != m.dims:
        raise AssertionError("decomposition does not reproduce the dimension vector")
    res = tuple(sorted(out))
    _DECOMP_CACHE[key] = res
    return res


def decompose(m: Rep, bound: int = DEFAULT_DIM_BOUND) -> list[Rep]:
    return [interval_rep(m.quiver, i, j) for i, j in decompose_labels(m, bound)]


def is_indecomposable(m: Rep) -> bool:
    return len(decompose_labels(m)) == 1


def isomorphic(a: Rep, b: Rep) -> bool:
    _check_same(a, b)
    return a.dims == b.dims and decompose_labels(a) == decompose_labels(b)


__all__ = [
    "BoundExceeded",
    "DEFAULT_DIM_BOUND",
    "Quiver",
    "Quotient",
    "Rep",
    "RepError",
    "SubRep",
    "UnsupportedQuiver",
    "decompose",
    "decompose_labels",
    "direct_sum",
    "enumerate_subreps",
    "euler_form",
    "ext1_dim",
    "hom_basis",
    "hom_dim",
    "image",
    "interval_allowed",
    "interval_rep",
    "intervals",
    "kernel",
    "quotient",
    "quotient_with_map",
    "reject",
    "trace",
]
