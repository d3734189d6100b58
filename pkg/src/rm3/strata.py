"""Weighted boundary strata of genus-3 stable curves with geometric genus 0.

A stratum is a connected multigraph: vertices are the genus-0 components,
edges are the nodes.  An edge ``(tail, head, w)`` carries the weight ``w``
on its cusp at ``head`` and ``-w`` on its cusp at ``tail``.  Weights are
stored as integer coordinate vectors with respect to the lattice basis, so
all moves and invariants are integer computations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .admissibility import ConeProfile, cone_profile
from .exactmath import common_denominator
from .ideals import FractionalIdeal, UnitSystem
from .numberfield import FieldElement

Vec = tuple[int, int, int]
Edge = tuple[int, int, Vec]


class StratumError(ValueError):
    pass


class NotConnected(StratumError):
    pass


class WrongGenus(StratumError):
    pass


class UnstableVertex(StratumError):
    pass


class NonzeroVertexSum(StratumError):
    pass


class WeightsDontSpan(StratumError):
    pass


class ZeroWeightEdge(StratumError):
    pass


def _neg(v: Vec) -> Vec:
    return (-v[0], -v[1], -v[2])


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _apply(n: Vec, m) -> Vec:
    return (
        n[0] * m[0][0] + n[1] * m[1][0] + n[2] * m[2][0],
        n[0] * m[0][1] + n[1] * m[1][1] + n[2] * m[2][1],
        n[0] * m[0][2] + n[1] * m[1][2] + n[2] * m[2][2],
    )


def _imatmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


_ID = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def spans_lattice(vectors: Iterable[Vec]) -> bool:
    """Do the integer vectors generate Z^3?"""
    vs = list(set(vectors))
    g = 0
    for a, b, c in itertools.combinations(vs, 3):
        d = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
             + a[2] * (b[0] * c[1] - b[1] * c[0]))
        g = math.gcd(g, d)
        if g == 1:
            return True
    return False


class LatticeContext:
    """Per-lattice data shared by all strata: Q-form, trace form, unit action."""

    def __init__(self, ideal: FractionalIdeal, units: Optional[UnitSystem] = None):
        self.ideal = ideal
        self.units = units
        basis = ideal.basis
        gram = [[(a * b).trace() for b in basis] for a in basis]
        d = common_denominator(v for row in gram for v in row)
        self.gram = tuple(tuple(int(v * d) for v in row) for row in gram)
        emb = [b.embeddings() for b in basis]
        self.basis_emb = tuple(tuple(emb[i][j] for i in range(3)) for j in range(3))
        self.unit_mats: tuple = ()
        self.unit_logs: tuple = ()
        if units is not None:
            mats = []
            for u in units.units:
                m = ideal.action_matrix(u)
                mi = ideal.action_matrix(u.inverse())
                if any(c.denominator != 1 for row in m + mi for c in row):
                    raise ValueError("unit does not act on the lattice")
                mats.append((tuple(tuple(int(c) for c in row) for row in m),
                             tuple(tuple(int(c) for c in row) for row in mi)))
            self.unit_mats = tuple(mats)
            self.unit_logs = tuple(tuple(math.log(abs(e)) for e in u.embeddings()) for u in units.units)
        self._powers: dict = {}

    def q_image(self, n: Vec) -> Vec:
        return self.ideal.q_image_int(n)

    def element(self, n: Vec) -> FieldElement:
        return self.ideal.element(n)

    def coords(self, x: FieldElement) -> Vec:
        c = self.ideal.coordinates(x)
        if any(v.denominator != 1 for v in c):
            raise ValueError(f"{x} is not in the lattice")
        return tuple(int(v) for v in c)

    def trace_sq(self, n: Vec) -> int:
        g = self.gram
        return sum(n[i] * n[j] * g[i][j] for i in range(3) for j in range(3))

    def _unit_power(self, k: int, e: int):
        key = (k, e)
        m = self._powers.get(key)
        if m is None:
            if e == 0:
                m = _ID
            elif e > 0:
                m = _imatmul(self._unit_power(k, e - 1), self.unit_mats[k][0])
            else:
                m = _imatmul(self._unit_power(k, e + 1), self.unit_mats[k][1])
            self._powers[key] = m
        return m

    def unit_matrix(self, a: int, b: int):
        key = ("ab", a, b)
        m = self._powers.get(key)
        if m is None:
            m = _imatmul(self._unit_power(0, a), self._unit_power(1, b))
            self._powers[key] = m
        return m

    def minimising_units(self, weights: Sequence[Vec]) -> list:
        """Unit matrices (mod ±1) minimising sum_w Tr((eps w)^2), found exactly.

        The float search only bounds the region; the comparison is exact.
        """
        if not self.unit_mats:
            return [_ID]
        emb = self.basis_emb
        A = [sum(sum(n[i] * emb[j][i] for i in range(3)) ** 2 for n in weights) for j in range(3)]
        L = self.unit_logs

        def ffloat(a, b):
            return sum(A[j] * math.exp(2 * (a * L[0][j] + b * L[1][j])) for j in range(3))

        pos = (0, 0)
        best = ffloat(0, 0)
        while True:
            step = min(((ffloat(pos[0] + da, pos[1] + db), (pos[0] + da, pos[1] + db))
                        for da in (-1, 0, 1) for db in (-1, 0, 1) if da or db))
            if step[0] < best:
                best, pos = step
            else:
                break
        t = best * (1 + 1e-6)
        c = [0.5 * math.log(t / A[j]) for j in range(3)]
        corners = []
        for j, k in ((0, 1), (0, 2), (1, 2)):
            det = L[0][j] * L[1][k] - L[1][j] * L[0][k]
            a = (c[j] * L[1][k] - L[1][j] * c[k]) / det
            b = (L[0][j] * c[k] - c[j] * L[0][k]) / det
            corners.append((a, b))
        a_lo = math.floor(min(p[0] for p in corners)) - 1
        a_hi = math.ceil(max(p[0] for p in corners)) + 1
        b_lo = math.floor(min(p[1] for p in corners)) - 1
        b_hi = math.ceil(max(p[1] for p in corners)) + 1
        found = []
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                if all(a * L[0][j] + b * L[1][j] <= c[j] + 1e-9 for j in range(3)):
                    m = self.unit_matrix(a, b)
                    val = sum(self.trace_sq(_apply(n, m)) for n in weights)
                    found.append((val, a, b))
        low = min(v for v, _, _ in found)
        return [self.unit_matrix(a, b) for v, a, b in found if v == low]


@dataclass(frozen=True)
class ConeType:
    kind: str
    span_rank: int
    lineality_rank: int


def classify_cone(profile: ConeProfile) -> ConeType:
    s, l = profile.span_rank, profile.lineality_rank
    if s == 3:
        kind = "A" if l == 3 else "H" if l == 2 else "C"
    elif s == 2:
        kind = "S" if l == 2 else "F"
    else:
        raise AssertionError(f"cone with span rank {s} cannot come from a valid stratum")
    return ConeType(kind, s, l)


class WeightedStratum:
    def __init__(self, ctx: LatticeContext, nverts: int, edges: Sequence[Edge], validate: bool = True):
        self.ctx = ctx
        self.nverts = nverts
        self.edges = tuple((int(t), int(h), tuple(int(x) for x in w)) for t, h, w in edges)
        if validate:
            self.validate()

    def __repr__(self):
        return f"WeightedStratum({self.pattern_code()}, {list(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, WeightedStratum) and (self.nverts, self.edges) == (other.nverts, other.edges)

    def __hash__(self):
        return hash((self.nverts, self.edges))

    # ------------------------------------------------------------ invariants

    def degrees(self) -> list[int]:
        deg = [0] * self.nverts
        for t, h, _ in self.edges:
            deg[t] += 1
            deg[h] += 1
        return deg

    def validate(self) -> None:
        n = self.nverts
        if any(not (0 <= t < n and 0 <= h < n) for t, h, _ in self.edges):
            raise NotConnected("edge endpoint out of range")
        if any(not any(w) for _, _, w in self.edges):
            raise ZeroWeightEdge("an edge has weight zero")
        if len(self.edges) - n + 1 != 3:
            raise WrongGenus(f"first Betti number is {len(self.edges) - n + 1}, not 3")
        seen = {0}
        stack = [0]
        adj = [[] for _ in range(n)]
        for t, h, _ in self.edges:
            adj[t].append(h)
            adj[h].append(t)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != n:
            raise NotConnected("graph is not connected")
        if any(d < 3 for d in self.degrees()):
            raise UnstableVertex("a component has fewer than three cusps")
        sums = [(0, 0, 0)] * n
        for t, h, w in self.edges:
            sums[h] = _add(sums[h], w)
            sums[t] = _add(sums[t], _neg(w))
        if any(any(s) for s in sums):
            raise NonzeroVertexSum("cusp weights on a component do not sum to zero")
        if not spans_lattice(w for _, _, w in self.edges):
            raise WeightsDontSpan("weights do not span the lattice")

    @property
    def weight_vectors(self) -> tuple[Vec, ...]:
        return tuple(w for _, _, w in self.edges)

    @property
    def weights(self) -> tuple[FieldElement, ...]:
        return tuple(self.ctx.element(w) for w in self.weight_vectors)

    @cached_property
    def profile(self) -> ConeProfile:
        return cone_profile([self.ctx.q_image(w) for w in self.weight_vectors])

    def cone_type(self) -> ConeType:
        return classify_cone(self.profile)

    def span_codim(self) -> int:
        return 3 - self.profile.span_rank

    def is_admissible(self) -> bool:
        return self.profile.is_subspace

    def component_dim(self) -> int:
        return sum(d - 3 for d in self.degrees()) - self.span_codim()

    # ------------------------------------------------------------ naming

    def pattern_code(self) -> str:
        deg = self.degrees()
        n = self.nverts
        mult = {}
        for t, h, _ in self.edges:
            if t != h:
                key = (min(t, h), max(t, h))
                mult[key] = mult.get(key, 0) + 1

        def m(a, b):
            return mult.get((min(a, b), max(a, b)), 0)

        if n == 1:
            return f"[{deg[0]}]"
        if n == 2:
            a, b = sorted(range(2), key=lambda v: -deg[v])
            return f"[{deg[a]}]x{m(a, b)}[{deg[b]}]"
        if n == 3:
            best = None
            for order in itertools.permutations(range(3)):
                a, b, c = order
                if m(a, b) == 0 or m(b, c) == 0:
                    continue
                code = (deg[a], m(a, b), deg[b], m(b, c), deg[c], m(c, a))
                if best is None or code > best:
                    best = code
            da, mab, db, mbc, dc, mca = best
            tail = f"x{mca}" if mca else ""
            return f"[{da}]x{mab}[{db}]x{mbc}[{dc}]{tail}"
        parts = "".join(f"[{d}]" for d in sorted(deg, reverse=True))
        links = ",".join(f"{a}-{b}:{k}" for (a, b), k in sorted(mult.items()))
        return f"{parts}{{{links}}}"

    # ------------------------------------------------------------ moves

    def raw_degenerations(self) -> Iterator["WeightedStratum"]:
        """Every single-node pinch, without deduplication (zero-weight pinches skipped)."""
        new = self.nverts
        for v in range(self.nverts):
            halves = []
            for k, (t, h, w) in enumerate(self.edges):
                if h == v:
                    halves.append((k, 1, w))
                if t == v:
                    halves.append((k, 0, _neg(w)))
            size = len(halves)
            rest = halves[1:]
            for r in range(1, size - 2):
                for chosen in itertools.combinations(range(len(rest)), r):
                    side_a = [halves[0]] + [rest[i] for i in chosen]
                    moved = {(rest[i][0], rest[i][1]) for i in range(len(rest)) if i not in chosen}
                    s = (0, 0, 0)
                    for _, _, cw in side_a:
                        s = _add(s, cw)
                    if not any(s):
                        continue
                    edges = []
                    for k, (t, h, w) in enumerate(self.edges):
                        nt = new if (k, 0) in moved else t
                        nh = new if (k, 1) in moved else h
                        edges.append((nt, nh, w))
                    edges.append((v, new, s))
                    yield WeightedStratum(self.ctx, self.nverts + 1, edges, validate=False)

    def raw_undegenerations(self) -> Iterator["WeightedStratum"]:
        """Contract each non-loop edge in turn."""
        for k, (a, b, _) in enumerate(self.edges):
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)

            def relabel(x):
                x = lo if x == hi else x
                return x - 1 if x > hi else x

            edges = [(relabel(t), relabel(h), w) for i, (t, h, w) in enumerate(self.edges) if i != k]
            yield WeightedStratum(self.ctx, self.nverts - 1, edges, validate=False)

    def degenerations(self) -> list["WeightedStratum"]:
        return _dedup(self.raw_degenerations())

    def undegenerations(self) -> list["WeightedStratum"]:
        out = []
        for s in self.raw_undegenerations():
            try:
                s.validate()
            except StratumError:
                continue
            out.append(s)
        return _dedup(out)

    # ------------------------------------------------------------ similarity

    def canonical_form(self) -> tuple:
        best = None
        for m in self.ctx.minimising_units(self.weight_vectors):
            moved = [(t, h, _apply(w, m)) for t, h, w in self.edges]
            for perm in itertools.permutations(range(self.nverts)):
                es = []
                for t, h, w in moved:
                    a = (perm[t], perm[h], w)
                    b = (perm[h], perm[t], _neg(w))
                    es.append(a if a < b else b)
                es.sort()
                form = tuple(es)
                if best is None or form < best:
                    best = form
        return (self.nverts, best)

    @cached_property
    def key(self) -> bytes:
        nverts, edges = self.canonical_form()
        text = f"{nverts};" + ";".join(f"{t},{h},{w[0]},{w[1]},{w[2]}" for t, h, w in edges)
        return text.encode()

    @cached_property
    def weight_key(self) -> bytes:
        """Similarity class of the weight set alone, ignoring the graph."""
        best = None
        for m in self.ctx.minimising_units(self.weight_vectors):
            form = []
            for w in self.weight_vectors:
                v = _apply(w, m)
                form.append(min(v, _neg(v)))
            form = tuple(sorted(set(form)))
            if best is None or form < best:
                best = form
        return ";".join(f"{w[0]},{w[1]},{w[2]}" for w in best).encode()

    def canonical(self) -> "WeightedStratum":
        """The representative whose serialisation is the key."""
        nverts, edges = self.canonical_form()
        return WeightedStratum(self.ctx, nverts, edges, validate=False)

    def to_dict(self) -> dict:
        return {
            "vertices": self.nverts,
            "edges": [[t, h, self.ctx.element(w).format()] for t, h, w in self.edges],
            "pattern": self.pattern_code(),
        }


def _dedup(strata: Iterable[WeightedStratum]) -> list[WeightedStratum]:
    out = {}
    for s in strata:
        out.setdefault(s.key, s)
    return list(out.values())


def make_stratum(ideal, edges: Sequence, vertices: Optional[int] = None,
                 units: Optional[UnitSystem] = None) -> WeightedStratum:
    """Build and validate a stratum; weights may be field elements or lattice coordinates."""
    ctx = ideal if isinstance(ideal, LatticeContext) else LatticeContext(ideal, units)
    norm_edges = []
    for t, h, w in edges:
        norm_edges.append((t, h, ctx.coords(w) if isinstance(w, FieldElement) else tuple(w)))
    if vertices is None:
        vertices = 1 + max(max(t, h) for t, h, _ in norm_edges) if norm_edges else 0
    return WeightedStratum(ctx, vertices, norm_edges)


def irreducible_stratum(ctx: LatticeContext, basis: Sequence) -> WeightedStratum:
    """One component with three loops carrying the given weights."""
    return make_stratum(ctx, [(0, 0, w) for w in basis], vertices=1)


def pattern_code(s: WeightedStratum) -> str:
    return s.pattern_code()


def degenerations(s: WeightedStratum) -> list[WeightedStratum]:
    return s.degenerations()


def undegenerations(s: WeightedStratum) -> list[WeightedStratum]:
    return s.undegenerations()


def cone_type(s: WeightedStratum) -> ConeType:
    return s.cone_type()


def span_codim(s: WeightedStratum) -> int:
    return s.span_codim()


def is_admissible(s: WeightedStratum) -> bool:
    return s.is_admissible()


def component_dim(s: WeightedStratum) -> int:
    return s.component_dim()


def canonical_key(s: WeightedStratum) -> bytes:
    return s.key
