"""Finding one admissible stratum and walking to all two-dimensional ones.

The walk alternates between the admissible one-dimensional degenerations of
the known two-dimensional strata and the admissible two-dimensional
undegenerations of those, deduplicating by canonical key until nothing new
appears.  Connectivity of the adjacency graph makes the result independent
of the starting stratum.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .admissibility import ConeProfile
from .ideals import FieldRecord, FractionalIdeal, UnitSystem
from .strata import LatticeContext, WeightedStratum, irreducible_stratum

log = logging.getLogger(__name__)

MAX_RESTARTS = 32
MAX_STEPS = 200


class Exhausted(RuntimeError):
    def __init__(self, restarts: int):
        super().__init__(f"no admissible stratum found after {restarts} restarts")
        self.restarts = restarts


@dataclass
class WalkStats:
    moves_tried: int = 0
    restarts: int = 0


@dataclass
class EnumerationResult:
    ideal: FractionalIdeal
    strata: dict  # key -> 2-dimensional admissible stratum
    one_dim: dict  # key -> admissible 1-dimensional stratum met on the way
    adjacency: dict  # 1-dim key -> set of 2-dim keys
    stats: WalkStats = field(default_factory=WalkStats)

    @property
    def six_count(self) -> int:
        return sum(1 for s in self.strata.values() if s.nverts == 1)

    @property
    def total_count(self) -> int:
        """Two-dimensional components, counted by weight set up to similarity."""
        return len({s.weight_key for s in self.strata.values()})

    @property
    def stratum_count(self) -> int:
        """Two-dimensional strata up to similarity, distinguishing graphs with equal weight sets."""
        return len(self.strata)

    @property
    def edges(self) -> set:
        out = set()
        for tops in self.adjacency.values():
            tops = sorted(tops)
            for i, a in enumerate(tops):
                for b in tops[i + 1:]:
                    out.add((a, b))
        return out

    def six_strata(self) -> list[WeightedStratum]:
        return [self.strata[k] for k in sorted(self.strata) if self.strata[k].nverts == 1]


def _context(ideal, units) -> LatticeContext:
    return ideal if isinstance(ideal, LatticeContext) else LatticeContext(ideal, units)


# ---------------------------------------------------------------- initial stratum


def _random_basis(rng: random.Random) -> list[tuple[int, int, int]]:
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(8):
        i, j = rng.sample(range(3), 2)
        c = rng.choice((-2, -1, 1, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    rng.shuffle(m)
    return [tuple(r) for r in m]


def _new_weight_outside(s1: WeightedStratum, profile: ConeProfile) -> bool:
    w = s1.edges[-1][2]
    return not profile.contains(s1.ctx.q_image(w))


def _reduce_half_space(s: WeightedStratum) -> Optional[WeightedStratum]:
    while s.nverts > 2:
        nxt = next((u for u in s.undegenerations() if u.cone_type().kind == "H"), None)
        if nxt is None:
            return None
        s = nxt
    (phi,) = s.profile.functionals
    for k, (t, h, w) in enumerate(s.edges):
        if t != h and sum(a * b for a, b in zip(phi, s.ctx.q_image(w))) > 0:
            other = list(s.raw_undegenerations())
            nonloop = [i for i, (a, b, _) in enumerate(s.edges) if a != b]
            cand = other[nonloop.index(k)]
            cand.validate()
            if cand.cone_type().kind == "S":
                return cand
    return None


def _attempt(ctx: LatticeContext, basis, stats: WalkStats) -> Optional[WeightedStratum]:
    s = irreducible_stratum(ctx, basis)
    for _ in range(MAX_STEPS):
        kind = s.cone_type().kind
        if kind in ("A", "H", "S"):
            break
        prof = s.profile
        superfluous = None
        nonloop = [k for k, (t, h, _) in enumerate(s.edges) if t != h]
        if nonloop:
            contracted = list(s.raw_undegenerations())
            for k, cand in zip(nonloop, contracted):
                if prof.in_relative_interior(ctx.q_image(s.edges[k][2])):
                    superfluous = cand
                    break
        if superfluous is not None:
            s = superfluous
            stats.moves_tried += 1
            continue
        nxt = None
        for s1 in s.raw_degenerations():
            stats.moves_tried += 1
            if _new_weight_outside(s1, prof):
                nxt = s1
                break
        if nxt is None:
            return None
        s = nxt
    else:
        return None
    if s.cone_type().kind == "H":
        return _reduce_half_space(s)
    return s


def find_initial_stratum(ideal, units: Optional[UnitSystem] = None, seed: int = 0,
                         max_restarts: int = MAX_RESTARTS, stats: Optional[WalkStats] = None) -> WeightedStratum:
    """Cone-growing search for one admissible stratum, restarting on a random basis when stuck."""
    ctx = _context(ideal, units)
    stats = stats if stats is not None else WalkStats()
    rng = random.Random(seed)
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] if seed == 0 else _random_basis(rng)
    for attempt in range(max_restarts + 1):
        found = _attempt(ctx, basis, stats)
        if found is not None:
            return found
        stats.restarts += 1
        basis = _random_basis(rng)
    raise Exhausted(max_restarts)


# ---------------------------------------------------------------- the walk


def _keep(s: WeightedStratum, dim: int) -> bool:
    return s.is_admissible() and s.component_dim() == dim


def one_dim_degenerations(s: WeightedStratum, stats: Optional[WalkStats] = None) -> list[WeightedStratum]:
    """Admissible 1-dimensional strata reachable by pinching one or (from [6]) two curves."""
    out = {}
    firsts = list(s.raw_degenerations())
    layers = [firsts]
    if s.nverts == 1:
        layers.append([d2 for d1 in firsts for d2 in d1.raw_degenerations()])
    for layer in layers:
        for d in layer:
            if stats is not None:
                stats.moves_tried += 1
            if _keep(d, 1):
                out.setdefault(d.key, d)
    return list(out.values())


def two_dim_undegenerations(s: WeightedStratum, stats: Optional[WalkStats] = None) -> list[WeightedStratum]:
    """Admissible 2-dimensional strata obtained by contracting one or two nodes."""
    out = {}
    frontier = [s]
    while frontier:
        nxt = []
        for cur in frontier:
            for u in cur.raw_undegenerations():
                if stats is not None:
                    stats.moves_tried += 1
                if _keep(u, 2):
                    out.setdefault(u.key, u)
                if u.nverts > 1:
                    nxt.append(u)
        frontier = nxt
    return list(out.values())


def _lift_to_two_dim(s: WeightedStratum) -> list[WeightedStratum]:
    if _keep(s, 2):
        return [s]
    if _keep(s, 1):
        return two_dim_undegenerations(s)
    found = {}
    frontier = [s]
    while frontier and not found:
        nxt = []
        for cur in frontier:
            for u in cur.raw_undegenerations():
                if _keep(u, 2) or _keep(u, 1):
                    for t in _lift_to_two_dim(u):
                        found.setdefault(t.key, t)
                if u.nverts > 1:
                    nxt.append(u)
        frontier = nxt
    return list(found.values())


def enumerate_2dim(ideal, units: Optional[UnitSystem] = None, seed: int = 0,
                   initial: Optional[WeightedStratum] = None) -> EnumerationResult:
    ctx = _context(ideal, units)
    stats = WalkStats()
    if initial is None:
        initial = find_initial_stratum(ctx, seed=seed, stats=stats)
    starts = _lift_to_two_dim(initial)
    if not starts:
        raise Exhausted(stats.restarts)
    two: dict = {}
    one: dict = {}
    adjacency: dict = {}
    queue = []
    for s in starts:
        if s.key not in two:
            two[s.key] = s.canonical()
            queue.append(s)
    while queue:
        s = queue.pop()
        for d in one_dim_degenerations(s, stats):
            adjacency.setdefault(d.key, set()).add(s.key)
            if d.key in one:
                continue
            one[d.key] = d.canonical()
            for u in two_dim_undegenerations(d, stats):
                adjacency[d.key].add(u.key)
                if u.key not in two:
                    two[u.key] = u.canonical()
                    queue.append(u)
    return EnumerationResult(ctx.ideal, two, one, adjacency, stats)


def certify_closure(result: EnumerationResult) -> bool:
    """Re-run one move step on every stratum and check that no new key appears."""
    for s in result.strata.values():
        for d in one_dim_degenerations(s):
            if d.key not in result.one_dim:
                return False
            for u in two_dim_undegenerations(d):
                if u.key not in result.strata:
                    return False
    return True


# ---------------------------------------------------------------- count table


@dataclass
class CountRow:
    disc: int
    index: int
    h: int
    log_volume: float
    six: list
    total: list
    status: str = "ok"
    error: str = ""

    def tsv(self) -> str:
        six = "+".join(str(x) for x in self.six) if self.status == "ok" else "-"
        tot = "+".join(str(x) for x in self.total) if self.status == "ok" else "-"
        return f"{self.disc}\t{self.h}\t{self.log_volume:.6f}\t{six}\t{tot}\t{self.status}"


def count_row(record: FieldRecord, seed: int = 0) -> CountRow:
    row = CountRow(record.disc, record.index, record.h, record.regulator, [], [])
    try:
        for ideal in record.classes:
            res = enumerate_2dim(ideal, record.units, seed=seed)
            row.six.append(res.six_count)
            row.total.append(res.total_count)
    except Exception as exc:  # a failed row must not abort the table
        log.warning("row %s failed: %s", record.record_id, exc)
        row.status = "failed"
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def count_table(records: Iterable[FieldRecord], max_disc: Optional[int] = None, seed: int = 0,
                jobs: int = 1) -> list[CountRow]:
    recs = [r for r in records if max_disc is None or r.disc <= max_disc]
    if jobs > 1 and len(recs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(count_row, recs, [seed] * len(recs)))
    return [count_row(r, seed) for r in recs]


TABLE_HEADER = "D\th\tlog_volume\tsix_components\ttotal_2dim_components\tstatus"
