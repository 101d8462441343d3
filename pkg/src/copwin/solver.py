"""Exact k-copwin decision, cop number, capture time and strategy extraction.

The game state space is the implicit transition digraph over robber
territories: the cops' first move turns the full vertex set V into V \\ W_1,
and afterwards a territory R turns into N+(R) \\ W.  Capture means reaching
the empty territory.

Two engines live here:

* a breadth-first search over reachable territories with antichain dominance
  pruning (territories that contain an already-visited territory can never
  be captured sooner, so they are skipped), used by `is_k_copwin`,
  `capture_time` and `cop_number`;
* `naive_pi_k`, which materializes the full 2^n territory space and runs a
  plain BFS.  It exists purely as a cross-check oracle and refuses instances
  above a size cap.

Strategy extraction is a separate pass that re-walks the shortest capture
keeping, at every step, the lexicographically smallest cop set that still
admits a shortest completion; this makes reported certificates reproducible.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import bounds as _bounds
from .digraph import Digraph, Strategy, TerritoryTrace, subsets_of_size
from .errors import BudgetExceeded, InvalidK, NotWinnable, TooLarge

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class SolveReport:
    """Full answer for one digraph: cn, ct with cn cops, and a certificate."""

    cop_number: int
    capture_time: int
    strategy: Strategy
    states_explored: int
    wall_time: float


@dataclass(frozen=True)
class KWinCertificate:
    """Outcome of a single k-copwin decision.

    When winning, `strategy` replays to an empty territory in the minimum
    number of steps.  When losing, `losing_core` is a territory reachable
    from the start from which the empty territory is unreachable.
    """

    k: int
    winning: bool
    strategy: Optional[Strategy]
    losing_core: Optional[int]
    states_explored: int
    capture_time: Optional[int] = None


def simulate(d: Digraph, strategy: Strategy) -> TerritoryTrace:
    """Replay a cop strategy: R_1 = V \\ W_1, R_{i+1} = N+(R_i) \\ W_{i+1}.

    Stops early once a territory is empty.
    """
    territories = []
    captured = d.n == 0
    cur = d.full
    first = True
    for w in strategy.steps:
        cur = (cur if first else d.out_set(cur)) & ~w
        first = False
        territories.append(cur)
        if cur == 0:
            captured = True
            break
    return TerritoryTrace(d.n, tuple(territories), captured)


# ---------------------------------------------------------------------------
# antichain-pruned breadth-first search


class _Visited:
    """Visited territories, bucketed by popcount for subset queries.

    Dominance rule: a candidate territory that contains a visited one is
    useless (the smaller territory is reachable at least as early and can be
    captured at least as fast), so candidates are admitted only when no
    visited mask is a subset of them.
    """

    __slots__ = ("by_pc", "all")

    def __init__(self):
        self.by_pc: dict[int, list[int]] = {}
        self.all: set[int] = set()

    def add(self, m: int) -> None:
        self.by_pc.setdefault(m.bit_count(), []).append(m)
        self.all.add(m)

    def subsets_of(self, s: int) -> list[int]:
        spc = s.bit_count()
        out = []
        for pc, lst in self.by_pc.items():
            if pc > spc:
                continue
            for m in lst:
                if m & ~s == 0:
                    out.append(m)
        return out

    def contains_subset_of(self, x: int) -> bool:
        xpc = x.bit_count()
        for pc, lst in self.by_pc.items():
            if pc > xpc:
                continue
            for m in lst:
                if m & ~x == 0:
                    return True
        return False


@dataclass
class _SearchResult:
    winning: bool
    capture_time: Optional[int]
    states: int
    losing_core: Optional[int]


def _search(d: Digraph, k: int, budget: Optional[int] = None) -> _SearchResult:
    """Layered BFS from the start state; exact shortest capture time."""
    budget = DEFAULT_NODE_BUDGET if budget is None else budget
    n = d.n
    if n == 0:
        return _SearchResult(True, 0, 0, None)
    if k >= n:
        return _SearchResult(True, 1, 1, None)
    visited = _Visited()
    states = 0
    layer: list[int] = []
    # Initial placements: territory V \ W with |W| = min(k, n).  Playing
    # fewer cops only yields dominated supersets.
    for w in subsets_of_size(d.full, k):
        r1 = d.full & ~w
        if r1 in visited.all or visited.contains_subset_of(r1):
            continue
        visited.add(r1)
        layer.append(r1)
        states += 1
    depth = 1
    while layer:
        depth += 1
        if states > budget:
            raise BudgetExceeded(f"territory budget {budget} exhausted")
        nxt_layer: list[int] = []
        for r in layer:
            s = d.out_set(r)
            if s.bit_count() <= k:
                return _SearchResult(True, depth, states, None)
            relevant = visited.subsets_of(s)
            for w in subsets_of_size(s, k):
                c = s & ~w
                if c in visited.all:
                    continue
                dominated = False
                for m in relevant:
                    if m & ~c == 0:
                        dominated = True
                        break
                if dominated:
                    continue
                visited.add(c)
                nxt_layer.append(c)
                states += 1
        layer = nxt_layer
    # Search space exhausted without capture: k cops lose.  Any visited
    # territory witnesses this (it is reachable from the start, and the
    # empty territory is unreachable from the start, hence from it).
    core = min(visited.all, key=lambda m: (m.bit_count(), m)) if visited.all else d.full
    return _SearchResult(False, None, states, core)


# ---------------------------------------------------------------------------
# lexicographic strategy extraction


class _ReachMemo:
    """Memoized bounded-depth capture queries with dominance on both sides.

    true entries (R, t): capture from R possible within t steps; any
    (R' ⊆ R, t' ≥ t) query is then true.  false entries dually.
    """

    __slots__ = ("d", "k", "true_by_pc", "false_by_pc", "calls", "budget")

    def __init__(self, d: Digraph, k: int, budget: int):
        self.d = d
        self.k = k
        self.true_by_pc: dict[int, dict[int, int]] = {}
        self.false_by_pc: dict[int, dict[int, int]] = {}
        self.calls = 0
        self.budget = budget

    def _known_true(self, r: int, t: int) -> bool:
        rpc = r.bit_count()
        for pc, entries in self.true_by_pc.items():
            if pc < rpc:
                continue
            for m, steps in entries.items():
                if steps <= t and r & ~m == 0:
                    return True
        return False

    def _known_false(self, r: int, t: int) -> bool:
        rpc = r.bit_count()
        for pc, entries in self.false_by_pc.items():
            if pc > rpc:
                continue
            for m, steps in entries.items():
                if steps >= t and m & ~r == 0:
                    return True
        return False

    def _record(self, store, r, t, keep_smaller):
        entries = store.setdefault(r.bit_count(), {})
        prev = entries.get(r)
        if prev is None or (t < prev if keep_smaller else t > prev):
            entries[r] = t

    def can_reach(self, r: int, t: int) -> bool:
        """Can the territory `r` be driven to empty in at most t steps?"""
        if r == 0:
            return True
        if t <= 0:
            return False
        self.calls += 1
        if self.calls > self.budget:
            raise BudgetExceeded("extraction budget exhausted")
        if self._known_true(r, t):
            return True
        if self._known_false(r, t):
            return False
        s = self.d.out_set(r)
        if s.bit_count() <= self.k:
            self._record(self.true_by_pc, r, 1, keep_smaller=True)
            return True
        ok = False
        for w in subsets_of_size(s, self.k):
            if self.can_reach(s & ~w, t - 1):
                ok = True
                break
        if ok:
            self._record(self.true_by_pc, r, t, keep_smaller=True)
        else:
            self._record(self.false_by_pc, r, t, keep_smaller=False)
        return ok


def _extract_strategy(d: Digraph, k: int, total: int, budget: int) -> Strategy:
    """Shortest winning strategy, lexicographically smallest W per step."""
    memo = _ReachMemo(d, k, budget)
    steps: list[int] = []
    cur = d.full
    first = True
    remaining = total
    while remaining > 0:
        base = d.full if first else d.out_set(cur)
        size = min(k, base.bit_count())
        chosen = None
        for w in subsets_of_size(base, size):
            nxt = base & ~w
            if nxt == 0 or memo.can_reach(nxt, remaining - 1):
                chosen = (w, nxt)
                break
        if chosen is None:
            raise AssertionError("shortest continuation vanished during extraction")
        steps.append(chosen[0])
        cur = chosen[1]
        first = False
        remaining -= 1
        if cur == 0:
            break
    return Strategy(d.n, tuple(steps))


# ---------------------------------------------------------------------------
# public operations


def is_k_copwin(d: Digraph, k: int, budget: Optional[int] = None) -> KWinCertificate:
    """Decide whether k cops win on D, with a replayable certificate.

    `states_explored` counts admitted territories of the decision search.
    """
    if k < 0:
        raise InvalidK(f"cop count must be >= 0, got {k}")
    res = _search(d, k, budget)
    if res.winning:
        strat = _extract_strategy(
            d, k, res.capture_time, DEFAULT_NODE_BUDGET if budget is None else budget
        )
        return KWinCertificate(k, True, strat, None, res.states, res.capture_time)
    return KWinCertificate(k, False, None, res.losing_core, res.states, None)


def capture_time(d: Digraph, k: int, budget: Optional[int] = None) -> int:
    """Length of a shortest winning strategy using at most k cops."""
    if k < 0:
        raise InvalidK(f"cop count must be >= 0, got {k}")
    res = _search(d, k, budget)
    if not res.winning:
        raise NotWinnable(f"{k} cops do not win on this digraph")
    return res.capture_time

def cop_number(d: Digraph, budget: Optional[int] = None) -> SolveReport:
    """cn(D), ct(D) with cn(D) cops, and a lexicographically-minimal strategy.

    Ascending search for the least winning k, bracketed below by the
    degree-peeling bound and above by a minimum feedback vertex set (parking
    cops on an FVS always wins).
    """
    t0 = time.perf_counter()
    if d.n == 0:
        return SolveReport(0, 0, Strategy(0, ()), 0, time.perf_counter() - t0)
    lower, _ = _bounds.lower_bound(d)
    upper = _bounds.feedback_vertex_set(d, budget).bit_count()
    total_states = 0
    for k in range(lower, upper + 1):
        res = _search(d, k, budget)
        total_states += res.states
        if res.winning:
            strat = _extract_strategy(
                d, k, res.capture_time, DEFAULT_NODE_BUDGET if budget is None else budget
            )
            return SolveReport(
                k, res.capture_time, strat, total_states, time.perf_counter() - t0
            )
    raise AssertionError("feedback vertex set bound failed to win")


def naive_pi_k(
    d: Digraph, k: int, cap: int = DEFAULT_ORACLE_CAP
) -> tuple[bool, Optional[int]]:
    """Materialized BFS over all 2^n territories; cross-check oracle only.

    Returns (winning, shortest capture time or None).  The start state is
    modeled explicitly (first move removes any |W| <= k from V), so the
    distance equals the capture time reported by the main solver.
    """
    if k < 0:
        raise InvalidK(f"cop count must be >= 0, got {k}")
    if d.n > cap:
        raise TooLarge(f"n={d.n} exceeds the naive oracle cap {cap}")
    n = d.n
    if n == 0:
        return True, 0
    full = d.full
    nplus = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        nplus[m] = nplus[m ^ low] | d.out_mask(low.bit_length() - 1)
    dist: dict[int, int] = {}
    q: deque[int] = deque()
    for size in range(0, min(k, n) + 1):
        for w in subsets_of_size(full, size):
            r1 = full & ~w
            if r1 not in dist:
                dist[r1] = 1
                q.append(r1)
    if 0 in dist:
        return True, 1
    while q:
        r = q.popleft()
        s = nplus[r]
        for size in range(0, min(k, s.bit_count()) + 1):
            for w in subsets_of_size(s, size):
                c = s & ~w
                if c not in dist:
                    dist[c] = dist[r] + 1
                    if c == 0:
                        return True, dist[c]
                    q.append(c)
    return False, None
