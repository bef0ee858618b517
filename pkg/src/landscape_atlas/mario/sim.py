"""Grid platformer simulator with two deterministic agents.

Movement model.  The agent occupies one cell; row 0 is the top.  Tiles never
block movement — they only support the agent from below (standable tile in
the cell underneath), hurt it (hazards), or pay out (coins).  Each tick the
agent picks an action, then physics resolve:

* vertical: a jump started from support rises 2 rows per tick for 2 ticks
  (4 rows max, clipped at the top row); otherwise gravity pulls 1 row per
  tick unless the agent is supported and did not choose to drop; falling off
  the bottom ends the run;
* horizontal: the agent may move one column right (never left);
* contact: finishing the tick in a new cell that holds a hazard kills the
  scared agent and costs the astar agent a 10-tick penalty; coins are
  collected per distinct cell visited.

A full jump spans up to 6 columns back to the takeoff elevation.  The run
wins when the agent occupies the last column with total ticks <= t_max
(4 x width).  The spawn cell sits above the bottommost standable tile of
column 0 that has a non-standable cell above it; no such tile means no run.

The astar agent plans a cheapest-ticks path over (row, column, jump-phase)
states with the admissible remaining-columns heuristic, then replays it.  On
an unwinnable level it replays the cheapest path to the farthest column
reachable within the budget.  The scared agent never plans: it runs right and
jumps whenever a gap or a hazard shows up within two columns of lookahead.
"""
from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

import numpy as np

from .tiles import COIN, HAZARD_MASK, STANDABLE_MASK, TileGrid

ASTAR = "astar"
SCARED = "scared"
AGENT_KINDS = (ASTAR, SCARED)

HAZARD_PENALTY = 10
_INF = float("inf")


@dataclass(frozen=True)
class SimulationResult:
    d_level: int
    t_level: int
    n_coins: int
    t_g: int
    t_tot: int
    t_max: int
    won: bool

    def __post_init__(self):
        if not (0 <= self.t_g <= self.t_tot <= self.t_max):
            raise ValueError("need 0 <= t_g <= t_tot <= t_max")
        if self.d_level < 0:
            raise ValueError("d_level must be >= 0")
        if self.won and self.t_tot < 1:
            raise ValueError("a won run consumes at least one tick")


def basic_fitness(r: SimulationResult) -> float:
    v = (r.d_level - r.t_level + r.n_coins + (5000 if r.won else 0)) / 5000.0
    return min(1.0, max(0.0, (v + 0.04) / 1.26))


def air_time(r: SimulationResult) -> float:
    return r.t_g / r.t_tot if r.won else 1.0


def time_taken(r: SimulationResult) -> float:
    return 1.0 - r.t_tot / r.t_max if r.won else 1.0


class _Level:
    """Flattened lookup tables for one grid."""

    __slots__ = ("height", "width", "t_max", "supported", "hazard", "coin",
                 "col_open", "spawn")

    def __init__(self, grid: TileGrid):
        cells = grid.cells
        h, w = cells.shape
        self.height = h
        self.width = w
        self.t_max = 4 * w
        std = STANDABLE_MASK[cells]
        sup = np.zeros((h, w), dtype=bool)
        sup[:-1, :] = std[1:, :]
        self.supported = sup.ravel().tolist()
        self.hazard = HAZARD_MASK[cells].ravel().tolist()
        self.coin = (cells == COIN).ravel().tolist()
        self.col_open = (~std.any(axis=0)).tolist()
        self.spawn = -1
        for r in range(h - 1, 0, -1):
            if std[r, 0] and not std[r - 1, 0]:
                self.spawn = (r - 1) * w
                break


def _spawn_result(lv: _Level, agent: str) -> SimulationResult | None:
    """Handle runs decided at the spawn cell; None means the run proceeds."""
    if lv.spawn < 0:
        return SimulationResult(0, 0, 0, 0, 0, lv.t_max, False)
    hostile = lv.hazard[lv.spawn]
    if hostile and agent == SCARED:
        return SimulationResult(1, 0, 0, 0, 0, lv.t_max, False)
    if lv.width == 1:
        # Already in the last column; one settling tick, plus the hazard
        # penalty if the spawn cell itself is hostile (astar only here).
        t = 1 + (HAZARD_PENALTY if hostile else 0)
        if t > lv.t_max:
            return SimulationResult(1, 0, 0, 0, 0, lv.t_max, False)
        coins = 1 if lv.coin[lv.spawn] else 0
        return SimulationResult(1, t, coins, 1, t, lv.t_max, True)
    return None


def simulate(grid: TileGrid, agent: str) -> SimulationResult:
    if agent not in AGENT_KINDS:
        raise ValueError(f"unknown agent kind {agent!r}")
    key = (agent, grid.cells.shape, grid.cells.tobytes())
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    lv = _Level(grid)
    result = _spawn_result(lv, agent)
    if result is None:
        result = _run_astar(lv) if agent == ASTAR else _run_scared(lv)
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[key] = result
    return result


def simulate_trace(grid: TileGrid, agent: str
                   ) -> tuple[SimulationResult, tuple[tuple[int, int], ...]]:
    """Like simulate, but also returns the visited (row, col) cells."""
    if agent not in AGENT_KINDS:
        raise ValueError(f"unknown agent kind {agent!r}")
    lv = _Level(grid)
    track: list[tuple[int, int]] = []
    result = _spawn_result(lv, agent)
    if result is None:
        result = _run_astar(lv, track) if agent == ASTAR \
            else _run_scared(lv, track)
    elif lv.spawn >= 0:
        track.append((lv.spawn // lv.width, 0))
    return result, tuple(track)


_CACHE: dict = {}
_CACHE_LIMIT = 8192


def _run_scared(lv: _Level, track: list | None = None) -> SimulationResult:
    w, h = lv.width, lv.height
    supported, hazard, coin, col_open = lv.supported, lv.hazard, lv.coin, lv.col_open
    r, c, p = lv.spawn // w, 0, 0
    coins = {lv.spawn} if coin[lv.spawn] else set()
    t_tot = t_g = 0
    best_c = 0
    if track is not None:
        track.append((r, c))
    while True:
        cell = r * w + c
        standing = p == 0 and supported[cell]
        if standing:
            jump = False
            for cc in (c + 1, c + 2):
                if cc < w and col_open[cc]:
                    jump = True
                    break
            if not jump:
                for cc in (c + 1, c + 2):
                    if cc >= w:
                        break
                    for rr in range(max(0, r - 1), min(h, r + 2)):
                        if hazard[rr * w + cc]:
                            jump = True
                            break
                    if jump:
                        break
            if jump:
                rise = 2 if r >= 2 else r
                r -= rise
                p = 1 if rise == 2 else 0
        elif p > 0:
            rise = 2 if r >= 2 else r
            r -= rise
            p = p - 1 if rise == 2 else 0
        else:
            r += 1
            if r >= h:
                t_tot += 1
                break  # fell out of the level
        c += 1
        t_tot += 1
        cell = r * w + c
        if track is not None:
            track.append((r, c))
        if coin[cell]:
            coins.add(cell)
        if c > best_c:
            best_c = c
        if hazard[cell]:
            break  # contact with a hazard in a new cell: run over
        if p == 0 and supported[cell]:
            t_g += 1
        if c == w - 1:
            won = t_tot <= lv.t_max
            return SimulationResult(w if won else best_c + 1, t_tot,
                                    len(coins), t_g, t_tot, lv.t_max, won)
        if t_tot >= lv.t_max:
            break
    t_tot = min(t_tot, lv.t_max)
    return SimulationResult(best_c + 1, t_tot, len(coins), t_g, t_tot,
                            lv.t_max, False)


def _edges(lv: _Level, r: int, c: int, p: int):
    """Successor (r, c, p, cost) tuples, in a fixed deterministic order."""
    w, h = lv.width, lv.height
    supported, hazard = lv.supported, lv.hazard
    cell = r * w + c
    standing = p == 0 and supported[cell]
    out = []
    moves = ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)) if standing \
        else ((0, 0), (0, 1))
    for kind, dx in moves:  # kind: 0 stay/fall, 1 jump, 2 drop
        if dx and c + 1 >= w:
            continue
        if kind == 1:
            rise = 2 if r >= 2 else r
            r2, p2 = r - rise, (1 if rise == 2 else 0)
        elif kind == 2 or not standing:
            if p > 0:
                rise = 2 if r >= 2 else r
                r2, p2 = r - rise, (p - 1 if rise == 2 else 0)
            else:
                r2, p2 = r + 1, 0
                if r2 >= h:
                    continue  # falls out: dead end
        else:
            r2, p2 = r, 0
        c2 = c + dx
        cost = 1
        if (r2 != r or c2 != c) and hazard[r2 * w + c2]:
            cost += HAZARD_PENALTY
        out.append((r2, c2, p2, cost))
    return out


def _run_astar(lv: _Level, track: list | None = None) -> SimulationResult:
    w = lv.width
    start = lv.spawn * 3
    start_cost = HAZARD_PENALTY if lv.hazard[lv.spawn] else 0
    goal = _astar_search(lv, start, start_cost, early_exit=True)
    dist, parent, goal_state = goal
    if goal_state >= 0 and dist[goal_state] <= lv.t_max:
        return _replay(lv, dist, parent, goal_state, won=True, track=track)
    if goal_state >= 0:
        # Goal exists but over budget: need the full reachable set.
        dist, parent, _ = _astar_search(lv, start, start_cost, early_exit=False)
    best_c, best_d, best_state = -1, _INF, -1
    for state, d in enumerate(dist):
        if d <= lv.t_max:
            c = (state // 3) % w
            if c > best_c or (c == best_c and d < best_d):
                best_c, best_d, best_state = c, d, state
    return _replay(lv, dist, parent, best_state, won=False, track=track)


def _astar_search(lv: _Level, start: int, start_cost: int, early_exit: bool):
    w = lv.width
    n_states = lv.height * w * 3
    dist = [_INF] * n_states
    done = [False] * n_states
    parent = [-1] * n_states
    dist[start] = start_cost
    last_col = w - 1
    heap = [(start_cost + last_col, start)]
    goal_state = -1
    while heap:
        f, state = heappop(heap)
        if done[state]:
            continue
        done[state] = True
        cell, p = divmod(state, 3)
        r, c = divmod(cell, w)
        if c == last_col:
            if goal_state < 0:
                goal_state = state
                if early_exit:
                    break
            continue
        g = dist[state]
        for r2, c2, p2, cost in _edges(lv, r, c, p):
            s2 = (r2 * w + c2) * 3 + p2
            g2 = g + cost
            if g2 < dist[s2]:
                dist[s2] = g2
                parent[s2] = state
                heappush(heap, (g2 + last_col - c2, s2))
    return dist, parent, goal_state


def _replay(lv: _Level, dist, parent, state: int, won: bool,
            track: list | None = None) -> SimulationResult:
    w = lv.width
    if state < 0:  # budget excludes even the spawn (hazard spawn, tiny t_max)
        return SimulationResult(1, 0, 0, 0, 0, lv.t_max, False)
    chain = []
    s = state
    while s >= 0:
        chain.append(s)
        s = parent[s]
    chain.reverse()
    coins = set()
    t_g = 0
    best_c = 0
    for i, s in enumerate(chain):
        cell, p = divmod(s, 3)
        c = cell % w
        if track is not None:
            track.append((cell // w, c))
        if c > best_c:
            best_c = c
        if lv.coin[cell]:
            coins.add(cell)
        if i > 0 and p == 0 and lv.supported[cell]:
            t_g += 1
    t_tot = int(dist[state])
    d_level = w if won else best_c + 1
    return SimulationResult(d_level, t_tot, len(coins), t_g, t_tot,
                            lv.t_max, won)
