"""Single-replica game engine.

One iteration selects one mover per team (uniformly over living player
instances), computes both destinations against the pre-move state, applies
the two moves simultaneously, and resolves an encounter when both movers
land on the same node. Movement policies:

  G1  both teams move uniformly at random over valid destinations
  G2  as G1; encounters won by the mover with more nearby teammates
  G3  team A moves to the destination with most nearby teammates, B as G2
  G4  both teams use the deterministic max-teammate move
  G5  both teams move randomly with probability proportional to
      (teammate count + 1)

A destination is valid when it is adjacent to the mover and free of
adversaries; a fully blocked mover stays put. Encounters remove the
lower-scoring mover, or both on a tie (always both under G1).

The hot loop is compiled with numba; the Python-level operations wrap the
same kernels, so a step-by-step replay consumes the random stream exactly
like the fused loop.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Optional

import numpy as np
from numba import njit

from .graphgen import Graph
from .rng import GameRng, rand_below, rand_unit

STAY = -1

_STATUS_OK = 0
_STATUS_NO_PLACEMENT = -2
_STATUS_BAD_ENCOUNTER = -9

_RES_WIN_A = 0
_RES_WIN_B = 1
_RES_TIE = 2
_RES_CENSORED = 3


class Team(IntEnum):
    A = 0
    B = 1


class Game(IntEnum):
    G1 = 1
    G2 = 2
    G3 = 3
    G4 = 4
    G5 = 5

    @classmethod
    def parse(cls, text: str) -> "Game":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown game {text!r}; expected one of g1..g5") from None


class Result(IntEnum):
    WIN_A = 0
    WIN_B = 1
    TIE = 2
    CENSORED = 3


class InitializationError(RuntimeError):
    """No admissible node was available while placing the initial players."""


class FinishedGameError(RuntimeError):
    """step() was called on a state where a team is already extinct."""


@dataclass
class GameConfig:
    game: Game
    players_per_team: int = 10
    max_iterations: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        self.game = Game(self.game)
        if self.players_per_team < 1:
            raise ValueError("players_per_team must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass
class GameOutcome:
    result: Result
    duration: int


@dataclass
class EncounterRecord:
    node: int
    score_a: int
    score_b: int
    removed_a: bool
    removed_b: bool


@dataclass
class GameState:
    """Occupancy per (team, node) plus the per-instance position lists.

    `neighbor_counts[t, v]` caches the number of team-t players adjacent to v
    and is maintained incrementally by the kernels. `positions[t, :alive[t]]`
    lists living player positions; its order is part of the replayable
    trajectory because movers are drawn by instance index.
    """

    occupancy: np.ndarray
    neighbor_counts: np.ndarray
    positions: np.ndarray
    alive: np.ndarray
    iteration: int

    @property
    def alive_a(self) -> int:
        return int(self.alive[0])

    @property
    def alive_b(self) -> int:
        return int(self.alive[1])

    def counts(self, team: Team) -> np.ndarray:
        return self.occupancy[int(team)]

    def copy(self) -> "GameState":
        return GameState(
            self.occupancy.copy(),
            self.neighbor_counts.copy(),
            self.positions.copy(),
            self.alive.copy(),
            self.iteration,
        )


# --- jitted kernels ---------------------------------------------------------


@njit(cache=True, inline="always")
def _add_player(indptr, indices, occ, nbr, team, node):
    occ[team, node] += 1
    for k in range(indptr[node], indptr[node + 1]):
        nbr[team, indices[k]] += 1


@njit(cache=True, inline="always")
def _drop_player(indptr, indices, occ, nbr, team, node):
    occ[team, node] -= 1
    for k in range(indptr[node], indptr[node + 1]):
        nbr[team, indices[k]] -= 1


@njit(cache=True)
def _init_players(indptr, indices, occ, nbr, pos, alive, ppt, state):
    n = occ.shape[1]
    for i in range(ppt):
        for team in range(2):
            other = 1 - team
            eligible = 0
            for v in range(n):
                if occ[other, v] == 0:
                    eligible += 1
            if eligible == 0:
                return _STATUS_NO_PLACEMENT
            k = rand_below(state, eligible)
            node = -1
            for v in range(n):
                if occ[other, v] == 0:
                    if k == 0:
                        node = v
                        break
                    k -= 1
            _add_player(indptr, indices, occ, nbr, team, node)
            pos[team, i] = node
            alive[team] += 1
    return _STATUS_OK


@njit(cache=True, inline="always")
def _gather_dests(indptr, indices, occ, other, u, dests):
    cnt = 0
    for k in range(indptr[u], indptr[u + 1]):
        v = indices[k]
        if occ[other, v] == 0:
            dests[cnt] = v
            cnt += 1
    return cnt


@njit(cache=True)
def _choose_move(indptr, indices, occ, nbr, team, game, u, state, dests, ties):
    other = 1 - team
    cnt = _gather_dests(indptr, indices, occ, other, u, dests)
    if cnt == 0:
        return STAY
    if game == 5:
        # Score + 1 weighting; the mover itself never counts (it is adjacent
        # to every candidate), so each weight is occ + nbr as stored.
        total = 0.0
        for i in range(cnt):
            d = dests[i]
            total += occ[team, d] + nbr[team, d]
        r = rand_unit(state) * total
        acc = 0.0
        for i in range(cnt):
            d = dests[i]
            acc += occ[team, d] + nbr[team, d]
            if r < acc:
                return d
        return dests[cnt - 1]
    if game == 4 or (game == 3 and team == 0):
        best = -2147483648
        nties = 0
        for i in range(cnt):
            d = dests[i]
            s = occ[team, d] + nbr[team, d] - 1
            if s > best:
                best = s
                ties[0] = d
                nties = 1
            elif s == best:
                ties[nties] = d
                nties += 1
        if nties == 1:
            return ties[0]
        return ties[rand_below(state, nties)]
    return dests[rand_below(state, cnt)]


@njit(cache=True, inline="always")
def _remove_mover(indptr, indices, occ, nbr, pos, alive, team, idx):
    _drop_player(indptr, indices, occ, nbr, team, pos[team, idx])
    alive[team] -= 1
    pos[team, idx] = pos[team, alive[team]]


@njit(cache=True)
def _step(indptr, indices, occ, nbr, pos, alive, game, state, dests, ties):
    ia = rand_below(state, alive[0])
    ua = pos[0, ia]
    ib = rand_below(state, alive[1])
    ub = pos[1, ib]
    va = _choose_move(indptr, indices, occ, nbr, 0, game, ua, state, dests, ties)
    vb = _choose_move(indptr, indices, occ, nbr, 1, game, ub, state, dests, ties)
    if va != STAY:
        _drop_player(indptr, indices, occ, nbr, 0, ua)
        _add_player(indptr, indices, occ, nbr, 0, va)
        pos[0, ia] = va
    if vb != STAY:
        _drop_player(indptr, indices, occ, nbr, 1, ub)
        _add_player(indptr, indices, occ, nbr, 1, vb)
        pos[1, ib] = vb
    enc = -1
    removed = 0
    sa = -1
    sb = -1
    if va != STAY and va == vb:
        enc = va
        # Valid destinations exclude adversary-held nodes, so a collision
        # node must have been empty: it now holds exactly the two movers.
        if occ[0, enc] != 1 or occ[1, enc] != 1:
            return ua, va, ub, vb, enc, _STATUS_BAD_ENCOUNTER, sa, sb
        if game == 1:
            remove_a = True
            remove_b = True
        else:
            sa = occ[0, enc] + nbr[0, enc] - 1
            sb = occ[1, enc] + nbr[1, enc] - 1
            remove_a = sb >= sa
            remove_b = sa >= sb
        if remove_a:
            _remove_mover(indptr, indices, occ, nbr, pos, alive, 0, ia)
            removed |= 1
        if remove_b:
            _remove_mover(indptr, indices, occ, nbr, pos, alive, 1, ib)
            removed |= 2
    return ua, va, ub, vb, enc, removed, sa, sb


@njit(cache=True, nogil=True)
def _run_game(indptr, indices, n, game, ppt, max_iters, seed):
    occ = np.zeros((2, n), dtype=np.int32)
    nbr = np.zeros((2, n), dtype=np.int32)
    pos = np.empty((2, ppt), dtype=np.int32)
    alive = np.zeros(2, dtype=np.int32)
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    dests = np.empty(n, dtype=np.int32)
    ties = np.empty(n, dtype=np.int32)
    status = _init_players(indptr, indices, occ, nbr, pos, alive, ppt, state)
    if status != _STATUS_OK:
        return status, 0
    it = 0
    while it < max_iters:
        rec = _step(indptr, indices, occ, nbr, pos, alive, game, state, dests, ties)
        it += 1
        if rec[5] == _STATUS_BAD_ENCOUNTER:
            return _STATUS_BAD_ENCOUNTER, it
        if alive[0] == 0 or alive[1] == 0:
            break
    if alive[0] == 0 and alive[1] == 0:
        return _RES_TIE, it
    if alive[1] == 0:
        return _RES_WIN_A, it
    if alive[0] == 0:
        return _RES_WIN_B, it
    return _RES_CENSORED, it


# --- Python-level operations -------------------------------------------------


def init_state(graph: Graph, players_per_team: int, rng: GameRng) -> GameState:
    """Place players one at a time in alternating team order (A first).

    Each placement is uniform over the nodes currently free of adversaries,
    so teammates may stack from the start but mixed nodes never occur.
    """
    if graph.node_count < 2:
        raise ValueError("graph must have at least 2 nodes")
    if players_per_team < 1:
        raise ValueError("players_per_team must be >= 1")
    indptr, indices = graph.csr()
    occ = np.zeros((2, graph.node_count), dtype=np.int32)
    nbr = np.zeros((2, graph.node_count), dtype=np.int32)
    pos = np.empty((2, players_per_team), dtype=np.int32)
    alive = np.zeros(2, dtype=np.int32)
    status = _init_players(indptr, indices, occ, nbr, pos, alive, players_per_team, rng.state)
    if status != _STATUS_OK:
        raise InitializationError("no node free of adversaries was available")
    return GameState(occ, nbr, pos, alive, 0)


def valid_destinations(state: GameState, graph: Graph, from_node: int, team: Team) -> list:
    """Adjacent nodes free of adversaries; the current node is never included."""
    other = 1 - int(team)
    occ = state.occupancy
    return [v for v in graph.adjacency[from_node] if occ[other, v] == 0]


def proximity_score(
    state: GameState,
    graph: Graph,
    node: int,
    team: Team,
    exclude_self_at: Optional[int] = None,
) -> int:
    """Teammates on `node` or adjacent to it, optionally excluding the mover."""
    t = int(team)
    occ = state.occupancy
    score = int(occ[t, node])
    for v in graph.adjacency[node]:
        score += int(occ[t, v])
    if exclude_self_at is not None:
        if exclude_self_at == node or exclude_self_at in graph.adjacency[node]:
            score -= 1
    return score


def choose_move(
    state: GameState, graph: Graph, from_node: int, team: Team, game: Game, rng: GameRng
) -> int:
    """Destination node per the game's policy, or STAY when fully blocked."""
    if state.occupancy[int(team), from_node] < 1:
        raise ValueError(f"no team-{Team(team).name} player at node {from_node}")
    indptr, indices = graph.csr()
    dests = np.empty(graph.node_count, dtype=np.int32)
    ties = np.empty(graph.node_count, dtype=np.int32)
    return int(
        _choose_move(
            indptr,
            indices,
            state.occupancy,
            state.neighbor_counts,
            int(team),
            int(game),
            from_node,
            rng.state,
            dests,
            ties,
        )
    )


def resolve_encounter(state: GameState, graph: Graph, node: int, game: Game):
    """(remove_a, remove_b) for two adversary movers co-located at `node`."""
    occ = state.occupancy
    if occ[0, node] != 1 or occ[1, node] != 1:
        raise ValueError("encounter node must hold exactly one mover per team")
    if Game(game) == Game.G1:
        return True, True
    score_a = proximity_score(state, graph, node, Team.A, exclude_self_at=node)
    score_b = proximity_score(state, graph, node, Team.B, exclude_self_at=node)
    return score_b >= score_a, score_a >= score_b


def step(state: GameState, graph: Graph, config: GameConfig, rng: GameRng):
    """One simultaneous two-mover iteration; returns the successor state.

    The encounter record is None unless both movers arrived on a common node.
    """
    if state.alive_a == 0 or state.alive_b == 0:
        raise FinishedGameError("cannot step a finished game")
    nxt = state.copy()
    indptr, indices = graph.csr()
    dests = np.empty(graph.node_count, dtype=np.int32)
    ties = np.empty(graph.node_count, dtype=np.int32)
    rec = _step(
        indptr,
        indices,
        nxt.occupancy,
        nxt.neighbor_counts,
        nxt.positions,
        nxt.alive,
        int(config.game),
        rng.state,
        dests,
        ties,
    )
    nxt.iteration += 1
    ua, va, ub, vb, enc, removed, sa, sb = (int(x) for x in rec)
    if removed == _STATUS_BAD_ENCOUNTER:
        raise RuntimeError(f"encounter on a node that was not empty pre-move ({enc})")
    encounter = None
    if enc >= 0:
        encounter = EncounterRecord(enc, sa, sb, bool(removed & 1), bool(removed & 2))
    return nxt, encounter


def run_game(graph: Graph, config: GameConfig) -> GameOutcome:
    """Play one full replica; deterministic in (graph, config.seed)."""
    indptr, indices = graph.csr()
    if graph.node_count < 2:
        raise ValueError("graph must have at least 2 nodes")
    res, duration = _run_game(
        indptr,
        indices,
        graph.node_count,
        int(config.game),
        config.players_per_team,
        config.max_iterations,
        np.uint64(config.seed & ((1 << 64) - 1)),
    )
    if res == _STATUS_NO_PLACEMENT:
        raise InitializationError("no node free of adversaries was available")
    if res == _STATUS_BAD_ENCOUNTER:
        raise RuntimeError("encounter on a node that was not empty pre-move")
    return GameOutcome(Result(res), int(duration))


def run_game_traced(
    graph: Graph, config: GameConfig, sink: Callable[[dict], None]
) -> GameOutcome:
    """run_game with a per-iteration callback; identical stream and outcome.

    Each record carries the iteration number, the two movers, their
    destinations (STAY as None) and the removals, for debugging dumps.
    """
    rng = GameRng(config.seed)
    state = init_state(graph, config.players_per_team, rng)
    indptr, indices = graph.csr()
    dests = np.empty(graph.node_count, dtype=np.int32)
    ties = np.empty(graph.node_count, dtype=np.int32)
    it = 0
    while it < config.max_iterations:
        rec = _step(
            indptr,
            indices,
            state.occupancy,
            state.neighbor_counts,
            state.positions,
            state.alive,
            int(config.game),
            rng.state,
            dests,
            ties,
        )
        it += 1
        ua, va, ub, vb, enc, removed, sa, sb = (int(x) for x in rec)
        if removed == _STATUS_BAD_ENCOUNTER:
            raise RuntimeError(f"encounter on a node that was not empty pre-move ({enc})")
        removals = []
        if removed & 1:
            removals.append("A")
        if removed & 2:
            removals.append("B")
        sink(
            {
                "iteration": it,
                "movers": [ua, ub],
                "destinations": [None if va == STAY else va, None if vb == STAY else vb],
                "encounter_node": None if enc < 0 else enc,
                "removals": removals,
            }
        )
        if state.alive_a == 0 or state.alive_b == 0:
            break
    state.iteration = it
    if state.alive_a == 0 and state.alive_b == 0:
        return GameOutcome(Result.TIE, it)
    if state.alive_b == 0:
        return GameOutcome(Result.WIN_A, it)
    if state.alive_a == 0:
        return GameOutcome(Result.WIN_B, it)
    return GameOutcome(Result.CENSORED, it)
