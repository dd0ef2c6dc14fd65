"""Scratch: score-interpretation sensitivity for the game dynamics (not shipped)."""

import time

import numpy as np
from numba import njit

from netgames.graphgen import make_reg, make_er, make_ba, make_geo
from netgames.rng import mix64, rand_below, rand_unit

STAY = -1


@njit(cache=True, inline="always")
def _add(indptr, indices, occ, nbr, team, node):
    occ[team, node] += 1
    for k in range(indptr[node], indptr[node + 1]):
        nbr[team, indices[k]] += 1


@njit(cache=True, inline="always")
def _drop(indptr, indices, occ, nbr, team, node):
    occ[team, node] -= 1
    for k in range(indptr[node], indptr[node + 1]):
        nbr[team, indices[k]] -= 1


@njit(cache=True, inline="always")
def _move_score(indptr, indices, occ, nbr, team, v, u, mode):
    # mover at u, candidate v (v adjacent to u)
    if mode == 0:  # inclusive instances
        return occ[team, v] + nbr[team, v] - 1
    if mode == 1:  # adjacent instances only
        return nbr[team, v] - 1
    if mode == 2:  # occupancy of candidate node
        return occ[team, v]
    # mode 3: count of adjacent nodes holding a teammate (mover excluded)
    s = 0
    for k in range(indptr[v], indptr[v + 1]):
        w = indices[k]
        c = occ[team, w]
        if w == u:
            c -= 1
        if c > 0:
            s += 1
    return s


@njit(cache=True, inline="always")
def _enc_score(indptr, indices, occ, nbr, team, e, mode):
    if mode == 0:  # adjacent instances (self at e, excluded automatically)
        return nbr[team, e]
    s = 0  # node count
    for k in range(indptr[e], indptr[e + 1]):
        if occ[team, indices[k]] > 0:
            s += 1
    return s


@njit(cache=True)
def _choose(indptr, indices, occ, nbr, team, game, u, state, dests, ties, mmode):
    other = 1 - team
    cnt = 0
    for k in range(indptr[u], indptr[u + 1]):
        v = indices[k]
        if occ[other, v] == 0:
            dests[cnt] = v
            cnt += 1
    if cnt == 0:
        return STAY
    if game == 5:
        total = 0.0
        for i in range(cnt):
            total += _move_score(indptr, indices, occ, nbr, team, dests[i], u, mmode) + 1
        r = rand_unit(state) * total
        acc = 0.0
        for i in range(cnt):
            acc += _move_score(indptr, indices, occ, nbr, team, dests[i], u, mmode) + 1
            if r < acc:
                return dests[i]
        return dests[cnt - 1]
    if game == 4 or (game == 3 and team == 0):
        best = -2147483648
        nt = 0
        for i in range(cnt):
            s = _move_score(indptr, indices, occ, nbr, team, dests[i], u, mmode)
            if s > best:
                best = s
                ties[0] = dests[i]
                nt = 1
            elif s == best:
                ties[nt] = dests[i]
                nt += 1
        if nt == 1:
            return ties[0]
        return ties[rand_below(state, nt)]
    return dests[rand_below(state, cnt)]


@njit(cache=True, nogil=True)
def run(indptr, indices, n, game, ppt, max_iters, seed, mmode, emode):
    occ = np.zeros((2, n), dtype=np.int32)
    nbr = np.zeros((2, n), dtype=np.int32)
    pos = np.empty((2, ppt), dtype=np.int32)
    alive = np.zeros(2, dtype=np.int32)
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    dests = np.empty(n, dtype=np.int32)
    ties = np.empty(n, dtype=np.int32)
    for i in range(ppt):
        for team in range(2):
            other = 1 - team
            elig = 0
            for v in range(n):
                if occ[other, v] == 0:
                    elig += 1
            k = rand_below(state, elig)
            node = -1
            for v in range(n):
                if occ[other, v] == 0:
                    if k == 0:
                        node = v
                        break
                    k -= 1
            _add(indptr, indices, occ, nbr, team, node)
            pos[team, i] = node
            alive[team] += 1
    it = 0
    while it < max_iters:
        ia = rand_below(state, alive[0])
        ua = pos[0, ia]
        ib = rand_below(state, alive[1])
        ub = pos[1, ib]
        va = _choose(indptr, indices, occ, nbr, 0, game, ua, state, dests, ties, mmode)
        vb = _choose(indptr, indices, occ, nbr, 1, game, ub, state, dests, ties, mmode)
        if va != STAY:
            _drop(indptr, indices, occ, nbr, 0, ua)
            _add(indptr, indices, occ, nbr, 0, va)
            pos[0, ia] = va
        if vb != STAY:
            _drop(indptr, indices, occ, nbr, 1, ub)
            _add(indptr, indices, occ, nbr, 1, vb)
            pos[1, ib] = vb
        it += 1
        if va != STAY and va == vb:
            if game == 1:
                ra = True
                rb = True
            else:
                sa = _enc_score(indptr, indices, occ, nbr, 0, va, emode)
                sb = _enc_score(indptr, indices, occ, nbr, 1, va, emode)
                ra = sb >= sa
                rb = sa >= sb
            if ra:
                _drop(indptr, indices, occ, nbr, 0, va)
                alive[0] -= 1
                pos[0, ia] = pos[0, alive[0]]
            if rb:
                _drop(indptr, indices, occ, nbr, 1, vb)
                alive[1] -= 1
                pos[1, ib] = pos[1, alive[1]]
            if alive[0] == 0 or alive[1] == 0:
                break
    if alive[0] == 0 and alive[1] == 0:
        return 2, it
    if alive[1] == 0:
        return 0, it
    if alive[0] == 0:
        return 1, it
    return 3, it


def batch(graph, game, runs, mmode, emode, cap=1_000_000, base=911):
    indptr, indices = graph.csr()
    res = np.zeros(4, dtype=int)
    durs = []
    for k in range(runs):
        r, d = run(indptr, indices, graph.node_count, game, 10, cap, np.uint64(mix64(base, k)), mmode, emode)
        res[r] += 1
        if r != 3:
            durs.append(d)
    md = float(np.mean(durs)) if durs else float("nan")
    return res, md


if __name__ == "__main__":
    graphs = {
        "REG": make_reg(5),
        "ER": make_er(25, 5.0, 101),
        "BA": make_ba(25, 2, 3, 101),
        "GEO": make_geo(5, 0.25, 101),
    }
    combos = [(0, 0), (1, 0), (1, 1), (2, 0), (3, 0), (3, 1), (0, 1)]
    t0 = time.time()
    for mm, em in combos:
        print(f"=== move_mode={mm} enc_mode={em} ===")
        res, md = batch(graphs["REG"], 4, 60, mm, em, cap=300_000)
        print(f"  G4/REG cap3e5  [A,B,T,C]={res.tolist()} mean_term_dur={md:.0f}")
        for topo in ("REG", "ER"):
            res, md = batch(graphs[topo], 2, 600, mm, em)
            print(f"  G2/{topo}  [A,B,T,C]={res.tolist()} tie%={100*res[2]/600:.1f} dur={md:.0f}")
        res, md = batch(graphs["BA"], 3, 300, mm, em)
        print(f"  G3/BA  [A,B,T,C]={res.tolist()} pA%={100*res[0]/300:.1f} dur={md:.0f}")
        res, md = batch(graphs["ER"], 4, 300, mm, em)
        print(f"  G4/ER  [A,B,T,C]={res.tolist()} tie%={100*res[2]/300:.1f} dur={md:.0f}")
        res, md = batch(graphs["GEO"], 4, 120, mm, em)
        print(f"  G4/GEO [A,B,T,C]={res.tolist()} tie%={100*res[2]/120:.1f} dur={md:.0f}")
        res, md = batch(graphs["REG"], 5, 300, mm, em)
        print(f"  G5/REG [A,B,T,C]={res.tolist()} dur={md:.0f}")
        print(f"  ({time.time()-t0:.0f}s)")
