"""Scratch: encounter-score statistics for G2/G4 (not shipped)."""

import numpy as np
from numba import njit

from netgames.graphgen import make_er, make_reg, make_ba, make_geo
from netgames.rng import mix64, rand_below, rand_unit
from scratch_variants import _add, _drop, _choose


@njit(cache=True)
def run_instr(indptr, indices, n, game, ppt, max_iters, seed, mmode, emode, enc_log):
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
    nenc = 0
    while it < max_iters:
        ia = rand_below(state, alive[0])
        ua = pos[0, ia]
        ib = rand_below(state, alive[1])
        ub = pos[1, ib]
        va = _choose(indptr, indices, occ, nbr, 0, game, ua, state, dests, ties, mmode)
        vb = _choose(indptr, indices, occ, nbr, 1, game, ub, state, dests, ties, mmode)
        if va != -1:
            _drop(indptr, indices, occ, nbr, 0, ua)
            _add(indptr, indices, occ, nbr, 0, va)
            pos[0, ia] = va
        if vb != -1:
            _drop(indptr, indices, occ, nbr, 1, ub)
            _add(indptr, indices, occ, nbr, 1, vb)
            pos[1, ib] = vb
        it += 1
        if va != -1 and va == vb:
            if game == 1:
                sa = 0
                sb = 0
            elif emode == 0:
                sa = nbr[0, va]
                sb = nbr[1, va]
            else:
                sa = 0
                sb = 0
                for k in range(indptr[va], indptr[va + 1]):
                    if occ[0, indices[k]] > 0:
                        sa += 1
                    if occ[1, indices[k]] > 0:
                        sb += 1
            if nenc < enc_log.shape[0]:
                enc_log[nenc, 0] = sa
                enc_log[nenc, 1] = sb
                enc_log[nenc, 2] = alive[0]
                enc_log[nenc, 3] = alive[1]
                nenc += 1
            ra = (game == 1) or (sb >= sa)
            rb = (game == 1) or (sa >= sb)
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
        res = 2
    elif alive[1] == 0:
        res = 0
    elif alive[0] == 0:
        res = 1
    else:
        res = 3
    return res, it, nenc


if __name__ == "__main__":
    for topo, g in (("REG", make_reg(5)), ("ER", make_er(25, 5.0, 101))):
        indptr, indices = g.csr()
        eq = 0
        tot = 0
        ties_total = 0
        runs = 400
        pair_hist = {}
        reach = np.zeros(11, dtype=int)  # min(alive) when the game ended
        for k in range(runs):
            log = np.zeros((4000, 4), dtype=np.int32)
            res, it, nenc = run_instr(indptr, indices, 25, 2, 10, 1_000_000,
                                      np.uint64(mix64(5150, k)), 1, 0, log)
            if res == 2:
                ties_total += 1
            for e in range(nenc):
                sa, sb, aa, ab = log[e]
                tot += 1
                if sa == sb:
                    eq += 1
                key = (min(int(sa), 4), min(int(sb), 4))
                pair_hist[key] = pair_hist.get(key, 0) + 1
        print(f"G2/{topo}: encounters={tot} equal-score={eq} ({100*eq/tot:.1f}%), game ties={ties_total}/{runs}")
        top = sorted(pair_hist.items(), key=lambda kv: -kv[1])[:10]
        print("  top (sa,sb) pairs:", top)
