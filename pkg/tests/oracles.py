"""Slow reference implementations written straight from the definitions.

None of these share code with the package beyond ``BallConfig``.
"""

from __future__ import annotations

import math


def bits_of(cfg, window):
    return [cfg[x] for x in range(1, window + 1)]


def move_balls(bits):
    """T_inf by moving every ball once, leftmost first, to the nearest empty box on its right."""
    boxes = list(bits) + [0] * (sum(bits) + 1)
    moved = [False] * len(boxes)
    for x in range(len(boxes)):
        if boxes[x] == 1 and not moved[x]:
            y = x + 1
            while boxes[y] == 1:
                y += 1
            boxes[x], boxes[y] = 0, 1
            moved[y] = True
    return boxes


def capacity_loads(bits, cap):
    """W(x) = W(x-1) + min(eta(x), cap - W(x-1)) - min(1 - eta(x), W(x-1))."""
    w = [0]
    for b in bits:
        prev = w[-1]
        room = math.inf if cap is None else cap - prev
        w.append(prev + min(b, room) - min(1 - b, prev))
    return w


def step_by_loads(bits, cap):
    padded = list(bits) + [0] * (sum(bits) + 1)
    w = capacity_loads(padded, cap)
    return [padded[x] + w[x] - w[x + 1] for x in range(len(padded))]


def seat_occupancy(bits, seats):
    """Seat carrier by the product recursion; W[k][x] for k = 1..seats (row 0 unused)."""
    n = len(bits)
    W = [[0] * (n + 1) for _ in range(seats + 1)]
    for x in range(1, n + 1):
        e = bits[x - 1]
        for k in range(1, seats + 1):
            below_full = all(W[l][x - 1] for l in range(1, k))
            below_empty = all(not W[l][x - 1] for l in range(1, k))
            prev = W[k][x - 1]
            W[k][x] = prev + e * (1 - prev) * below_full - (1 - e) * prev * below_empty
    return W


def seat_indicators(bits, seats):
    """(up, down, record) as dicts k -> 0/1 list over sites 1..n."""
    W = seat_occupancy(bits, seats)
    n = len(bits)
    up = {k: [int(W[k][x] > W[k][x - 1]) for x in range(1, n + 1)] for k in range(1, seats + 1)}
    down = {k: [int(W[k][x] < W[k][x - 1]) for x in range(1, n + 1)] for k in range(1, seats + 1)}
    up[seats + 1] = [0] * n
    down[seats + 1] = [0] * n
    rec = [1 - sum(up[k][x] + down[k][x] for k in range(1, seats + 1)) for x in range(n)]
    return up, down, rec


def seat_zeta(bits):
    """zeta_k(i) from m, tau and xi as defined; bits must end in enough zeros."""
    seats = max(1, sum(bits))
    up, down, _ = seat_indicators(bits, seats)
    n = len(bits)
    out = {}
    for k in range(1, seats + 1):
        def m(ind, x):
            return sum(ind[k][y] - ind[k + 1][y] for y in range(x))

        def xi(x):
            return x - sum(up[l][y] + down[l][y] for l in range(1, k + 1) for y in range(x))

        j = 1
        while True:
            hits = [x for x in range(n + 1) if m(up, x) == m(down, x) == j]
            if not hits:
                break
            key = (k, xi(hits[0]))
            out[key] = out.get(key, 0) + 1
            j += 1
    return out


def kkr(bits):
    """Rigged configuration by the textbook insertion; returns {k: sorted riggings}."""
    rows: list[list[int]] = []  # [length, rigging]

    def energy(k):
        return sum(min(r[0], k) for r in rows)

    for x, b in enumerate(bits, start=1):
        if not b:
            continue
        vac = {r[0]: (x - 1) - 2 * energy(r[0]) for r in rows}
        singular = [r for r in rows if r[1] == vac[r[0]]]
        if singular:
            target = max(singular, key=lambda r: r[0])
            target[0] += 1
        else:
            target = [1, 0]
            rows.append(target)
        target[1] = x - 2 * energy(target[0])
    out: dict[int, list[int]] = {}
    for length, j in rows:
        out.setdefault(length, []).append(j)
    return {k: sorted(v) for k, v in sorted(out.items())}


def ts_solitons(bits):
    """Takahashi-Satsuma by rescanning the uncrossed letters from scratch each round."""
    bits = list(bits) + [0] * (sum(bits) + 1)
    alive = list(range(1, len(bits) + 1))
    solitons = []
    while any(bits[x - 1] for x in alive):
        runs: list[list[int]] = []
        for x in alive:
            if runs and bits[runs[-1][-1] - 1] == bits[x - 1]:
                runs[-1].append(x)
            else:
                runs.append([x])
        lengths: list[float] = [len(r) for r in runs]
        # zeros left of site 1 never run out
        if bits[runs[0][0] - 1] == 0:
            lengths[0] = math.inf
        else:
            runs.insert(0, [])
            lengths.insert(0, math.inf)
        i = next(i for i in range(1, len(runs)) if lengths[i] >= lengths[i - 1])
        k = len(runs[i - 1])
        sites = runs[i - 1][-k:] + runs[i][:k]
        solitons.append((k, tuple(sites)))
        alive = [x for x in alive if x not in sites]
    return sorted(solitons, key=lambda s: s[1])


def slot_nu(solitons, n):
    nu = [math.inf] * n
    for k, z in solitons:
        for l in range(1, k + 1):
            nu[z[l - 1] - 1] = l - 1
            nu[z[l + k - 1] - 1] = l - 1
    return nu


def slot_zeta(solitons, n):
    nu = slot_nu(solitons, n)
    out = {}
    for k, z in solitons:
        def xi_t(x):
            return sum(1 for y in range(1, x + 1) if (nu[y - 1] if y <= n else math.inf) >= k)

        def s_t(i):
            x = 0
            while xi_t(x) != i:
                x += 1
            return x

        i = next(i for i in range(n + 1) if s_t(i) <= z[0] and z[-1] <= s_t(i + 1) - 1)
        out[(k, i)] = out.get((k, i), 0) + 1
    return out
