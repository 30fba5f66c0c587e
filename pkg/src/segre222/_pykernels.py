"""Pure-Python/numpy versions of the routines in ``_ckernels.pyx``.

Same signatures and outputs; used when the extension is not built or when
``SEGRE222_BACKEND=python`` is set.
"""

from collections import deque

import numpy as np

SLICES = np.array([
    [[0, 1, 2, 3], [4, 5, 6, 7]],
    [[0, 1, 4, 5], [2, 3, 6, 7]],
    [[0, 2, 4, 6], [1, 3, 5, 7]],
])


def _weights(q):
    w = np.array([q ** (7 - c) for c in range(8)], dtype=np.int64)
    off = np.concatenate([[0], np.cumsum(w)[:-1]])
    return w, off


def _normalize_index(v, mul, inv, q):
    w, off = _weights(q)
    nz = v != 0
    lead = nz.argmax(axis=1)
    s = inv[v[np.arange(len(v)), lead]]
    scaled = mul[s[:, None], v]
    return off[lead] - w[lead] + scaled @ w


def images(coords, mat, add, mul, inv, q, out, start, stop):
    pts = coords[start:stop].astype(np.int64)
    v = np.zeros_like(pts)
    for r in range(8):
        acc = np.zeros(len(pts), dtype=np.int64)
        for c in range(8):
            if mat[r, c]:
                acc = add[acc, mul[mat[r, c], pts[:, c]]]
        v[:, r] = acc
    out[start:stop] = _normalize_index(v, mul, inv, q)


def _flat_ranks(t, mul):
    """Flattening ranks of each row of ``t`` (shape (n, 8)) in all three directions."""
    n = len(t)
    out = np.zeros((n, 3), dtype=np.uint8)
    for d in range(3):
        r0, r1 = t[:, SLICES[d, 0]], t[:, SLICES[d, 1]]
        nonzero = (r0 != 0).any(axis=1) | (r1 != 0).any(axis=1)
        full = np.zeros(n, dtype=bool)
        for m in range(4):
            for k in range(m + 1, 4):
                full |= mul[r0[:, m], r1[:, k]] != mul[r0[:, k], r1[:, m]]
        out[:, d] = np.where(full, 2, np.where(nonzero, 1, 0))
    return out


def _pure(t, mul):
    return (_flat_ranks(t, mul) == 1).all(axis=1)


def classify(coords, add, sub, mul, q, scaled_pure, funcs, singular, flat, rank, start, stop):
    t = coords[start:stop].astype(np.int64)
    n = len(t)
    fr = _flat_ranks(t, mul)
    flat[start:stop] = fr

    sing = np.zeros(n, dtype=bool)
    for d in range(3):
        s0, s1 = t[:, SLICES[d, 0]], t[:, SLICES[d, 1]]
        for x0, x1 in funcs:
            m = add[mul[x0, s0], mul[x1, s1]]
            sing |= sub[mul[m[:, 0], m[:, 3]], mul[m[:, 1], m[:, 2]]] == 0
    singular[start:stop] = sing

    r = np.full(n, 3, dtype=np.uint8)
    pure = (fr == 1).all(axis=1)
    r[pure] = 1
    todo = np.flatnonzero(~pure)
    for s in scaled_pure.astype(np.int64):
        if len(todo) == 0:
            break
        hit = _pure(sub[t[todo], s[None, :]], mul)
        r[todo[hit]] = 2
        todo = todo[~hit]
    rank[start:stop] = r


def orbit_ids(perms):
    ngen, npts = perms.shape
    gens = [perms[g].tolist() for g in range(ngen)]
    visited = bytearray(npts)
    ids = np.full(npts, -1, dtype=np.int32)
    orbit = 0
    for seed in range(npts):
        if visited[seed]:
            continue
        visited[seed] = 1
        members = [seed]
        queue = deque(members)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x]
                if not visited[y]:
                    visited[y] = 1
                    members.append(y)
                    queue.append(y)
        ids[members] = orbit
        orbit += 1
    return ids
