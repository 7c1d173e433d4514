"""Smith normal form over the integers, used to abelianize presentations."""

from __future__ import annotations

__all__ = ["smith_normal_form", "abelianization"]


def smith_normal_form(a):
    """Return ``(d, v)`` with ``u @ a @ v == diag(d)`` for some unimodular ``u``.

    ``a`` is a list of integer rows (``r x m``); ``v`` is the ``m x m``
    unimodular column transform and ``d`` the diagonal, padded with zeros
    to length ``m``.  Entries of ``d`` are non-negative and successive ones
    divide each other.
    """
    rows = len(a)
    m = len(a[0]) if rows else 0
    a = [list(r) for r in a]
    v = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_col(src, dst, k):  # col[dst] += k * col[src]
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, m):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, m) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        swap_cols(t, j)
        while True:
            done = True
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, m)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    d = [a[i][i] if i < rows else 0 for i in range(m)]
    return d, v


def abelianization(num_generators, relator_vectors):
    """Free part of the abelianization.

    Returns ``(rank, torsion, exps)`` where ``exps[g]`` is the image of
    generator ``g`` in the free quotient ``Z^rank``.  For rank one the sign
    is fixed so the first nonzero image is positive.
    """
    if not relator_vectors:
        exps = [tuple(int(i == g) for i in range(num_generators)) for g in range(num_generators)]
        return num_generators, [], exps
    d, v = smith_normal_form(relator_vectors)
    free = [i for i in range(num_generators) if d[i] == 0]
    torsion = [x for x in d if x > 1]
    exps = [tuple(v[g][i] for i in free) for g in range(num_generators)]
    if len(free) == 1:
        first = next((e[0] for e in exps if e[0]), 1)
        if first < 0:
            exps = [(-e[0],) for e in exps]
    return len(free), torsion, exps
