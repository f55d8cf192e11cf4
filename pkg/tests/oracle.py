"""Independent reference implementations used to cross-check the package.

These follow the definitions literally with plain loops and share no code
with ``nearnormal``.
"""

from __future__ import annotations

import itertools


def naf(entries):
    n = len(entries)
    out = []
    for i in range(n):
        total = 0
        for j in range(n):
            if j + i < n:
                total += entries[j] * entries[j + i]
        out.append(total)
    return out


def is_base(a, b, c, d):
    m, n = len(a), len(c)
    if len(b) != m or len(d) != n:
        return False
    na, nb, nc, nd = naf(a), naf(b), naf(c), naf(d)
    for i in range(1, max(m, n)):
        total = 0
        if i < m:
            total += na[i] + nb[i]
        if i < n:
            total += nc[i] + nd[i]
        if total != 0:
            return False
    return na[0] + nb[0] + nc[0] + nd[0] == 2 * (m + n)


def is_t(quad):
    length = len(quad[0])
    for pos in range(length):
        if sum(1 for x in quad if x[pos] != 0) != 1:
            return False
    profiles = [naf(x) for x in quad]
    return all(sum(p[i] for p in profiles) == (length if i == 0 else 0) for i in range(length))


def all_family(family, n):
    """Every member of NS(n) or NN(n) by exhaustive product, as tuples."""
    out = []
    for a in itertools.product((1, -1), repeat=n + 1):
        for last in (1, -1):
            if family == "ns":
                b = a[:n] + (last,)
            else:
                b = tuple(a[i] * (-1) ** i for i in range(n)) + (last,)
            for c in itertools.product((1, -1), repeat=n):
                for d in itertools.product((1, -1), repeat=n):
                    if is_base(a, b, c, d):
                        out.append((a, b, c, d))
    return out


def hadamard_ok(rows):
    n = len(rows)
    for i in range(n):
        for j in range(n):
            dot = sum(rows[i][k] * rows[j][k] for k in range(n))
            if dot != (n if i == j else 0):
                return False
    return True
