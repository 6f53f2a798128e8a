"""Shared helpers: random exact matrices, group words, and brute-force oracles."""

import random
from fractions import Fraction

from arithgroups.matrix import Mat
from arithgroups.rings import QQ, IntegersMod


def random_sl2z_word(rng, length=6):
    """Random word in the standard SL_2(Z) generators (exact, det 1)."""
    s = Mat(QQ, [[0, -1], [1, 0]])
    t = Mat(QQ, [[1, 1], [0, 1]])
    choices = [s, s.inverse(), t, t.inverse()]
    acc = Mat.identity(QQ, 2)
    for _ in range(length):
        acc = acc * rng.choice(choices)
    return acc


def random_elementary_product(rng, n, length=8, entry_bound=2):
    """Product of elementary transvections in SL_n(Z)."""
    acc = Mat.identity(QQ, n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for _ in range(length):
        i, j = rng.choice(pairs)
        c = rng.randint(-entry_bound, entry_bound)
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][j] = c
        acc = acc * Mat(QQ, rows)
    return acc


def random_gaussian_sl2_word(rng, length=6, entry_bound=2):
    """Random element of SL_2(Z[i]) as a nested list of Q(i) elements."""
    from arithgroups.catalog import builtin_field

    qi = builtin_field("qi")

    def elem(a, b):
        return qi.element([a, b])

    def mat(rows):
        return rows

    def mul(x, y):
        return [
            [x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)]
            for i in range(2)
        ]

    ident = [[elem(1, 0), elem(0, 0)], [elem(0, 0), elem(1, 0)]]
    acc = ident
    for _ in range(length):
        z = elem(rng.randint(-entry_bound, entry_bound), rng.randint(-entry_bound, entry_bound))
        if rng.random() < 0.5:
            g = [[elem(1, 0), z], [elem(0, 0), elem(1, 0)]]
        else:
            g = [[elem(1, 0), elem(0, 0)], [z, elem(1, 0)]]
        acc = mul(acc, g)
    return acc


def nf_matrix_mul(x, y):
    n = len(x)
    return [
        [sum((x[i][k] * y[k][j] for k in range(n)), start=x[0][0].field.element([0] * x[0][0].field.degree))
         for j in range(n)]
        for i in range(n)
    ]


def enumerate_sl_n_mod_m(n, m):
    """Brute force: all n x n matrices over Z/m with det = 1 (tiny cases only)."""
    from itertools import product

    ring = IntegersMod(m)
    out = []
    for entries in product(range(m), repeat=n * n):
        mat = Mat(ring, [entries[i * n : (i + 1) * n] for i in range(n)])
        if mat.det() == 1 % m:
            out.append(entries)
    return out


def random_invertible(rng, ring, n, entry_pool):
    while True:
        mat = Mat(ring, [[rng.choice(entry_pool) for _ in range(n)] for _ in range(n)])
        try:
            if ring.is_unit(mat.det()):
                return mat
        except Exception:
            continue


def random_rational(rng, num_bound=9, den_pool=(1, 1, 1, 2, 3)):
    return Fraction(rng.randint(-num_bound, num_bound), rng.choice(den_pool))
