# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass
from typing import Tuple

from .words import exponent_sum


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithForm(object):
    """``U . A . V = D`` with U, V unimodular and D diagonal."""

    diagonal: Tuple[int, ...]
    rank: int
    U: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]
    D: Tuple[Tuple[int, ...], ...]

    @property
    def elementary_divisors(self):
        return self.diagonal[: self.rank]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _Reducer(object):
    def __init__(self, matrix):
        self.A = [list(row) for row in matrix]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.A else 0
        self.U = _identity(self.m)
        self.V = _identity(self.n)

    def swap_rows(self, i, j):
        for M in (self.A, self.U):
            M[i], M[j] = M[j], M[i]

    def swap_cols(self, i, j):
        for M in (self.A, self.V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target, source, q):
        for M in (self.A, self.U):
            M[target] = [a + q * b for a, b in zip(M[target], M[source])]

    def add_col(self, target, source, q):
        for M in (self.A, self.V):
            for row in M:
                row[target] += q * row[source]

    def negate_row(self, i):
        for M in (self.A, self.U):
            M[i] = [-a for a in M[i]]

    def smallest(self, t, cells):
        cells = [(abs(self.A[i][j]), i, j) for i, j in cells if self.A[i][j]]
        return min(cells) if cells else None

    def pivot(self, t):
        A = self.A
        while True:
            cross = [(t, j) for j in range(t, self.n)] + [
                (i, t) for i in range(t + 1, self.m)
            ]
            _, i, j = self.smallest(t, cross)
            self.swap_rows(t, i)
            self.swap_cols(t, j)

            p = A[t][t]
            dirty = False
            for i in range(t + 1, self.m):
                q = A[i][t] // p
                if q:
                    self.add_row(i, t, -q)
                dirty = dirty or A[i][t] != 0
            for j in range(t + 1, self.n):
                q = A[t][j] // p
                if q:
                    self.add_col(j, t, -q)
                dirty = dirty or A[t][j] != 0
            if dirty:
                continue

            bad = next(
                (
                    i
                    for i in range(t + 1, self.m)
                    for j in range(t + 1, self.n)
                    if A[i][j] % p
                ),
                None,
            )
            if bad is None:
                break
            self.add_row(t, bad, 1)

        if A[t][t] < 0:
            self.negate_row(t)

    def run(self):
        t = 0
        while t < min(self.m, self.n):
            cells = [(i, j) for i in range(t, self.m) for j in range(t, self.n)]
            best = self.smallest(t, cells)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            self.pivot(t)
            t += 1
        return t


def smith_normal_form(matrix):
    reducer = _Reducer(matrix)
    rank = reducer.run()
    diagonal = tuple(reducer.A[i][i] for i in range(min(reducer.m, reducer.n)))
    freeze = lambda M: tuple(tuple(row) for row in M)
    logger.debug("smith form diagonal %s", diagonal)
    return SmithForm(
        diagonal, rank, freeze(reducer.U), freeze(reducer.V), freeze(reducer.A)
    )


def relation_matrix(p):
    """Rows are relators, columns are generators."""
    return [[exponent_sum(r, g) for g in p.generators] for r in p.relators]


@dataclass(frozen=True)
class Homology(object):
    free_rank: int
    torsion: Tuple[int, ...]

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def abelianized_homology(p):
    n = len(p.generators)
    A = relation_matrix(p)
    if not A:
        return Homology(n, ())
    snf = smith_normal_form(A)
    torsion = tuple(d for d in snf.elementary_divisors if d > 1)
    return Homology(n - snf.rank, torsion)


def free_abelian_images(p):
    """Coordinates of each generator in the free part of H1.

    With ``U A V = D`` the map ``v -> v V`` sends the relator lattice onto
    the rows of D, so the free part is read off columns ``rank..n-1``.
    """
    n = len(p.generators)
    A = relation_matrix(p)
    if not A:
        return {g: tuple(int(i == j) for j in range(n)) for i, g in enumerate(p.generators)}
    snf = smith_normal_form(A)
    return {
        g: tuple(snf.V[i][j] for j in range(snf.rank, n))
        for i, g in enumerate(p.generators)
    }
