"""Sparse row reduction over exact rationals.

Rows are dicts mapping hashable column keys to nonzero Fractions.  Columns
are eliminated in a caller-supplied priority order, so membership questions
of the form "does this vector lie in the span modulo the low-priority
columns" reduce to inspecting the residue support.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping

Row = dict[Hashable, Fraction]


class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rational rows.

    `col_rank` assigns each column key its elimination priority; smaller
    ranks are pivoted first.  Unknown columns are an error: the caller must
    register the full column universe up front.
    """

    def __init__(self, col_rank: Mapping[Hashable, int]):
        self._rank = col_rank
        self._pivots: dict[Hashable, Row] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: Mapping[Hashable, Fraction]) -> Row:
        """Eliminate all pivot columns from a copy of `row`."""
        out: Row = {k: Fraction(v) for k, v in row.items() if v}
        # repeatedly clear the best-ranked column that has a pivot
        while True:
            hit = None
            best = None
            for k in out:
                if k in self._pivots:
                    rk = self._rank[k]
                    if best is None or rk < best:
                        best, hit = rk, k
            if hit is None:
                return out
            factor = out[hit]
            for k, v in self._pivots[hit].items():
                nv = out.get(k, Fraction(0)) - factor * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)

    def add(self, row: Mapping[Hashable, Fraction]) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        red = self.reduce(row)
        if not red:
            return False
        pivot = min(red, key=self._rank.__getitem__)
        lead = red[pivot]
        norm = {k: v / lead for k, v in red.items()}
        self._pivots[pivot] = norm
        return True
