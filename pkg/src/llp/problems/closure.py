"""Transitive closure over packed reachability rows (max-lattice under OR)."""

from __future__ import annotations

import numpy as np

from ..core import GlobalState, Problem
from ..instances import CsrGraph


class TransitiveClosure(Problem):
    """Row u collects a bit for every vertex reachable from u.

    Rows are packed into 64-bit words; the work index is the row.  Row u
    is forbidden while it reaches some w whose row contains bits row u
    lacks (the pairwise forbidden predicate lifted over the row).
    Advancing ORs reachable rows into row u until the row is locally
    stable, then re-enqueues every row that currently reaches u, since
    their closures may now be missing the new bits.  Bits only ever
    appear, never vanish, so word values are monotone non-decreasing.

    Paths have length >= 1: a vertex reaches itself only through a cycle.
    """

    lattice = "max"

    def __init__(self, graph: CsrGraph):
        n = graph.num_vertices
        self.size = n
        self.words_per_row = max(1, (n + 63) // 64)
        self._init_rows = [0] * n
        for u, v, _w in graph.arcs():
            self._init_rows[u] |= 1 << v

    def init_state(self, recorder=None) -> GlobalState:
        wpr = self.words_per_row
        mask = (1 << 64) - 1
        words = []
        for row in self._init_rows:
            for b in range(wpr):
                words.append((row >> (64 * b)) & mask)
        return GlobalState(words, work_size=self.size, recorder=recorder)

    def push_initial(self, state: GlobalState, worklist) -> None:
        worklist.push_all((u, 0) for u in range(self.size) if self._init_rows[u])

    def _row_words(self, state: GlobalState, u: int) -> list:
        cells = state.values.cells()
        base = u * self.words_per_row
        return cells[base : base + self.words_per_row]

    def _iter_bits(self, words) -> list:
        out = []
        for b, word in enumerate(words):
            base = b << 6
            while word:
                low = word & -word
                out.append(base + low.bit_length() - 1)
                word ^= low
        return out

    def is_forbidden(self, state: GlobalState, u: int) -> bool:
        cells = state.values.cells()
        wpr = self.words_per_row
        row = self._row_words(state, u)
        for w in self._iter_bits(row):
            wbase = w * wpr
            for b in range(wpr):
                if cells[wbase + b] & ~row[b]:
                    return True
        return False

    def advance(self, state: GlobalState, u: int, worklist) -> bool:
        values = state.values
        wpr = self.words_per_row
        ubase = u * self.words_per_row
        cells = values.cells()
        changed = False
        while True:
            row = self._row_words(state, u)
            progress = False
            for w in self._iter_bits(row):
                wbase = w * wpr
                for b in range(wpr):
                    missing = cells[wbase + b] & ~cells[ubase + b]
                    if missing:
                        values.fetch_or(ubase + b, missing)
                        progress = True
            if not progress:
                break
            changed = True
        if not changed:
            return False
        # Rows reaching u may now be missing u's new bits.
        word_index = u >> 6
        bit = 1 << (u & 63)
        preds = [
            (x, 0)
            for x in range(self.size)
            if x != u and cells[x * wpr + word_index] & bit
        ]
        worklist.push_all(preds)
        return True

    def final_solution(self, state: GlobalState) -> np.ndarray:
        return np.array(state.values.snapshot(), dtype=np.uint64)

    def reachability_matrix(self, solution) -> np.ndarray:
        """Unpack a packed word vector into an n-by-n boolean matrix."""
        return unpack_reachability(solution, self.size)


def pack_reachability(matrix: np.ndarray) -> np.ndarray:
    """Pack an n-by-n boolean matrix into the adapter's word layout."""
    n = len(matrix)
    wpr = max(1, (n + 63) // 64)
    words = np.zeros(n * wpr, dtype=np.uint64)
    for u in range(n):
        acc = 0
        for v in range(n):
            if matrix[u][v]:
                acc |= 1 << v
        for b in range(wpr):
            words[u * wpr + b] = (acc >> (64 * b)) & ((1 << 64) - 1)
    return words


def unpack_reachability(words, n: int) -> np.ndarray:
    wpr = max(1, (n + 63) // 64)
    out = np.zeros((n, n), dtype=bool)
    for u in range(n):
        acc = 0
        for b in range(wpr):
            acc |= int(words[u * wpr + b]) << (64 * b)
        for v in range(n):
            out[u, v] = (acc >> v) & 1
    return out
