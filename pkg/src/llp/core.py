"""Shared lattice state, monotone atomic cells, and the problem contract.

A problem is solved by repeatedly finding *forbidden* coordinates of a
shared solution vector and advancing them monotonically (downward for
min-lattices such as shortest paths, upward for max-lattices such as
scheduling) until no coordinate is forbidden.  Every solver and worklist
policy in this package drives the same four-operation contract defined
by :class:`Problem`.

CPython's GIL makes single reads of a list slot atomic, so loads are
plain indexing.  Read-modify-write operations (conditional replace,
monotone min/max, bitwise OR, counter arithmetic) go through a striped
lock so each update has a single linearization point.  That is the
closest idiomatic equivalent of hardware compare-and-swap available to
pure Python; all observable guarantees (values never regress in lattice
order, exactly-once fixed-bit transitions) are preserved.
"""

from __future__ import annotations

import threading
from typing import Callable, Iterable, NamedTuple, Optional

import numpy as np

U64_MASK = 0xFFFFFFFFFFFFFFFF

#: Unreachable / unset marker.  Additions saturate so INF + w == INF.
INF = U64_MASK


def saturating_add(a: int, b: int) -> int:
    """Unsigned 64-bit addition that clamps at INF instead of wrapping."""
    s = a + b
    return s if s < INF else INF


class LlpError(Exception):
    """Base class for solver-facing errors."""


class InfeasibleError(LlpError):
    """An advance would push a coordinate past its bound: no solution exists."""


class MalformedInstanceError(LlpError):
    """The instance violates a structural precondition (e.g. a cyclic DAG)."""


class IncompleteSolveError(LlpError):
    """Post-solve scan found a forbidden index; indicates a solver bug."""

    def __init__(self, index: int):
        super().__init__(f"index {index} is still forbidden after the solve")
        self.index = index


class Update(NamedTuple):
    """Outcome of a conditional cell update.

    ``value`` is the displaced value when ``updated`` is true, otherwise
    the value observed in the cell at the linearization point.
    """

    updated: bool
    value: int


# Recorder callback: (index, old, new), invoked under the cell's lock on
# every successful change.  Used by the monotonicity test shim.
Recorder = Callable[[int, int, int], None]


class AtomicU64Array:
    """Fixed-size array of unsigned 64-bit cells with atomic updates.

    Loads are plain list reads (GIL-atomic).  All mutation goes through
    one of 64 striped locks, so concurrent read-modify-write operations
    on the same cell serialize and stale writes can never regress a
    monotone cell.
    """

    __slots__ = ("_cells", "_locks", "_recorder")

    _STRIPES = 64  # power of two

    def __init__(self, values: Iterable[int], recorder: Optional[Recorder] = None):
        self._cells = [int(v) & U64_MASK for v in values]
        self._locks = [threading.Lock() for _ in range(self._STRIPES)]
        self._recorder = recorder

    def __len__(self) -> int:
        return len(self._cells)

    def load(self, index: int) -> int:
        return self._cells[index]

    def cells(self) -> list:
        """Read-only view of the backing list for hot read loops.

        Indexing it is equivalent to ``load``; all mutation must still go
        through the atomic operations.
        """
        return self._cells

    def snapshot(self) -> list:
        return list(self._cells)

    def _lock_for(self, index: int) -> threading.Lock:
        return self._locks[index & (self._STRIPES - 1)]

    def monotone_min(self, index: int, candidate: int) -> Update:
        """Lower the cell to ``candidate`` iff that is a strict improvement."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            if candidate < old:
                cells[index] = candidate
                if self._recorder is not None:
                    self._recorder(index, old, candidate)
                return Update(True, old)
            return Update(False, old)

    def monotone_max(self, index: int, candidate: int) -> Update:
        """Raise the cell to ``candidate`` iff that is a strict improvement."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            if candidate > old:
                cells[index] = candidate
                if self._recorder is not None:
                    self._recorder(index, old, candidate)
                return Update(True, old)
            return Update(False, old)

    def compare_exchange(self, index: int, expected: int, value: int) -> Update:
        """Install ``value`` iff the cell still holds ``expected``."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            if old == expected:
                cells[index] = value
                if self._recorder is not None:
                    self._recorder(index, old, value)
                return Update(True, old)
            return Update(False, old)

    def fetch_or(self, index: int, bits: int) -> int:
        """OR ``bits`` into the cell; returns the prior value."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            new = old | bits
            if new != old:
                cells[index] = new
                if self._recorder is not None:
                    self._recorder(index, old, new)
            return old

    def fetch_max(self, index: int, value: int) -> int:
        """Raise the cell to at least ``value``; returns the prior value."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            if value > old:
                cells[index] = value
                if self._recorder is not None:
                    self._recorder(index, old, value)
            return old

    def fetch_sub(self, index: int, amount: int) -> int:
        """Subtract ``amount``; returns the prior value.  Must not underflow."""
        cells = self._cells
        with self._lock_for(index):
            old = cells[index]
            cells[index] = old - amount
            return old


def monotone_update(cells: AtomicU64Array, index: int, candidate: int, order: str) -> Update:
    """Conditionally replace a cell with ``candidate`` in lattice order.

    ``order`` is ``"min"`` or ``"max"``.  The cell ends up holding
    min/max(old, candidate) as of the linearization point; the result is
    ``Update(True, old)`` exactly when the cell strictly improved.
    """
    if order == "min":
        return cells.monotone_min(index, candidate)
    if order == "max":
        return cells.monotone_max(index, candidate)
    raise ValueError(f"unknown lattice order: {order!r}")


class FixedVector:
    """Bit vector of idempotent once-only flags.

    ``set_fixed`` returns True for exactly one of any set of concurrent
    callers on the same index; a set bit is never cleared.
    """

    __slots__ = ("_bits", "_locks")

    _STRIPES = 64

    def __init__(self, size: int):
        self._bits = [False] * size
        self._locks = [threading.Lock() for _ in range(self._STRIPES)]

    def __len__(self) -> int:
        return len(self._bits)

    def is_fixed(self, index: int) -> bool:
        return self._bits[index]

    def set_fixed(self, index: int) -> bool:
        bits = self._bits
        if bits[index]:
            return False
        with self._locks[index & (self._STRIPES - 1)]:
            if bits[index]:
                return False
            bits[index] = True
            return True

    def count(self) -> int:
        return sum(self._bits)


class Stats:
    """Work counters.

    Increments are plain ``+=`` and may undercount under thread
    contention (relaxed consistency); they are exact in single-thread
    runs, which is where the work-count assertions live.
    """

    __slots__ = ("predicate_evals", "advances", "failed_replaces")

    def __init__(self):
        self.predicate_evals = 0
        self.advances = 0
        self.failed_replaces = 0

    def as_dict(self) -> dict:
        return {
            "predicate_evals": self.predicate_evals,
            "advances": self.advances,
            "failed_replaces": self.failed_replaces,
        }


class GlobalState:
    """Shared solver state: the solution vector plus per-problem extras.

    ``values`` holds one atomic cell per lattice coordinate.  ``fixed``
    has one flag per *work index* (which may differ from the coordinate
    count when a work index spans several cells, as in the closure and
    knapsack adapters).  ``extra`` is problem-owned auxiliary state; by
    convention it maps names to further :class:`AtomicU64Array` objects.
    """

    __slots__ = ("values", "fixed", "extra", "stats")

    def __init__(
        self,
        initial_values: Iterable[int],
        *,
        work_size: Optional[int] = None,
        extra: Optional[dict] = None,
        recorder: Optional[Recorder] = None,
    ):
        self.values = AtomicU64Array(initial_values, recorder=recorder)
        self.fixed = FixedVector(work_size if work_size is not None else len(self.values))
        self.extra = extra or {}
        self.stats = Stats()

    def mark_fixed(self, index: int) -> bool:
        """Set the fixed bit; True iff this call made the transition."""
        return self.fixed.set_fixed(index)


class Problem:
    """Contract every solvable problem implements.

    Subclasses fill in the lattice direction, the size of the work-index
    space, and the four operations below.  ``is_forbidden`` must be a
    pure read of the state; ``advance`` may only move coordinates
    forward in lattice order and may push follow-up work items (tuples
    of ``(index, priority)``; priority is advisory only).
    """

    #: "min" or "max"; the direction coordinates move.
    lattice = "min"
    #: When True a fixed index is provably never forbidden again and
    #: solvers skip it.
    memoizes = False
    #: Optional per-index advance ceiling; advancing past it raises
    #: InfeasibleError.
    bound: Optional[list] = None

    size: int

    def init_state(self, recorder: Optional[Recorder] = None) -> GlobalState:
        raise NotImplementedError

    def push_initial(self, state: GlobalState, worklist) -> None:
        """Push the work items that may be forbidden at the start."""
        raise NotImplementedError

    def is_forbidden(self, state: GlobalState, index: int) -> bool:
        raise NotImplementedError

    def advance(self, state: GlobalState, index: int, worklist) -> bool:
        """Advance a forbidden index; True iff this call made progress."""
        raise NotImplementedError

    def ensure(self, state: GlobalState, index: int, worklist) -> bool:
        """Check ``index`` and advance it if forbidden.

        Returns True iff the index was forbidden at check time.  The
        default composition is is_forbidden followed by advance.
        """
        stats = state.stats
        stats.predicate_evals += 1
        if not self.is_forbidden(state, index):
            return False
        if self.advance(state, index, worklist):
            stats.advances += 1
        else:
            stats.failed_replaces += 1
        return True

    def final_solution(self, state: GlobalState) -> np.ndarray:
        raise NotImplementedError
