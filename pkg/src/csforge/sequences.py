"""Complex coefficient sequences with explicit support.

The element at index i is the coefficient of z^i in the polynomial view of
the sequence, so index order equals subcarrier order.  Zero entries are
structural: support is decided by exact comparison, never by rounding.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ComplexSequence", "as_array"]


class ComplexSequence:
    """A finite complex sequence plus queries about its nonzero structure."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.array(values, dtype=complex).reshape(-1)
        if arr.size == 0:
            raise ValueError("sequence must not be empty")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexSequence is immutable")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, ComplexSequence):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"ComplexSequence(len={len(self)}, support={len(self.support)})"

    @property
    def support(self) -> np.ndarray:
        """Indices of exactly nonzero entries."""
        return np.flatnonzero(self.values != 0)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def clusters(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive support indices as (start, stop) pairs.

        ``stop`` is exclusive, so a run's length is stop - start.
        """
        sup = self.support
        if len(sup) == 0:
            return []
        breaks = np.flatnonzero(np.diff(sup) > 1)
        starts = np.concatenate(([sup[0]], sup[breaks + 1]))
        stops = np.concatenate((sup[breaks] + 1, [sup[-1] + 1]))
        return [(int(a), int(b)) for a, b in zip(starts, stops)]


def as_array(seq) -> np.ndarray:
    """Coerce a ComplexSequence or array-like to a 1-D complex ndarray."""
    if isinstance(seq, ComplexSequence):
        return seq.values
    arr = np.asarray(seq, dtype=complex).reshape(-1)
    return arr
