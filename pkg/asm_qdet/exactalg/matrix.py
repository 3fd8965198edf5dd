from collections.abc import Callable, Collection, Sequence
from dataclasses import dataclass

from asm_qdet.exactalg.ring import Ring, RingElement


@dataclass(frozen=True)
class RingMatrix[T: RingElement]:
    """Square matrix over a single ring. ``entry`` and ``minor`` use 1-based indices."""

    ring: Ring[T]
    rows: tuple[tuple[T, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.rows)
        if any(len(row) != size for row in self.rows):
            raise ValueError("RingMatrix must be square")

    @classmethod
    def from_rows(cls, ring: Ring[T], rows: Sequence[Sequence[T]]) -> "RingMatrix[T]":
        return cls(ring, tuple(tuple(row) for row in rows))

    @classmethod
    def build(cls, ring: Ring[T], n: int, entry: Callable[[int, int], T]) -> "RingMatrix[T]":
        indices = range(1, n + 1)
        return cls(ring, tuple(tuple(entry(i, j) for j in indices) for i in indices))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> T:
        return self.rows[i - 1][j - 1]

    def minor(self, rows: Collection[int] = (), cols: Collection[int] = ()) -> "RingMatrix[T]":
        """Delete the given rows and columns."""
        return RingMatrix(
            self.ring,
            tuple(
                tuple(v for j, v in enumerate(row, start=1) if j not in cols)
                for i, row in enumerate(self.rows, start=1)
                if i not in rows
            ),
        )

    def map[S: RingElement](self, ring: Ring[S], fn: Callable[[T], S]) -> "RingMatrix[S]":
        return RingMatrix(ring, tuple(tuple(fn(v) for v in row) for row in self.rows))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.rows)
