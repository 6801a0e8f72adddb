"""Incrementally maintained table of all pairwise swap deltas."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ._backend import get_backend
from .delta import oracle_deltas
from .instance import Permutation, QapInstance, check_perm

STRATEGIES = ("classic", "novel")


class TableMismatchError(AssertionError):
    """A table entry disagrees with the brute-force oracle (verify mode only)."""


@dataclass(frozen=True)
class UpdateStats:
    full_recomputes: int = 0
    o1_disjoint: int = 0
    o1_overlap: int = 0
    o1_reversal: int = 0
    init_computes: int = 0

    @classmethod
    def from_counters(cls, counters) -> "UpdateStats":
        return cls(*(int(c) for c in counters))

    @classmethod
    def per_swap(cls, n: int, strategy: str) -> "UpdateStats":
        """Exact counter increments caused by one swap."""
        overlap = 2 * (n - 2)
        disjoint = n * (n - 1) // 2 - overlap - 1
        if strategy == "classic":
            return cls(overlap, disjoint, 0, 1, 0)
        if strategy == "novel":
            return cls(n - 2, disjoint, n - 2, 1, 0)
        raise ValueError(f"unknown strategy {strategy!r}")

    def __add__(self, other: "UpdateStats") -> "UpdateStats":
        return UpdateStats(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __mul__(self, k: int) -> "UpdateStats":
        return UpdateStats(*(a * k for a in self.as_tuple()))

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(asdict(self).values())

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def check_strategy(strategy: str) -> str:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return strategy


class DeltaTable:
    """Deltas for all ``n(n-1)/2`` swaps of the current permutation.

    Stored as a flat upper triangle, so ``table[i, j]`` and ``table[j, i]``
    read the same cell. ``strategy="classic"`` recomputes both entries of
    every pair sharing one index with the last swap in O(n);
    ``strategy="novel"`` recomputes one and derives the other in O(1).
    With ``verify=True`` every entry is compared with the oracle after each
    swap.
    """

    def __init__(
        self,
        inst: QapInstance,
        perm: Permutation,
        strategy: str = "novel",
        *,
        backend=None,
        verify: bool = False,
    ):
        perm = check_perm(inst, perm)
        if inst.n < 2:
            raise ValueError("a delta table needs n >= 2")
        self.inst = inst
        self.n = inst.n
        self.strategy = check_strategy(strategy)
        self.verify = verify
        self.kernels = kernels = (
            get_backend(backend) if backend is None or isinstance(backend, str) else backend
        )
        self._d = kernels.matrix(inst.dist)
        self._f = kernels.matrix(inst.flow)
        self._perm = kernels.vector(perm.assign)
        self._values = kernels.zeros(self.n * (self.n - 1) // 2)
        self._counters = kernels.zeros(5)
        kernels.table_init(self._d, self._f, self._perm, self._values, self._counters)
        if verify:
            self.check()

    def __len__(self):
        return len(self._values)

    def _index(self, i: int, j: int) -> int:
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"invalid pair ({i}, {j}) for n={self.n}")
        if i > j:
            i, j = j, i
        return self.kernels.tri_index(self.n, i, j)

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return int(self._values[self._index(*pair)])

    @property
    def perm(self) -> Permutation:
        return Permutation(self.kernels.tolist(self._perm))

    @property
    def stats(self) -> UpdateStats:
        return UpdateStats.from_counters(self.kernels.tolist(self._counters))

    def values(self) -> list[int]:
        return self.kernels.tolist(self._values)

    def as_dict(self) -> dict[tuple[int, int], int]:
        vals = self.values()
        pairs = ((i, j) for i in range(self.n) for j in range(i + 1, self.n))
        return dict(zip(pairs, vals))

    def apply_swap(self, p: int, q: int) -> Permutation:
        """Swap the facilities at ``p`` and ``q`` and bring every delta up to date."""
        if p == q:
            raise ValueError(f"swap needs two distinct locations, got {p} twice")
        self._index(p, q)
        self.kernels.apply_swap(
            self._d,
            self._f,
            self._perm,
            self._values,
            p,
            q,
            self.strategy == "novel",
            self._counters,
        )
        if self.verify:
            self.check()
        return self.perm

    def check(self) -> None:
        """Compare every entry with :func:`oracle_deltas`; raise on any mismatch."""
        expected = oracle_deltas(self.inst, self.perm)
        got = self.as_dict()
        bad = {k: (got[k], v) for k, v in expected.items() if got[k] != v}
        if bad:
            raise TableMismatchError(f"{len(bad)} stale entries (got, want): {bad}")
