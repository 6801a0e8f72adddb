"""QAP instances, permutations, QAPLIB I/O and random generation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .rng import RngState

INT32_MIN = -(2**31)
INT32_MAX = 2**31 - 1
INT64_MAX = 2**63 - 1

SHAPES = ("general", "symmetric_zero_diag")


class InstanceError(ValueError):
    """Raised for malformed or out-of-range QAP instances."""


class QaplibFormatError(InstanceError):
    """Raised when QAPLIB text cannot be parsed."""


def _as_matrix(m, n: int, what: str) -> np.ndarray:
    try:
        a = np.array(m, dtype=object)
    except ValueError as exc:
        raise InstanceError(f"{what} is not rectangular") from exc
    if a.shape != (n, n):
        raise InstanceError(f"{what} must be {n}x{n}, got shape {a.shape}")
    for v in a.flat:
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
            raise InstanceError(f"{what} entries must be integers, got {v!r}")
        if not INT32_MIN <= int(v) <= INT32_MAX:
            raise InstanceError(f"{what} entry {v} outside 32-bit signed range")
    out = a.astype(np.int64)
    out.flags.writeable = False
    return out


def overflow_bound(n: int, max_abs_dist: int, max_abs_flow: int) -> int:
    """Largest possible |delta|: a swap moves the cost by at most twice its bound."""
    return 2 * n * n * max_abs_dist * max_abs_flow


@dataclass(frozen=True, eq=False)
class QapInstance:
    """Immutable QAP instance with integer ``dist`` and ``flow`` matrices.

    Cost of a permutation ``perm`` (location -> facility) is
    ``sum_ij dist[i, j] * flow[perm[i], perm[j]]``. No symmetry or zero
    diagonal is assumed.
    """

    n: int
    dist: np.ndarray
    flow: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
            raise InstanceError(f"n must be a positive integer, got {n!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "dist", _as_matrix(self.dist, n, "dist"))
        object.__setattr__(self, "flow", _as_matrix(self.flow, n, "flow"))
        bound = overflow_bound(
            n, int(np.abs(self.dist).max()), int(np.abs(self.flow).max())
        )
        if bound > INT64_MAX:
            raise InstanceError(
                f"2*n^2*max|d|*max|f| = {bound} exceeds the 64-bit signed range"
            )

    def __eq__(self, other):
        if not isinstance(other, QapInstance):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.dist, other.dist)
            and np.array_equal(self.flow, other.flow)
        )

    __hash__ = None

    # nested lists: the reference formulas index scalars far faster this way
    @cached_property
    def d(self) -> list[list[int]]:
        return self.dist.tolist()

    @cached_property
    def f(self) -> list[list[int]]:
        return self.flow.tolist()

    def swapped_roles(self) -> "QapInstance":
        return QapInstance(self.n, self.flow, self.dist, name=self.name)

    def is_symmetric_zero_diag(self) -> bool:
        return all(
            np.array_equal(m, m.T) and not np.diagonal(m).any()
            for m in (self.dist, self.flow)
        )


class Permutation:
    """Assignment of facilities to locations: ``assign[x]`` is the facility at ``x``."""

    __slots__ = ("assign",)

    def __init__(self, assign: Iterable[int]):
        assign = tuple(int(v) for v in assign)
        if sorted(assign) != list(range(len(assign))):
            raise InstanceError(f"not a permutation of 0..{len(assign) - 1}: {assign}")
        self.assign = assign

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng: RngState) -> "Permutation":
        return cls(rng.permutation(n))

    def __len__(self):
        return len(self.assign)

    def __getitem__(self, x):
        return self.assign[x]

    def __iter__(self):
        return iter(self.assign)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.assign == other.assign
        return NotImplemented

    def __hash__(self):
        return hash(self.assign)

    def __repr__(self):
        return f"Permutation({list(self.assign)})"

    def swapped(self, p: int, q: int) -> "Permutation":
        a = list(self.assign)
        a[p], a[q] = a[q], a[p]
        return Permutation(a)

    def to_array(self) -> np.ndarray:
        return np.array(self.assign, dtype=np.int64)


def check_perm(inst: QapInstance, perm: Permutation | Sequence[int]) -> Permutation:
    if not isinstance(perm, Permutation):
        perm = Permutation(perm)
    if len(perm) != inst.n:
        raise InstanceError(f"permutation of length {len(perm)} for n={inst.n}")
    return perm


def parse_qaplib(text: str, *, swap_roles: bool = False, name: str = "") -> QapInstance:
    """Parse QAPLIB text: ``n``, then two row-major ``n*n`` integer matrices.

    The first matrix becomes ``dist`` and the second ``flow`` unless
    ``swap_roles`` is set.
    """
    tokens = text.split()
    if not tokens:
        raise QaplibFormatError("empty input")
    values = []
    for pos, tok in enumerate(tokens):
        try:
            values.append(int(tok))
        except ValueError:
            raise QaplibFormatError(f"token {pos} is not an integer: {tok!r}") from None
    n = values[0]
    if n < 2:
        raise QaplibFormatError(f"n must be at least 2, got {n}")
    expected = 1 + 2 * n * n
    if len(values) != expected:
        raise QaplibFormatError(
            f"token count mismatch: expected {expected} for n={n}, got {len(values)}"
        )
    a = np.array(values[1 : 1 + n * n], dtype=object).reshape(n, n)
    b = np.array(values[1 + n * n :], dtype=object).reshape(n, n)
    if swap_roles:
        a, b = b, a
    return QapInstance(n, a, b, name=name)


def load_qaplib(path, *, swap_roles: bool = False) -> QapInstance:
    path = Path(path)
    return parse_qaplib(path.read_text(), swap_roles=swap_roles, name=path.stem)


def format_qaplib(inst: QapInstance) -> str:
    """Serialize in QAPLIB layout; :func:`parse_qaplib` reads it back unchanged."""
    width = max(len(str(v)) for v in (*inst.dist.flat, *inst.flow.flat))
    lines = [str(inst.n), ""]
    for m in (inst.dist, inst.flow):
        lines.extend(" ".join(str(v).rjust(width) for v in row) for row in m.tolist())
        lines.append("")
    return "\n".join(lines)


def random_instance(
    n: int, max_entry: int, seed: int, shape: str = "general"
) -> QapInstance:
    """Reproducible instance with entries uniform in ``[0, max_entry]``.

    ``general`` draws all n^2 entries (diagonals included) independently;
    ``symmetric_zero_diag`` draws the strict upper triangles and mirrors them.
    Distance entries are drawn before flow entries.
    """
    if n < 2:
        raise InstanceError(f"n must be at least 2, got {n}")
    if max_entry < 1:
        raise InstanceError(f"max_entry must be at least 1, got {max_entry}")
    if shape not in SHAPES:
        raise InstanceError(f"unknown shape {shape!r}; expected one of {SHAPES}")
    if max_entry > INT32_MAX or overflow_bound(n, max_entry, max_entry) > INT64_MAX:
        raise InstanceError(f"n={n}, max_entry={max_entry} violates the overflow bound")
    rng = RngState(seed)
    mats = []
    for _ in range(2):
        m = [[0] * n for _ in range(n)]
        if shape == "general":
            for i in range(n):
                for j in range(n):
                    m[i][j] = rng.below(max_entry + 1)
        else:
            for i in range(n):
                for j in range(i + 1, n):
                    m[i][j] = m[j][i] = rng.below(max_entry + 1)
        mats.append(m)
    return QapInstance(n, mats[0], mats[1], name=f"rand-n{n}-{shape}-s{seed}")
