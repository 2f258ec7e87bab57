from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import galois
import numpy as np

from app.domain.field_dto import FieldSpec, NormalBasis
from app.error.exceptions import InvalidCodeError

"""
    Data Transfer Object (DTO) representing a linear time-invariant
    convolutional code C[n, k, m] over F_{q^M}.

    A source packet s_t of k symbols is mapped to the channel packet
    x_t = s_t G_0 + s_{t-1} G_1 + ... + s_{t-m} G_m of n symbols.

    Attributes
    ----------
    n : int
        Channel packet length.
    k : int
        Source packet length, k <= n.
    m : int
        Code memory.
    blocks : Tuple[galois.FieldArray, ...]
        Generator blocks G_0..G_m, each k x n over F_{q^M}.
        G_0 must have full row rank.
    spec : FieldSpec
        Extension field all blocks live in.
    basis : NormalBasis
        Normal basis used for rank computations (phi_n).
    rows : Tuple[int, ...] | None
        Row indices the blocks were extracted with, when built from a
        super-regular Toeplitz matrix.
"""


@dataclass(frozen=True, eq=False)
class ConvolutionalCode:
    n: int
    k: int
    m: int
    blocks: Tuple[galois.FieldArray, ...]
    spec: FieldSpec
    basis: NormalBasis
    rows: Tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.rows is not None:
            object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))

        if not 1 <= self.k <= self.n:
            raise InvalidCodeError(f"Code parameters require 1 <= k <= n, got k={self.k}, n={self.n}.")

        if self.m < 0:
            raise InvalidCodeError(f"Code memory must be non-negative, got m={self.m}.")

        if len(self.blocks) != self.m + 1:
            raise InvalidCodeError(f"Expected {self.m + 1} generator blocks, got {len(self.blocks)}.")

        field = type(self.blocks[0])
        for i, block in enumerate(self.blocks):
            if type(block) is not field:
                raise InvalidCodeError(f"Generator block G_{i} lives in a different field.")
            if block.shape != (self.k, self.n):
                raise InvalidCodeError(
                    f"Generator block G_{i} has shape {block.shape}, expected ({self.k}, {self.n})."
                )

        if np.linalg.matrix_rank(self.blocks[0]) != self.k:
            raise InvalidCodeError("G_0 must have full row rank k.")

    @property
    def field(self) -> type[galois.FieldArray]:
        return type(self.blocks[0])

    @property
    def rate(self) -> float:
        return self.k / self.n

    def label(self) -> str:
        return f"[{self.n},{self.k},{self.m}]"


class DistanceKind(str, Enum):
    HAMMING = "hamming"
    SUM_RANK = "sum_rank"
    ACTIVE_SUM_RANK = "active_sum_rank"


"""
    Column distance profile d(0), ..., d(j) of a convolutional code.

    Attributes
    ----------
    values : List[int]
        d(i) for i = 0..j.
    kind : DistanceKind
        Column Hamming distance, column sum rank distance or active
        column sum rank distance.
    exhaustive : bool
        True when every admissible source sequence was enumerated.
"""


@dataclass(frozen=True)
class DistanceProfile:
    values: List[int]
    kind: DistanceKind
    exhaustive: bool

    def is_non_decreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def is_maximal(self, n: int, k: int, upto: int | None = None) -> bool:
        last = len(self.values) - 1 if upto is None else upto
        return all(self.values[i] == singleton_bound(n, k, i) for i in range(last + 1))


"""
    Channel rank profile (rho_0, ..., rho_j) admissible for the extended
    generator test: every prefix sum is at most k(t+1), and the full sum
    equals k(j+1).
"""


@dataclass(frozen=True)
class RankProfile:
    rhos: Tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.rhos) - 1

    def is_admissible(self, n: int, k: int) -> bool:
        total = 0
        for t, rho in enumerate(self.rhos):
            if not 0 <= rho <= n:
                return False
            total += rho
            if total > k * (t + 1):
                return False
        return total == k * len(self.rhos)


def singleton_bound(n: int, k: int, j: int) -> int:
    return (n - k) * (j + 1) + 1


def field_bound(q: int, n: int, m: int) -> int:
    """Extension degree q^{n(m+2)-1} sufficient for the super-regular construction."""
    return q ** (n * (m + 2) - 1)
