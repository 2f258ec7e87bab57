from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import galois

from app.error.exceptions import ChannelConfigError


class ChannelMode(str, Enum):
    RANDOM = "random"
    ADVERSARIAL = "adversarial"


"""
    Parameters of a Rank-Deficient Sliding Window Network CH(S, W).

    Every W consecutive shots lose at most S units of channel-matrix rank
    in total.

    Attributes
    ----------
    n : int
        Symbols per channel packet (channel matrices are n x n).
    q : int
        Ground field size.
    S : int
        Maximum rank deficiency per window, 0 <= S <= nW.
    W : int
        Window length, W >= 1.
    horizon : int
        Number of shots.
    mode : ChannelMode
        random      - matrices sampled with a sliding deficiency budget,
        adversarial - ranks (or explicit matrices) given by a pattern.
    seed : int
        Seed for every random draw.
    pattern : Tuple[int, ...] | None
        Adversarial rank schedule rho_t.
    matrices : Tuple[galois.FieldArray, ...] | None
        Adversarial explicit n x n channel matrices, used as-is.
"""


@dataclass(frozen=True, eq=False)
class ChannelConfig:
    n: int
    q: int
    S: int
    W: int
    horizon: int
    seed: int
    mode: ChannelMode = ChannelMode.RANDOM
    pattern: Tuple[int, ...] | None = None
    matrices: Tuple[galois.FieldArray, ...] | None = None

    def __post_init__(self):
        if self.W < 1:
            raise ChannelConfigError(f"Window length W must be at least 1, got {self.W}.")

        if not 0 <= self.S <= self.n * self.W:
            raise ChannelConfigError(f"Rank deficiency S must lie in [0, {self.n * self.W}], got {self.S}.")

        if self.horizon < 1:
            raise ChannelConfigError(f"Horizon must be positive, got {self.horizon}.")

        if self.mode == ChannelMode.ADVERSARIAL and self.pattern is None and self.matrices is None:
            raise ChannelConfigError("Adversarial mode requires a rank pattern or explicit matrices.")

        if self.pattern is not None:
            object.__setattr__(self, "pattern", tuple(int(r) for r in self.pattern))
            if any(not 0 <= r <= self.n for r in self.pattern):
                raise ChannelConfigError(f"Pattern ranks must lie in [0, {self.n}].")

        if self.matrices is not None:
            object.__setattr__(self, "matrices", tuple(self.matrices))


"""
    One sampled channel: per-shot matrices A_t over F_q with ranks rho_t.
"""


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    mats: Tuple[galois.FieldArray, ...]
    rhos: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        object.__setattr__(self, "rhos", tuple(int(r) for r in self.rhos))
        if len(self.mats) != len(self.rhos):
            raise ChannelConfigError("Channel realization needs one rank per matrix.")

    @property
    def horizon(self) -> int:
        return len(self.mats)

    def window_rank(self, start: int, length: int) -> int:
        return sum(self.rhos[start:start + length])

    def max_window_deficiency(self, n: int, W: int) -> int:
        if self.horizon < W:
            return 0
        return max(n * W - self.window_rank(t, W) for t in range(self.horizon - W + 1))
