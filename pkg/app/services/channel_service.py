from __future__ import annotations

import logging
from typing import List

import galois
import numpy as np

from app.domain.channel_dto import ChannelConfig, ChannelMode, ChannelRealization
from app.error.exceptions import ChannelConfigError
from app.util.matrix_calculator import MatrixCalculator

logger = logging.getLogger(__name__)

"""
   Service sampling and checking Rank-Deficient Sliding Window Network
   channels CH(S, W) over F_q.
"""

class ChannelService:

    """
       Samples A_0..A_{horizon-1}.

       random       - deficiency delta_t = n - rho_t drawn uniformly from
                      [0, min(n, S - deficiency of the previous W-1 shots)],
                      so every window of W shots loses at most S rank.
       adversarial  - explicit matrices are used as given; a rank pattern is
                      realized with random matrices of exactly those ranks.
                      Shots past the end of the pattern are full rank.

       Every A_t of rank rho is a product B C of random full-rank n x rho and
       rho x n factors. All draws come from one generator seeded by cfg.seed.
    """

    def sample_channel(self, cfg: ChannelConfig) -> ChannelRealization:
        rng = np.random.default_rng(cfg.seed)
        gf = galois.GF(cfg.q)

        if cfg.mode == ChannelMode.ADVERSARIAL and cfg.matrices is not None:
            return self._from_matrices(cfg, gf, rng)

        rhos: List[int] = []
        for t in range(cfg.horizon):
            if cfg.mode == ChannelMode.ADVERSARIAL:
                rhos.append(cfg.pattern[t] if t < len(cfg.pattern) else cfg.n)
                continue

            used = sum(cfg.n - r for r in rhos[max(0, t - cfg.W + 1):t])
            cap = min(cfg.n, cfg.S - used)
            deficiency = int(rng.integers(0, cap + 1))
            rhos.append(cfg.n - deficiency)

        mats = [self.random_channel_matrix(cfg.n, rho, cfg.q, rng) for rho in rhos]
        logger.debug("Sampled %s channel ranks %s", cfg.mode.value, rhos)
        return ChannelRealization(mats=mats, rhos=rhos)

    def random_channel_matrix(self, n: int, rho: int, q: int, rng: np.random.Generator) -> galois.FieldArray:
        if rho == 0:
            return galois.GF(q).Zeros((n, n))
        left = MatrixCalculator.random_full_rank(n, rho, q, rng)
        right = MatrixCalculator.random_full_rank(n, rho, q, rng).T
        return left @ right

    def reduce_channel(self, a: galois.FieldArray) -> galois.FieldArray:
        """A*: the leftmost maximal set of independent columns of A."""
        return a[:, MatrixCalculator.independent_columns(a)]

    """
       Start indices t of fully contained windows [t, t+W-1] whose total rank
       is below nW - S.
    """

    def validate_realization(self, realization: ChannelRealization, S: int, W: int) -> List[int]:
        if not realization.mats:
            return []
        n = realization.mats[0].shape[0]
        return [
            t
            for t in range(realization.horizon - W + 1)
            if realization.window_rank(t, W) < n * W - S
        ]

    def _from_matrices(self, cfg: ChannelConfig, gf, rng: np.random.Generator) -> ChannelRealization:
        mats = []
        for t, a in enumerate(cfg.matrices):
            if a.shape != (cfg.n, cfg.n):
                raise ChannelConfigError(f"Channel matrix A_{t} has shape {a.shape}, expected ({cfg.n}, {cfg.n}).")
            mats.append(gf(np.asarray(a, dtype=np.int64)))

        mats = mats[:cfg.horizon]
        while len(mats) < cfg.horizon:
            mats.append(self.random_channel_matrix(cfg.n, cfg.n, cfg.q, rng))

        rhos = [MatrixCalculator.ground_rank(a) for a in mats]
        return ChannelRealization(mats=mats, rhos=rhos)
