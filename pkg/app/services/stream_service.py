from __future__ import annotations

import logging
from typing import Dict, List, Sequence

import galois
import numpy as np

from app.domain.channel_dto import ChannelRealization
from app.domain.code_dto import ConvolutionalCode, DistanceKind
from app.domain.report_dto import PacketOutcome, SimReport
from app.error.exceptions import BudgetExceededError, ConstructionError, DimensionError
from app.services.channel_service import ChannelService
from app.services.construction_service import ConstructionService
from app.services.field_service import FieldService
from app.services.verification_service import VerificationService
from app.util.matrix_calculator import MatrixCalculator

KERNEL_ATTEMPTS = 64

logger = logging.getLogger(__name__)

"""
   Service running a convolutional code over a rank-deficient network:
   encoding, transmission, delay-constrained windowed decoding and the
   construction of worst-case channels.

   Attributes
   ----------
   field_service : FieldService
       Field of the codes being streamed.
   construction_service : ConstructionService
       Provides extended generators.
   channel_service : ChannelService
       Reduces channel matrices to their independent columns.
   verification_service : VerificationService
       Minimum-rank codeword search for worst-case channels.
"""

class StreamService:

    def __init__(
        self,
        field_service: FieldService,
        construction_service: ConstructionService | None = None,
        channel_service: ChannelService | None = None,
        verification_service: VerificationService | None = None,
    ):
        self.field_service = field_service
        self.construction_service = construction_service or ConstructionService(field_service)
        self.channel_service = channel_service or ChannelService()
        self.verification_service = verification_service or VerificationService(
            field_service, self.construction_service
        )

    def encode(self, code: ConvolutionalCode, sources: Sequence[galois.FieldArray]) -> List[galois.FieldArray]:
        """x_t = s_t G_0 + s_{t-1} G_1 + ... + s_{t-m} G_m, with s_t = 0 for t < 0."""
        for t, s in enumerate(sources):
            if np.shape(s) != (code.k,):
                raise DimensionError(f"Source packet s_{t} has shape {np.shape(s)}, expected ({code.k},).")

        packets = []
        for t in range(len(sources)):
            x = code.field.Zeros(code.n)
            for i in range(min(code.m, t) + 1):
                x = x + sources[t - i] @ code.blocks[i]
            packets.append(x)
        return packets

    def transmit(self, packets: Sequence[galois.FieldArray], channel: ChannelRealization) -> List[galois.FieldArray]:
        if len(packets) > channel.horizon:
            raise DimensionError(f"{len(packets)} packets do not fit a channel of {channel.horizon} shots.")
        field = type(packets[0]) if packets else None
        return [x @ MatrixCalculator.embed(a, field) for x, a in zip(packets, channel.mats)]

    """
       Decodes a received stream with deadline T.

       The decoder keeps the earliest undecoded index e. It grows the window
       [e, e+j] until the observed rank reaches k(j+1), cancels the memory
       contribution of the already decoded packets, and solves for
       s_e..s_{e+j} from the leftmost independent columns of
       G^EX_j diag(A*_e, ..., A*_{e+j}). A rank shortfall despite the rank
       condition is recorded as a decode failure and the window keeps
       growing. Packets decoded after t + T, decoded wrongly, or never
       decoded count as lost.

       Parameters
       ----------
       code : ConvolutionalCode
       received : Sequence[galois.FieldArray]
           y_t = x_t A_t.
       channel : ChannelRealization
           Matrices known to the receiver.
       T : int
           Decoding deadline.
       sources : Sequence[galois.FieldArray] | None
           True source packets; when given, wrong estimates count as lost.
       horizon : int | None
           Number of leading packets to report; defaults to all.
       window : int | None
           Window length for the deficiency statistic; defaults to T + 1.
    """

    def decode_stream(
        self,
        code: ConvolutionalCode,
        received: Sequence[galois.FieldArray],
        channel: ChannelRealization,
        T: int,
        sources: Sequence[galois.FieldArray] | None = None,
        horizon: int | None = None,
        window: int | None = None,
    ) -> SimReport:
        total = len(received)
        if channel.horizon < total:
            raise DimensionError(f"Channel has {channel.horizon} shots but {total} packets were received.")
        for t, y in enumerate(received):
            if np.shape(y) != (code.n,):
                raise DimensionError(f"Received packet y_{t} has shape {np.shape(y)}, expected ({code.n},).")

        n, k = code.n, code.k
        field = code.field
        columns = [MatrixCalculator.independent_columns(a) for a in channel.mats[:total]]
        reduced = [MatrixCalculator.embed(a[:, cols], field) for a, cols in zip(channel.mats, columns)]
        rhos = [len(cols) for cols in columns]

        extended_cache: Dict[int, galois.FieldArray] = {}
        estimates: Dict[int, galois.FieldArray] = {}
        decoded_at: Dict[int, int] = {}
        failures = 0

        e = 0
        while e < total:
            solved = False
            for j in range(total - e):
                if sum(rhos[e:e + j + 1]) < k * (j + 1):
                    continue

                if j not in extended_cache:
                    extended_cache[j] = self.construction_service.extended_generator(code, j)
                extended = extended_cache[j]

                system_parts, rhs_parts = [], []
                for i in range(j + 1):
                    t = e + i
                    if rhos[t] == 0:
                        continue
                    known = field.Zeros(n)
                    for lag in range(i + 1, min(code.m, t) + 1):
                        known = known + estimates[t - lag] @ code.blocks[lag]
                    rhs_parts.append(received[t][columns[t]] - known @ reduced[t])
                    system_parts.append(extended[:, i * n:(i + 1) * n] @ reduced[t])

                system = np.hstack(system_parts)
                rhs = np.concatenate(rhs_parts)
                pivots = MatrixCalculator.independent_columns(system)
                if len(pivots) < k * (j + 1):
                    failures += 1
                    logger.debug("Singular system at e=%d, j=%d despite rank %d", e, j, sum(rhos[e:e + j + 1]))
                    continue

                solution = np.linalg.solve(system[:, pivots].T, rhs[pivots])
                for i in range(j + 1):
                    estimates[e + i] = solution[i * k:(i + 1) * k]
                    decoded_at[e + i] = e + j
                e += j + 1
                solved = True
                break

            if not solved:
                logger.debug("Packets %d..%d never became decodable", e, total - 1)
                break

        reported = total if horizon is None else min(horizon, total)
        outcomes = []
        for t in range(reported):
            delay = decoded_at[t] - t if t in decoded_at else None
            recovered = delay is not None and delay <= T
            if recovered and sources is not None:
                recovered = bool(np.array_equal(estimates[t], sources[t]))
            outcomes.append(PacketOutcome(t=t, recovered=recovered, delay=delay, window_rank=sum(rhos[t:t + T + 1])))

        window = T + 1 if window is None else window
        realization = ChannelRealization(mats=channel.mats[:total], rhos=rhos)
        return SimReport(
            outcomes=tuple(outcomes),
            delay=T,
            max_window_deficiency=realization.max_window_deficiency(n, window),
            decode_failures=failures,
        )

    """
       Channel A*_0..A*_j that hides a minimum sum-rank codeword: A*_t spans
       the right null space of phi_n(x_t), so the codeword is received as
       all-zero. Each A*_t is padded with zero columns to n x n.

       The codeword comes from the exhaustive minimizer when the search fits
       the enumeration budget; otherwise it is x = s G^EX_j for a left-kernel
       vector s (s_0 != 0) of G^EX_j A*_{[0,j]} under a random channel of
       total rank k(j+1) - 1. For MSR codes both give sum rank d_R(j).
    """

    def worst_case_pattern(self, code: ConvolutionalCode, j: int, seed: int = 0) -> ChannelRealization:
        try:
            _, sources = self.verification_service.codeword_search(code, j, DistanceKind.SUM_RANK)
            packets = self.encode(code, sources)
            logger.info("Worst case for %s at depth %d from exhaustive search", code.label(), j)
        except BudgetExceededError:
            packets = self._kernel_codeword(code, j, seed)
            logger.info("Worst case for %s at depth %d from a kernel codeword", code.label(), j)

        gf = self.field_service.ground
        mats, rhos = [], []
        for x in packets:
            kernel = self.field_service.poly_coords(x).null_space().T
            rho = kernel.shape[1]
            padded = gf.Zeros((code.n, code.n))
            if rho:
                padded[:, :rho] = kernel
            mats.append(padded)
            rhos.append(rho)

        return ChannelRealization(mats=mats, rhos=rhos)

    def _kernel_codeword(self, code: ConvolutionalCode, j: int, seed: int) -> List[galois.FieldArray]:
        n, k = code.n, code.k
        rhos = [k - 1] + [k] * j
        extended = self.construction_service.extended_generator(code, j)
        rng = np.random.default_rng(seed)

        for _ in range(KERNEL_ATTEMPTS):
            blocks = [MatrixCalculator.random_full_rank(n, rho, code.spec.q, rng) for rho in rhos]
            channel = MatrixCalculator.embed(MatrixCalculator.block_diag(blocks), code.field)
            kernel = (extended @ channel).left_null_space()
            for s in kernel:
                if np.any(s[:k] != 0):
                    x = s @ extended
                    return [x[t * n:(t + 1) * n] for t in range(j + 1)]

        raise ConstructionError(f"No kernel codeword with s_0 != 0 found for {code.label()} at depth {j}.")
