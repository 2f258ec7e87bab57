from __future__ import annotations

import logging
from dataclasses import replace

import numpy as np

from app.domain.channel_dto import ChannelConfig
from app.domain.code_dto import ConvolutionalCode
from app.domain.report_dto import SimReport
from app.error.exceptions import ChannelConfigError
from app.services.channel_service import ChannelService
from app.services.stream_service import StreamService

logger = logging.getLogger(__name__)

"""
   Service running repeated encode / channel / decode trials and printing
   their summary.

   Attributes
   ----------
   stream_service : StreamService
       Encoder and decoder.
   channel_service : ChannelService
       Channel sampler.
"""

class SimulationService:

    def __init__(self, stream_service: StreamService, channel_service: ChannelService | None = None):
        self.stream_service = stream_service
        self.channel_service = channel_service or stream_service.channel_service

    """
       Runs `trials` independent decoder runs and merges their reports.

       Every trial draws its own seed from cfg.seed, sends cfg.horizon random
       source packets followed by T zero flush packets over horizon + T shots,
       and reports the first cfg.horizon packets. Identical configurations
       give identical reports.
    """

    def simulate(self, code: ConvolutionalCode, cfg: ChannelConfig, T: int, trials: int) -> SimReport:
        if cfg.n != code.n:
            raise ChannelConfigError(f"Channel carries {cfg.n} symbols per shot but the code sends {code.n}.")
        if T < 0:
            raise ChannelConfigError(f"Decoding delay must be non-negative, got {T}.")
        if trials < 1:
            raise ChannelConfigError(f"At least one trial is required, got {trials}.")

        seeds = np.random.SeedSequence(cfg.seed).spawn(trials)
        report: SimReport | None = None

        for trial, seed_sequence in enumerate(seeds):
            seed = int(seed_sequence.generate_state(1)[0])
            rng = np.random.default_rng(seed)
            channel_cfg = replace(cfg, horizon=cfg.horizon + T, seed=seed)
            channel = self.channel_service.sample_channel(channel_cfg)

            sources = [code.field.Random(code.k, seed=rng) for _ in range(cfg.horizon)]
            sources += [code.field.Zeros(code.k) for _ in range(T)]

            packets = self.stream_service.encode(code, sources)
            received = self.stream_service.transmit(packets, channel)
            outcome = self.stream_service.decode_stream(
                code, received, channel, T, sources=sources, horizon=cfg.horizon, window=cfg.W
            )
            logger.debug("Trial %d: %d losses", trial, outcome.losses)

            report = outcome if report is None else report.merge(outcome)

        logger.info(
            "Simulated %s over CH(S=%d, W=%d), T=%d: %d trials, loss rate %.4f",
            code.label(), cfg.S, cfg.W, T, trials, report.loss_rate,
        )
        return report

    def display_report(self, report: SimReport) -> None:
        print(f"\n--- Simulation ({report.trials} trial(s), deadline T={report.delay}) ---")
        print(f"{'Packets:':<24} {report.horizon}")
        print(f"{'Losses:':<24} {report.losses}")
        print(f"{'Loss rate:':<24} {report.loss_rate:.4f}")
        print(f"{'Max window deficiency:':<24} {report.max_window_deficiency}")
        print(f"{'Decode failures:':<24} {report.decode_failures}")

        histogram = report.delay_histogram
        if histogram:
            print("\nRecovery delays:")
            for delay, count in histogram.items():
                print(f"  d={delay:<3} {count}")
