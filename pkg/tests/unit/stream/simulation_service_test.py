import pytest

from app.domain.channel_dto import ChannelConfig, ChannelMode
from app.domain.report_dto import PacketOutcome, SimReport
from app.error.exceptions import ChannelConfigError
from app.services.simulation_service import SimulationService
from app.services.stream_service import StreamService
from app.services.verification_service import VerificationService

from tests.unit.mock.field_mocks import table_code


def simulation(fs):
    return SimulationService(StreamService(fs))


# ==========================================
# SIMULATION
# ==========================================

def test_random_channels_within_budget_lose_nothing():
    code, fs = table_code(4, 2, 1)
    assert VerificationService(fs).verify_msr(code).verified
    cfg = ChannelConfig(n=4, q=2, S=4, W=2, horizon=3, seed=11)
    report = simulation(fs).simulate(code, cfg, T=1, trials=500)

    assert report.trials == 500
    assert report.horizon == 1500
    assert report.losses == 0
    assert report.decode_failures == 0
    assert report.max_window_deficiency <= 4
    assert set(report.delay_histogram) <= {0, 1}


def test_full_rank_channels_decode_immediately():
    code, fs = table_code(3, 2, 2)
    cfg = ChannelConfig(n=3, q=2, S=0, W=2, horizon=5, seed=1)
    report = simulation(fs).simulate(code, cfg, T=0, trials=5)
    assert report.loss_rate == 0.0
    assert report.delay_histogram == {0: 25}


def test_worst_case_channel_causes_loss():
    code, fs = table_code(4, 2, 1)
    service = simulation(fs)
    worst = service.stream_service.worst_case_pattern(code, 1)
    cfg = ChannelConfig(n=4, q=2, S=5, W=2, horizon=4, seed=0, mode=ChannelMode.ADVERSARIAL, matrices=worst.mats)

    report = service.simulate(code, cfg, T=1, trials=2)
    assert report.losses >= 2
    assert not report.outcomes[0].recovered
    assert report.max_window_deficiency == 5


def test_identical_configs_give_identical_reports():
    code, fs = table_code(2, 1, 2)
    cfg = ChannelConfig(n=2, q=2, S=2, W=2, horizon=6, seed=77)
    first = simulation(fs).simulate(code, cfg, T=1, trials=10)
    second = simulation(fs).simulate(code, cfg, T=1, trials=10)
    assert first.to_json() == second.to_json()
    assert first.csv_rows() == second.csv_rows()


@pytest.mark.parametrize("S, W, T", [(2, 2, 2), (1, 3, 0)])
def test_window_mismatch_within_distance_loses_nothing(S, W, T):
    code, fs = table_code(2, 1, 2)
    cfg = ChannelConfig(n=2, q=2, S=S, W=W, horizon=8, seed=S + W)
    report = simulation(fs).simulate(code, cfg, T=T, trials=30)
    assert report.losses == 0


def test_full_erasure_with_zero_delay_loses_first_packet():
    code, fs = table_code(2, 1, 2)
    cfg = ChannelConfig(n=2, q=2, S=2, W=3, horizon=6, seed=4, mode=ChannelMode.ADVERSARIAL, pattern=(0,))
    report = simulation(fs).simulate(code, cfg, T=0, trials=3)

    assert report.losses == 3
    lost = [o for o in report.outcomes if not o.recovered]
    assert all(o.t == 0 and o.delay == 1 for o in lost)


@pytest.mark.parametrize("cfg_n, T, trials, message", [
    (3, 1, 1, "symbols per shot"),
    (2, -1, 1, "non-negative"),
    (2, 1, 0, "At least one trial"),
])
def test_invalid_simulation_parameters(cfg_n, T, trials, message):
    code, fs = table_code(2, 1, 1)
    cfg = ChannelConfig(n=cfg_n, q=2, S=1, W=2, horizon=4, seed=0)
    with pytest.raises(ChannelConfigError, match=message):
        simulation(fs).simulate(code, cfg, T=T, trials=trials)


# ==========================================
# REPORT
# ==========================================

def sample_report():
    return SimReport(
        outcomes=(
            PacketOutcome(t=0, recovered=True, delay=1, window_rank=4),
            PacketOutcome(t=1, recovered=True, delay=0, window_rank=6),
            PacketOutcome(t=2, recovered=False, delay=2, window_rank=3),
            PacketOutcome(t=3, recovered=False, delay=None, window_rank=0),
        ),
        delay=1,
        max_window_deficiency=5,
        decode_failures=1,
    )


def test_report_statistics():
    report = sample_report()
    assert report.losses == 2
    assert report.loss_rate == 0.5
    assert report.delay_histogram == {0: 1, 1: 1}
    assert report.csv_rows()[3] == [3, "lost", "", 0]
    assert report.to_json()["delay_histogram"] == {"0": 1, "1": 1}


def test_report_merge():
    merged = sample_report().merge(SimReport(outcomes=(), delay=1, max_window_deficiency=2, decode_failures=2))
    assert merged.trials == 2
    assert merged.horizon == 4
    assert merged.max_window_deficiency == 5
    assert merged.decode_failures == 3


def test_empty_report_has_zero_loss_rate():
    assert SimReport(outcomes=(), delay=0).loss_rate == 0.0


def test_display_report(capsys):
    code, fs = table_code(2, 1, 1)
    service = simulation(fs)
    service.display_report(sample_report())
    out = capsys.readouterr().out
    assert "deadline T=1" in out
    assert "Loss rate:" in out
    assert "d=0" in out
