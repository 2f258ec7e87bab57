from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Tuple

from app.domain.channel_dto import ChannelConfig, ChannelMode
from app.domain.field_dto import FieldSpec
from app.error.exceptions import ConfigError, MsrError

"""
    Validated configuration of a `sim` run, read from JSON:

    {
      "field":   {"q": 2, "m": 11, "modulus": [1, 0, 1, ..., 1]}
                 or {"q": 2, "m": 11, "poly": "x^11+x^2+1"} or {"q": 2, "m": 5},
      "alpha":   [1, 1],                      optional, low degree first
      "assume_primitive": false,              optional
      "code":    {"n": 4, "k": 2, "m": 1, "rows": [0, 1]},
      "channel": {"S": 4, "W": 2, "horizon": 50, "mode": "random"}
                 adversarial: "pattern": {"rhos": [...]} | {"deficiencies": [...]}
                              | "worst_case",
      "delay":   1,
      "trials":  200,
      "seed":    7,
      "output":  {"json": "report.json", "csv": "report.csv"}   optional
    }

    Attributes
    ----------
    spec : FieldSpec
    alpha : Tuple[int, ...] | None
        Primitive normal element; searched for when omitted.
    assume_primitive : bool
    n, k, m : int
        Code parameters.
    rows : Tuple[int, ...] | None
        Row indices for MSR extraction.
    channel : ChannelConfig
    worst_case : bool
        Replace the channel by the worst-case pattern at depth delay.
    delay : int
        Decoding deadline T.
    trials : int
    seed : int
    json_path, csv_path : str | None
        Output files.
"""


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    spec: FieldSpec
    alpha: Tuple[int, ...] | None
    assume_primitive: bool
    n: int
    k: int
    m: int
    rows: Tuple[int, ...] | None
    channel: ChannelConfig
    worst_case: bool
    delay: int
    trials: int
    seed: int
    json_path: str | None = None
    csv_path: str | None = None

    @classmethod
    def from_json(cls, payload: Any) -> ExperimentConfig:
        if not isinstance(payload, dict):
            raise ConfigError("Experiment configuration must be a JSON object.")

        seed, delay, trials = validate_run(payload)
        spec, alpha = validate_field(payload.get("field"), payload.get("alpha"))
        n, k, m, rows = validate_code(payload.get("code"))
        channel, worst_case = validate_channel(payload.get("channel"), n, spec.q, seed)
        json_path, csv_path = validate_output(payload.get("output"))

        return cls(
            spec=spec,
            alpha=alpha,
            assume_primitive=bool(payload.get("assume_primitive", False)),
            n=n,
            k=k,
            m=m,
            rows=rows,
            channel=channel,
            worst_case=worst_case,
            delay=delay,
            trials=trials,
            seed=seed,
            json_path=json_path,
            csv_path=csv_path,
        )


def _require_int(section: dict, key: str, where: str, minimum: int | None = None) -> int:
    if key not in section:
        raise ConfigError(f"Missing '{key}' in {where}.")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' in {where} must be an integer, got {value!r}.")
    if minimum is not None and value < minimum:
        raise ConfigError(f"'{key}' in {where} must be at least {minimum}, got {value}.")
    return value


def _require_int_list(values: Any, where: str) -> Tuple[int, ...]:
    if not isinstance(values, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in values):
        raise ConfigError(f"{where} must be a list of integers.")
    return tuple(values)


def validate_run(payload: dict) -> Tuple[int, int, int]:
    seed = _require_int(payload, "seed", "configuration")
    delay = _require_int(payload, "delay", "configuration", minimum=0)
    trials = _require_int(payload, "trials", "configuration", minimum=1) if "trials" in payload else 1
    return seed, delay, trials


def validate_field(section: Any, alpha: Any) -> Tuple[FieldSpec, Tuple[int, ...] | None]:
    if not isinstance(section, dict):
        raise ConfigError("Missing 'field' section.")

    q = _require_int(section, "q", "'field'", minimum=2)
    m = _require_int(section, "m", "'field'", minimum=1)
    try:
        if "modulus" in section:
            spec = FieldSpec(q=q, m=m, modulus=_require_int_list(section["modulus"], "'field.modulus'"))
        elif "poly" in section:
            spec = FieldSpec.from_poly_string(q, m, str(section["poly"]))
        else:
            spec = FieldSpec.default(q, m)
    except MsrError as e:
        raise ConfigError(f"Invalid field: {e}")

    alpha_coords = None
    if alpha is not None:
        alpha_coords = _require_int_list(alpha, "'alpha'")
        if len(alpha_coords) > m or any(not 0 <= c < q for c in alpha_coords):
            raise ConfigError(f"'alpha' must hold at most {m} coefficients in [0, {q}).")
        alpha_coords = alpha_coords + (0,) * (m - len(alpha_coords))

    return spec, alpha_coords


def validate_code(section: Any) -> Tuple[int, int, int, Tuple[int, ...] | None]:
    if not isinstance(section, dict):
        raise ConfigError("Missing 'code' section.")

    n = _require_int(section, "n", "'code'", minimum=1)
    k = _require_int(section, "k", "'code'", minimum=1)
    m = _require_int(section, "m", "'code'", minimum=0)
    if k > n:
        raise ConfigError(f"Code parameters require k <= n, got k={k}, n={n}.")

    rows = None
    if section.get("rows") is not None:
        rows = _require_int_list(section["rows"], "'code.rows'")
        if len(rows) != k or list(rows) != sorted(set(rows)) or rows[0] < 0 or rows[-1] >= n:
            raise ConfigError(f"'code.rows' must be {k} strictly increasing indices in [0, {n}).")

    return n, k, m, rows


def validate_channel(section: Any, n: int, q: int, seed: int) -> Tuple[ChannelConfig, bool]:
    if not isinstance(section, dict):
        raise ConfigError("Missing 'channel' section.")

    S = _require_int(section, "S", "'channel'", minimum=0)
    W = _require_int(section, "W", "'channel'", minimum=1)
    horizon = _require_int(section, "horizon", "'channel'", minimum=1)

    try:
        mode = ChannelMode(section.get("mode", ChannelMode.RANDOM.value))
    except ValueError:
        raise ConfigError(f"Unknown channel mode {section.get('mode')!r}.")

    pattern = None
    worst_case = False
    if mode == ChannelMode.ADVERSARIAL:
        raw = section.get("pattern")
        if raw == "worst_case":
            worst_case = True
        elif isinstance(raw, dict) and "rhos" in raw:
            pattern = _require_int_list(raw["rhos"], "'channel.pattern.rhos'")
        elif isinstance(raw, dict) and "deficiencies" in raw:
            pattern = tuple(n - d for d in _require_int_list(raw["deficiencies"], "'channel.pattern.deficiencies'"))
        else:
            raise ConfigError("Adversarial channels need a pattern: {'rhos': [...]}, {'deficiencies': [...]} or 'worst_case'.")

    try:
        channel = ChannelConfig(
            n=n,
            q=q,
            S=S,
            W=W,
            horizon=horizon,
            seed=seed,
            mode=mode,
            pattern=pattern if pattern is not None else (() if worst_case else None),
        )
    except MsrError as e:
        raise ConfigError(f"Invalid channel: {e}")

    return channel, worst_case


def validate_output(section: Any) -> Tuple[str | None, str | None]:
    if section is None:
        return None, None
    if not isinstance(section, dict):
        raise ConfigError("'output' must be an object with optional 'json' and 'csv' paths.")
    return section.get("json"), section.get("csv")
