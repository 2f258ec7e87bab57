from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple


"""
    Decoding outcome of a single source packet.

    Attributes
    ----------
    t : int
        Packet index.
    recovered : bool
        True when s_t was decoded (correctly) no later than t + T.
    delay : int | None
        Decoding delay e + j - t of the window that produced s_t, set also
        for late recoveries (which count as lost). None if never decoded.
    window_rank : int
        Total channel rank observed in the window [t, t + T].
"""


@dataclass(frozen=True)
class PacketOutcome:
    t: int
    recovered: bool
    delay: int | None
    window_rank: int

    @property
    def outcome(self) -> str:
        return "recovered" if self.recovered else "lost"

    def to_row(self) -> List:
        return [self.t, self.outcome, "" if self.delay is None else self.delay, self.window_rank]


"""
    Result of decoding one or more channel realizations.

    Attributes
    ----------
    outcomes : Tuple[PacketOutcome, ...]
        Per-packet outcomes, trial after trial.
    delay : int
        Decoding deadline T the packets were judged against.
    max_window_deficiency : int
        Largest nW - sum(rho) over every fully contained window of length W.
    decode_failures : int
        Number of windows that met the rank condition but whose system was
        singular (a code deficiency, never a channel one).
    trials : int
        Number of merged decoder runs.
"""


@dataclass(frozen=True)
class SimReport:
    outcomes: Tuple[PacketOutcome, ...]
    delay: int
    max_window_deficiency: int = 0
    decode_failures: int = 0
    trials: int = 1

    @property
    def horizon(self) -> int:
        return len(self.outcomes)

    @property
    def losses(self) -> int:
        return sum(1 for o in self.outcomes if not o.recovered)

    @property
    def loss_rate(self) -> float:
        if not self.outcomes:
            return 0.0
        return self.losses / len(self.outcomes)

    @property
    def delay_histogram(self) -> Dict[int, int]:
        histogram: Dict[int, int] = {}
        for o in self.outcomes:
            if o.recovered:
                histogram[o.delay] = histogram.get(o.delay, 0) + 1
        return dict(sorted(histogram.items()))

    def merge(self, other: SimReport) -> SimReport:
        return SimReport(
            outcomes=self.outcomes + other.outcomes,
            delay=self.delay,
            max_window_deficiency=max(self.max_window_deficiency, other.max_window_deficiency),
            decode_failures=self.decode_failures + other.decode_failures,
            trials=self.trials + other.trials,
        )

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "delay": self.delay,
            "packets": self.horizon,
            "losses": self.losses,
            "loss_rate": self.loss_rate,
            "max_window_deficiency": self.max_window_deficiency,
            "decode_failures": self.decode_failures,
            "delay_histogram": {str(d): c for d, c in self.delay_histogram.items()},
        }

    def csv_rows(self) -> List[List]:
        return [o.to_row() for o in self.outcomes]


CSV_HEADER = ["t", "outcome", "delay", "window_rank"]



"""
    One reproduced row of the achievable-field table.

    Attributes
    ----------
    label : str
        Code parameters [n,k,m].
    field : str
        Achievable field and its modulus.
    alpha : str
        Primitive normal element used for the construction.
    primitive, normal : bool
        Certification results for alpha.
    verified : bool
        Outcome of the MSR test at depth m.
    determinants : int
        Determinants evaluated by the MSR test.
    formula_bound : int
        Extension degree q^{n(m+2)-1} guaranteed by the construction.
    listed_bound : int
        Extension degree printed in the reference table.
    remark : str
        Discrepancy with the reference table, e.g. a replaced modulus.
"""


@dataclass(frozen=True)
class TableRowResult:
    label: str
    field: str
    alpha: str
    primitive: bool
    normal: bool
    verified: bool
    determinants: int
    formula_bound: int
    listed_bound: int
    remark: str = ""

    @property
    def passed(self) -> bool:
        return self.primitive and self.normal and self.verified

    @property
    def note(self) -> str:
        notes = []
        if self.formula_bound != self.listed_bound:
            notes.append(f"listed bound 2^{self.listed_bound} differs from formula 2^{self.formula_bound}")
        if self.remark:
            notes.append(self.remark)
        return "; ".join(notes)

    def to_json(self) -> dict:
        return {
            "code": self.label,
            "field": self.field,
            "alpha": self.alpha,
            "primitive": self.primitive,
            "normal": self.normal,
            "verified": self.verified,
            "determinants": self.determinants,
            "formula_bound": self.formula_bound,
            "listed_bound": self.listed_bound,
            "passed": self.passed,
            "note": self.note,
        }

    def to_row(self) -> List:
        return [
            self.label, self.field, self.alpha, self.passed,
            f"2^{self.formula_bound}", f"2^{self.listed_bound}", self.note,
        ]


TABLE_CSV_HEADER = ["code", "field", "alpha", "passed", "formula_bound", "listed_bound", "note"]
