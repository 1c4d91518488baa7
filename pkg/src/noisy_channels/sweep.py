"""Sweeps over the noise probability ``p`` and detection of resonance windows.

A resonance window is a maximal run of grid steps on which the transmission
rate (coherent information, or the dense coding rate) and the noise ``S(W)``
both strictly increase.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .catalog import (
    VARIANTS,
    closed_form_qubit_eval,
    dense_coding_eval,
    dense_coding_rate_generic,
    generic_qubit_eval,
)
from .channels import BlochVector
from .errors import ConsistencyError, SpecInvalidError, TooFewRecordsError
from .numerics import binary_entropy

Scenario = Literal["ad", "bf", "dc"]
SCENARIOS = ("ad", "bf", "dc")

SPOT_CHECK_EVERY = 10
SPOT_CHECK_TOL = 1e-9
DEFAULT_STEPS = 1000
DEFAULT_EPS = 1e-9
DEFAULT_MIN_WIDTH = 0.01

# panel -> (scenario, q, Bloch input)
FIG1_INPUT = (0.8, 0.3, 0.3)
FIG2_INPUT = (0.1, 0.1, 0.9)
FIGURE_PANELS: dict[str, tuple[str, float, tuple[float, float, float] | None]] = {
    "1a": ("ad", 0.0, FIG1_INPUT),
    "1b": ("ad", 1.0, FIG1_INPUT),
    "1c": ("ad", 0.5, FIG1_INPUT),
    "2a": ("bf", 0.0, FIG2_INPUT),
    "2b": ("bf", 1.0, FIG2_INPUT),
    "2c": ("bf", 0.5, FIG2_INPUT),
    "3a": ("dc", 0.0, None),
    "3b": ("dc", 0.5, None),
    "3c": ("dc", 1.0, None),
}


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario
    q: float
    bloch: tuple[float, float, float] = (0.0, 0.0, 0.0)
    p_min: float = 0.0
    p_max: float = 1.0
    steps: int = DEFAULT_STEPS
    w12_variant: str = "derived"
    xi_variant: str = "derived"
    metric: str = field(init=False)

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise SpecInvalidError(f"unknown scenario {self.scenario!r}")
        if not 0.0 <= self.q <= 1.0:
            raise SpecInvalidError(f"q={self.q!r} outside [0, 1]")
        if not (0.0 <= self.p_min < self.p_max <= 1.0):
            raise SpecInvalidError(f"need 0 <= p_min < p_max <= 1, got [{self.p_min}, {self.p_max}]")
        if int(self.steps) != self.steps or self.steps < 10:
            raise SpecInvalidError(f"steps must be an integer >= 10, got {self.steps!r}")
        if self.w12_variant not in VARIANTS or self.xi_variant not in VARIANTS:
            raise SpecInvalidError("variants must be 'derived' or 'printed'")
        if self.scenario != "dc":
            if len(self.bloch) != 3 or math.sqrt(sum(x * x for x in self.bloch)) > 1.0 + 1e-10:
                raise SpecInvalidError(f"invalid Bloch vector {self.bloch!r}")
        object.__setattr__(self, "bloch", tuple(float(x) for x in self.bloch))
        object.__setattr__(self, "metric", "chi" if self.scenario == "dc" else "coherent_information")

    def grid(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, int(self.steps) + 1)

    @classmethod
    def for_panel(cls, panel: str, steps: int = DEFAULT_STEPS, **kw) -> "SweepSpec":
        try:
            scenario, q, bloch = FIGURE_PANELS[panel]
        except KeyError:
            raise SpecInvalidError(f"unknown figure panel {panel!r}") from None
        return cls(scenario=scenario, q=q, bloch=bloch or (0.0, 0.0, 0.0), steps=steps, **kw)


@dataclass(frozen=True)
class SweepRecord:
    p: float
    metric: float
    noise: float
    output_entropy: float


@dataclass(frozen=True)
class ResonanceWindow:
    p_lo: float
    p_hi: float
    max_metric_gain: float


def evaluate_point(spec: SweepSpec, p: float, spot_check: bool = False) -> SweepRecord:
    if spec.scenario == "dc":
        ev = dense_coding_eval(p, spec.q, spec.xi_variant)
        if spot_check and spec.xi_variant == "derived":
            _agree(spec, p, ev.chi, dense_coding_rate_generic(p, spec.q))
            _agree(spec, p, ev.entropy_exchange, binary_entropy(p / 2))
        return SweepRecord(p, ev.chi, ev.entropy_exchange, ev.output_entropy)

    a = BlochVector(*spec.bloch)
    ev = closed_form_qubit_eval(spec.scenario, a, p, spec.q, spec.w12_variant)
    if spot_check and spec.w12_variant == "derived":
        g = generic_qubit_eval(spec.scenario, a, p, spec.q)
        _agree(spec, p, ev.coherent_information, g.coherent_information)
        _agree(spec, p, ev.entropy_exchange, g.entropy_exchange)
    return SweepRecord(p, ev.coherent_information, ev.entropy_exchange, ev.output_entropy)


def _agree(spec: SweepSpec, p: float, closed: float, generic: float) -> None:
    if abs(closed - generic) > SPOT_CHECK_TOL:
        raise ConsistencyError(
            f"{spec.scenario} q={spec.q} p={p}: closed form {closed!r} vs generic {generic!r}"
        )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRecord]:
    """Evaluate the scenario on ``steps + 1`` evenly spaced ``p`` values.

    Every tenth point is recomputed through the generic Kraus path (only for
    the derived variants, since the printed ones differ on purpose). Points
    are independent, so ``workers > 1`` evaluates them in a thread pool; the
    records always come back in ascending ``p``.
    """
    grid = [float(p) for p in spec.grid()]
    checks = [i % SPOT_CHECK_EVERY == 0 for i in range(len(grid))]
    if workers <= 1:
        return [evaluate_point(spec, p, c) for p, c in zip(grid, checks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda pc: evaluate_point(spec, *pc), zip(grid, checks)))


def detect_resonance(records: Sequence[SweepRecord], eps: float = DEFAULT_EPS,
                     min_width: float = DEFAULT_MIN_WIDTH) -> list[ResonanceWindow]:
    """Maximal intervals where both the metric and the noise rise by more than ``eps`` per step."""
    if len(records) < 2:
        raise TooFewRecordsError(f"need at least 2 records, got {len(records)}")
    ps = [r.p for r in records]
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise TooFewRecordsError("records must be strictly increasing in p")

    rising = [
        (b.metric - a.metric) > eps and (b.noise - a.noise) > eps
        for a, b in zip(records, records[1:])
    ]
    windows = []
    i = 0
    while i < len(rising):
        if not rising[i]:
            i += 1
            continue
        j = i
        while j < len(rising) and rising[j]:
            j += 1
        lo, hi = records[i], records[j]
        if hi.p - lo.p >= min_width - 1e-12:
            gain = max(r.metric for r in records[i:j + 1]) - lo.metric
            windows.append(ResonanceWindow(lo.p, hi.p, gain))
        i = j
    return windows
