"""Problem registry, box domains, and deterministic evaluation dispatch.

Problems are addressed by textual ids: ``m1``..``m28`` for the level
generation problems, ``sphere``/``ellipsoid``/... for the analytic baselines
and ``shekel-<peaks>`` for the foxhole family.  Instances are plain data and
picklable; every evaluation rebuilds its (cached) machinery from the instance
description, so results never depend on which process runs them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    OutOfBounds, UnknownProblem, UnsupportedDimension, UnsupportedSeed,
)
from ..mario import metrics
from ..mario.decoder import OVERWORLD, UNDERGROUND, decode_level, decoder_params
from ..mario.sim import ASTAR, SCARED, air_time, basic_fitness, simulate, time_taken
from ..mario.tiles import TileGrid, concatenate
from .baselines import (
    BASELINE_NAMES, SHEKEL_PEAK_COUNTS, baseline_box, baseline_eval,
    shekel_eval, shekel_instance,
)

MARIO_SEEDS = 7


@dataclass(frozen=True)
class BoxDomain:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise ValueError("bounds must be equal-length 1-D arrays")
        if np.any(lower >= upper):
            raise ValueError("need lower[i] < upper[i]")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return self.lower.size

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return x.shape == self.lower.shape and bool(
            np.all(x >= self.lower) and np.all(x <= self.upper))

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(np.asarray(x, dtype=float), self.lower, self.upper)


@dataclass(frozen=True)
class ProblemId:
    suite: str  # "mario" | "baseline"
    index: int

    @property
    def text(self) -> str:
        if self.suite == "mario":
            return f"m{self.index}"
        return _BASELINE_ORDER[self.index - 1]

    @classmethod
    def parse(cls, text: str) -> "ProblemId":
        text = text.strip()
        if text.startswith("m") and text[1:].isdigit():
            index = int(text[1:])
            if not 1 <= index <= 28:
                raise UnknownProblem(f"mario problems are m1..m28, got {text}")
            return cls("mario", index)
        if text in _BASELINE_INDEX:
            return cls("baseline", _BASELINE_INDEX[text])
        raise UnknownProblem(f"no problem named {text!r}")


_BASELINE_ORDER = tuple(BASELINE_NAMES) + tuple(
    f"shekel-{p}" for p in SHEKEL_PEAK_COUNTS)
_BASELINE_INDEX = {name: i + 1 for i, name in enumerate(_BASELINE_ORDER)}

# Table rows m1..m28: (measure, agent or None, variant, concatenated?).
_MEASURES = ("enemyDistribution", "positionDistribution",
             "decorationFrequency", "negativeSpace", "leniency")
_MARIO_ROWS: dict[int, tuple[str, str | None, str, bool]] = {}
for _i, _m in enumerate(_MEASURES):
    _MARIO_ROWS[2 * _i + 1] = (_m, None, OVERWORLD, False)
    _MARIO_ROWS[2 * _i + 2] = (_m, None, UNDERGROUND, False)
for _j, _m in enumerate(("basicFitness", "airTime", "timeTaken")):
    _base = 11 + 6 * _j
    _MARIO_ROWS[_base] = (_m, ASTAR, OVERWORLD, False)
    _MARIO_ROWS[_base + 1] = (_m, ASTAR, UNDERGROUND, False)
    _MARIO_ROWS[_base + 2] = (_m, ASTAR, OVERWORLD, True)
    _MARIO_ROWS[_base + 3] = (_m, ASTAR, UNDERGROUND, True)
    _MARIO_ROWS[_base + 4] = (_m, SCARED, OVERWORLD, False)
    _MARIO_ROWS[_base + 5] = (_m, SCARED, UNDERGROUND, False)

_GRID_MEASURES = {
    "enemyDistribution": metrics.enemy_distribution,
    "positionDistribution": metrics.position_distribution,
    "decorationFrequency": metrics.decoration_frequency,
    "negativeSpace": metrics.negative_space,
    "leniency": lambda grid: metrics.leniency(grid).value,
}
_SIM_MEASURES = {
    "basicFitness": basic_fitness,
    "airTime": air_time,
    "timeTaken": time_taken,
}


@dataclass(frozen=True)
class ProblemInstance:
    id: ProblemId
    instance_seed: int
    dimension: int

    @property
    def domain(self) -> BoxDomain:
        if self.id.suite == "mario":
            return BoxDomain(np.full(self.dimension, -1.0),
                             np.full(self.dimension, 1.0))
        lo, hi = baseline_box(self.id.text)
        return BoxDomain(np.full(self.dimension, lo),
                         np.full(self.dimension, hi))

    @property
    def description(self) -> str:
        if self.id.suite == "mario":
            measure, agent, variant, concat = _MARIO_ROWS[self.id.index]
            parts = [measure, variant + ("+concat" if concat else "")]
            if agent:
                parts.insert(1, agent)
            return ", ".join(parts)
        if self.id.text.startswith("shekel-"):
            return f"shekel foxholes, {self.id.text.split('-')[1]} peaks"
        return f"{self.id.text} with seeded optimum shift"


def resolve(id_or_text: ProblemId | str, instance_seed: int,
            dimension: int) -> ProblemInstance:
    pid = ProblemId.parse(id_or_text) if isinstance(id_or_text, str) else id_or_text
    if pid.suite not in ("mario", "baseline"):
        raise UnknownProblem(f"unknown suite {pid.suite!r}")
    instance_seed = int(instance_seed)
    dimension = int(dimension)
    if pid.suite == "mario":
        if not 1 <= pid.index <= 28:
            raise UnknownProblem(f"mario problems are m1..m28, got m{pid.index}")
        if not 1 <= instance_seed <= MARIO_SEEDS:
            raise UnsupportedSeed(
                f"mario instance seeds are 1..{MARIO_SEEDS}, got {instance_seed}")
        if dimension < 2:
            raise UnsupportedDimension("mario problems need d >= 2")
        if _MARIO_ROWS[pid.index][3] and dimension % 2:
            raise UnsupportedDimension(
                "concatenation variants split the latent vector into two "
                "equal blocks and need an even d")
    else:
        if pid.text not in _BASELINE_INDEX:
            raise UnknownProblem(pid.text)
        if instance_seed < 1:
            raise UnsupportedSeed("baseline instance seeds start at 1")
        if dimension < 1:
            raise UnsupportedDimension("baselines need d >= 1")
    return ProblemInstance(pid, instance_seed, dimension)


def decode_instance_level(instance: ProblemInstance, z: np.ndarray) -> TileGrid:
    """The grid an m-problem instance sees for latent vector z."""
    if instance.id.suite != "mario":
        raise UnknownProblem("only mario problems decode levels")
    _, _, variant, concat = _MARIO_ROWS[instance.id.index]
    z = np.asarray(z, dtype=float)
    if concat:
        half = instance.dimension // 2
        params = decoder_params(variant, instance.instance_seed, half)
        return concatenate([decode_level(params, z[:half]),
                            decode_level(params, z[half:])])
    params = decoder_params(variant, instance.instance_seed, instance.dimension)
    return decode_level(params, z)


def instance_agent(instance: ProblemInstance) -> str | None:
    if instance.id.suite != "mario":
        return None
    return _MARIO_ROWS[instance.id.index][1]


def evaluate(instance: ProblemInstance, x: np.ndarray) -> float:
    """Deterministic objective value; minimisation sense."""
    x = np.asarray(x, dtype=float)
    if x.shape != (instance.dimension,):
        raise OutOfBounds(
            f"point must have length {instance.dimension}, got shape {x.shape}")
    if instance.id.suite == "baseline":
        name = instance.id.text
        if name.startswith("shekel-"):
            peaks = int(name.split("-")[1])
            inst = shekel_instance(peaks, instance.instance_seed,
                                   instance.dimension)
            return shekel_eval(inst, x)
        return baseline_eval(name, instance.instance_seed,
                             instance.dimension, x)
    measure, agent, _, _ = _MARIO_ROWS[instance.id.index]
    grid = decode_instance_level(instance, x)  # also box-checks x
    if agent is None:
        value = _GRID_MEASURES[measure](grid)
    else:
        value = _SIM_MEASURES[measure](simulate(grid, agent))
    return min(1.0, max(0.0, value))


class CountingEvaluator:
    """Optional wrapper tracking the evaluation budget of one instance."""

    def __init__(self, instance: ProblemInstance):
        self.instance = instance
        self.count = 0

    def __call__(self, x: np.ndarray) -> float:
        self.count += 1
        return evaluate(self.instance, x)


def list_problems() -> list[dict]:
    """Registry listing for the CLI."""
    rows = []
    for index in range(1, 29):
        inst = ProblemInstance(ProblemId("mario", index), 1, 10)
        rows.append({
            "problem": f"m{index}", "suite": "mario",
            "description": inst.description,
            "box": "[-1,1]", "seeds": f"1..{MARIO_SEEDS}",
        })
    for name in _BASELINE_ORDER:
        lo, hi = baseline_box(name)
        inst = ProblemInstance(ProblemId.parse(name), 1, 10)
        rows.append({
            "problem": name, "suite": "baseline",
            "description": inst.description,
            "box": f"[{lo:g},{hi:g}]", "seeds": "1..",
        })
    return rows
