from .core import (
    BoxDomain, CountingEvaluator, ProblemId, ProblemInstance,
    decode_instance_level, evaluate, instance_agent, list_problems, resolve,
)
from .baselines import (
    BASELINE_NAMES, SHEKEL_PEAK_COUNTS, SHEKEL_SEEDS, ShekelInstance,
    baseline_box, baseline_eval, shekel_eval, shekel_instance,
)

__all__ = [
    "BoxDomain", "CountingEvaluator", "ProblemId", "ProblemInstance",
    "decode_instance_level", "evaluate", "instance_agent", "list_problems",
    "resolve",
    "BASELINE_NAMES", "SHEKEL_PEAK_COUNTS", "SHEKEL_SEEDS", "ShekelInstance",
    "baseline_box", "baseline_eval", "shekel_eval", "shekel_instance",
]
