"""
Simulation benchmark harness and published reference values
"""

from src.bench.harness import BENCH_COLUMNS, ReplicateResult, run_replicate, run_cell, run_bench
from src.bench.reference import REFERENCE_RMISE_X100, reference_value

__all__ = [
    "BENCH_COLUMNS",
    "ReplicateResult",
    "run_replicate",
    "run_cell",
    "run_bench",
    "REFERENCE_RMISE_X100",
    "reference_value",
]
