"""Instance generation, seeded experiments and the process simulator."""
from .experiment import ExperimentConfig, ExperimentReport, run_experiment, trial_seed, write_report
from .generate import GeneratorSpec, generate_instance
from .process import ProcessConfig, ProcessResult, simulate_process, tail_bound

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "GeneratorSpec",
    "ProcessConfig",
    "ProcessResult",
    "generate_instance",
    "run_experiment",
    "simulate_process",
    "tail_bound",
    "trial_seed",
    "write_report",
]
