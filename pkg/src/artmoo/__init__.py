"""Many-objective evolutionary optimization with ART-based reference vector adaptation."""

from .bench import ExperimentConfig, RunRecord, run_experiment, summarize
from .cim import cim, estimate_bandwidth
from .core import Individual, dominates, nondominated_filter, update_ideal
from .estimator import CimArtClustering
from .evolution import RunResult
from .indicators import IndicatorResult, hypervolume, igd_plus, normalize_front
from .network import TopoNetwork, adaptive_train_ca, connected_components, train_ca
from .problems import (
    Problem,
    ReferenceFront,
    available_problems,
    front_to_csv,
    make_problem,
    reference_front,
)
from .refvec import ApdContext, ReferenceVectorSet, das_dennis, environmental_selection
from .rvea import run_rvea_baseline
from .rvea_ca import run_rvea_ca
from .stats import wilcoxon_rank_sum
from .variation import VariationParams

__all__ = [
    "ApdContext",
    "CimArtClustering",
    "ExperimentConfig",
    "Individual",
    "IndicatorResult",
    "Problem",
    "ReferenceFront",
    "ReferenceVectorSet",
    "RunRecord",
    "RunResult",
    "TopoNetwork",
    "VariationParams",
    "adaptive_train_ca",
    "available_problems",
    "cim",
    "connected_components",
    "das_dennis",
    "dominates",
    "environmental_selection",
    "estimate_bandwidth",
    "front_to_csv",
    "hypervolume",
    "igd_plus",
    "make_problem",
    "nondominated_filter",
    "normalize_front",
    "reference_front",
    "run_experiment",
    "run_rvea_baseline",
    "run_rvea_ca",
    "summarize",
    "train_ca",
    "update_ideal",
    "wilcoxon_rank_sum",
]

__version__ = "0.1.0"
