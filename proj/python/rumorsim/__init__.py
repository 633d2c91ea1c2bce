"""Python bindings for the rumorsim simulator."""

from ._core import (
    AcceptMode,
    Agent,
    Colony,
    ConfigError,
    Desire,
    GenerationRecord,
    InstabilityReference,
    OwnVersionPolicy,
    RunConfig,
    Scenario,
    Trace,
    TrustTriple,
    TurnAction,
    ValidationReport,
    accept,
    builtin_example,
    classify,
    detect_convergence,
    heterogeneity_matrix,
    homogeneity,
    load_scenario,
    load_scenario_file,
    merge_box,
    run,
    save_scenario,
    validate_colony,
)

__all__ = [name for name in dir() if not name.startswith("_")]
