"""Contraction coefficients of Markov operators on cones."""

import json as _json

from ._conerate import (
    ConerateError,
    NoContraction,
    NotInterior,
    NotTraceless,
    TooLarge,
    UnitMismatch,
    ValidationError,
    ZeroEntry,
    apply_phi,
    apply_psi,
    birkhoff_bound,
    certify,
    consensus_contraction_bruteforce,
    consensus_oscillations,
    contraction_norm,
    delta_dobrushin,
    delta_doeblin,
    depolarizing,
    doeblin_state,
    estimate_invariant,
    hk_dimensions,
    pair_objective,
    projective_diameter,
    random_channel,
    run_command,
    scaled_contraction,
    zero_error_check,
)


def run(command, path, **options):
    """Runs a CLI command in-process and returns the parsed report."""
    return _json.loads(run_command(command, str(path), **options))


__all__ = [name for name in dir() if not name.startswith("_")]
