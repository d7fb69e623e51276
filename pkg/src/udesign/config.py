"""Central tolerance configuration.

All numeric thresholds used across the package live here so that a single
record can be overridden per run instead of scattering magic numbers.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # structural checks: unitarity, exp/log round trips, dedup equality
    structural: float = 1e-10
    # verification residuals: frame potentials, probe checks, character sums
    verification: float = 1e-8
    # eigenvalues closer than this to -1 make the principal log ill-defined
    branch_cut: float = 1e-8
    # two evaluation points closer than this switch schur_eval to Jacobi-Trudi
    confluent: float = 1e-9
    # singular-value cutoff for the Weingarten pseudo-inverse
    pinv_cutoff: float = 1e-12


DEFAULT = Tolerances()
