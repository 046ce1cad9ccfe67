"""Shared numerical tolerance policy.

Every module draws its disk-membership and degeneracy thresholds from here so
the whole library can be retuned in one place.  The values are plain module
attributes; tests may override them temporarily via monkeypatching.
"""

# |z| < 1 - INTERIOR_MARGIN counts as safely interior to the unit disk.
INTERIOR_MARGIN = 1e-12

# ||z| - 1| < BOUNDARY_TOL counts as lying on the unit circle.
BOUNDARY_TOL = 1e-9

# Construction tolerance for unimodular constants.
UNIT_MODULUS_TOL = 1e-12

# Relative threshold below which leading polynomial coefficients are trimmed.
COEFF_TRIM = 1e-14

# Absolute threshold for grouping nearby roots into a multiple root.
ROOT_CLUSTER = 1e-7

# Pseudo-hyperbolic distance below which divided differences switch to their
# closed-form limit values (the quotient suffers catastrophic cancellation).
NEAR_DIAGONAL = 1e-7

# Relative band around zero for Schur-Cohn delta sign tests (formula route).
PARABOLIC_DELTA_BAND = 1e-9

# Band for |B'(w0) - 1| at a boundary fixed point (orbit-oracle route).
PARABOLIC_MULTIPLIER_BAND = 1e-6

# Acceptance threshold for normal-form reduction residuals.
RESIDUAL_TOL = 1e-8
