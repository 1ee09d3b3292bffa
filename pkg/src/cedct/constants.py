"""Numerical tolerances used across the package.

All values assume IEEE double precision and interval counts up to a few
hundred; the largest grids exercised in the experiments have N = 140.
"""

# |cos(pi t_k) - cos(pi t)| below this switches the closed-form kernel to the
# plain cosine series.
KERNEL_GUARD = 1e-9

# Tolerances asserted by the test-suite, grouped here so they move together.
MATRIX_INVERSE_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-9
EXACTNESS_TOL = 1e-9
KERNEL_EQUIVALENCE_TOL = 1e-9
CONSTANT_TOL = 1e-12
LINEARITY_TOL = 1e-10
DERIVATIVE_CONSISTENCY_TOL = 1e-8
DFT_ROUNDTRIP_TOL = 1e-12

# Default number of Simpson subintervals for continuous Fourier coefficients.
DEFAULT_QUADRATURE_POINTS = 4096

# Evaluation points per knot interval for figure tables.
DEFAULT_POINTS_PER_INTERVAL = 20

# Fraction of T0 trimmed from each end when a derivative is compared on the
# "interior" of the interval.
INTERIOR_MARGIN = 0.1
# Round-off allowed above 255 or below 0 before an image is rescaled.
RENDER_TOL = 1e-6

# Relative overshoot past an interval end that is treated as round-off and
# clamped instead of rejected.
ENDPOINT_SLACK = 1e-14
