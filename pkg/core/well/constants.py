"""Physical constants table (CODATA 2018)."""

HBAR = 1.054571817e-34  # J s
ELECTRON_MASS = 9.1093837015e-31  # kg
AMU = 1.66053906660e-27  # kg
ANGSTROM = 1.0e-10  # m

# Upper bound on the width-fluctuation parameter sigma. Keeps the eps = -1
# pole at least 20 sigma from the mean.
SIGMA_CAP = 0.05

# Tolerance on |c_lo|^2 + |c_hi|^2 = 1
NORMALIZATION_TOL = 1e-12
