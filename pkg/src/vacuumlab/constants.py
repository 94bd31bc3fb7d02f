"""Physical constants (CODATA 2018) used only at unit-conversion boundaries.

All module math is dimensionless; lengths are measured in Planck lengths,
momenta in hbar per Planck length, and pressures convert to pascal through
the factor c*hbar/ell**4.
"""

SPEED_OF_LIGHT = 299792458.0            # m / s
HBAR = 1.054571817e-34                  # J s
PLANCK_LENGTH_M = 1.616255e-35          # m
PLANCK_LENGTH_KM = PLANCK_LENGTH_M / 1e3
AU_KM = 1.495978707e8                   # km per astronomical unit

#: multiply a dimensionless pressure by this to get pascal
PRESSURE_UNIT_PA = SPEED_OF_LIGHT * HBAR / PLANCK_LENGTH_M ** 4
