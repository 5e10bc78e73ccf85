"""Frozen reference values.

TABLE_TAU / TABLE_RDOT are the published collapse-time table (8 decimals).
Everything else was computed once with mpmath at 50 significant digits
(``loggamma``, ``beta``, ``erf``, ``erfinv``, ``ellipfun``, ``ellipk``) or,
for the approximation baseline, with ``scipy.stats.beta.ppf``, and pasted
here. None of it is produced by this package.
"""

import math

# gamma -> tau, rounded to 8 decimals
TABLE_TAU = {
    -100.0: 0.22019512,
    -10.0: 0.64597784,
    -4.0: 0.91468136,
    -3.0: 1.0,
    -2.0: 1.11072073,
    -5.0 / 3.0: 1.15470054,
    -1.5: 1.17809725,
    -4.0 / 3.0: 1.20239047,
    -1.0: 1.25331414,
    -2.0 / 3.0: 1.30639453,
    -0.5: 1.33333333,
    -1.0 / 3.0: 1.36034952,
    0.0: 1.41421356,
    1.0: 1.57079633,
    2.0: 1.71731534,
    3.0: 1.85407468,
    4.0: 1.98232217,
    10.0: 2.62843161,
    100.0: 7.20340190,
}

# gamma -> rdot(tau) for the rows where it is finite
TABLE_RDOT = {
    -2.0 / 3.0: -2.44948974,
    -0.5: -2.0,
    -1.0 / 3.0: -1.73205081,
    0.0: -1.41421356,
    1.0: -1.0,
    2.0: -0.81649658,
    3.0: -0.70710678,
    4.0: -0.63245553,
    10.0: -0.42640143,
    100.0: -0.14071951,
}

# rows of the table where the collapse velocity diverges
TABLE_RDOT_DIVERGENT = (-100.0, -10.0, -4.0, -3.0, -2.0, -5.0 / 3.0, -1.5, -4.0 / 3.0, -1.0)

LGAMMA_HALF = 0.57236494292470008707
LGAMMA_FIVE = 3.1780538303479456196
BETA_5_6_HALF = 2.2405026006665604393
ERF_ONE = 0.84270079294971486934
INV_ERF_HALF = 0.47693627620446987338
CN_HALF_HALF = 0.88226639489044028649  # cn(0.5 | m=0.5)
CN_07_HALF = 0.78115264245363428956  # cn(0.7 | m=0.5)
K_HALF = 1.8540746773013719184  # K(m=0.5) = tau(3)
TAU_MINUS_7 = 0.7468342002221868131

# gamma = -4, p1 = 2/5, 1000-point grid on [0, tau]
APPROX_P1_M4_MAX_ERR = 0.009894533134771066
APPROX_P1_M4_RMS_ERR = 0.005766173301904448

# half-angle point of the gamma = -2 cycloid: r = 1/2
T_HALF_TOPHAT = (0.5 * math.pi + 1.0) / math.sqrt(8.0)

# exponents used across property suites
GAMMA_SET = (-4.0, -3.0, -2.0, -1.5, -1.0, -0.5, 0.0, 1.0, 2.0, 3.0, 4.0)
