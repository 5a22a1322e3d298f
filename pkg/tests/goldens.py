"""Reference values frozen from ``oracles.py`` (mpmath, 50 digits).

``test_oracle_pins`` in the unit suites recomputes them, so a change in the
oracle cannot slip by silently.
"""

# M = 0.1, Lambda = 1
R_H = 0.2027793946151302393
R_C = 1.621735483240743439
KAPPA_H = 2.364344066958702485
KAPPA_C = 0.5025560562887781054
KAPPA_U = 0.6382119893300754821
ENTROPY = 8.391650955321755822
SQUEEZE_UNIT_OMEGA_KAPPA_H = 0.2712755864166471

# effective-scenario log argument at s = 1, gamma = 0.2715
EFFECTIVE_S1_GAMMA02715 = 0.84317914401152204

# roots over M of the unclamped log arguments at Lambda = s = 1, omega = 0.2
DEATH_AB = 0.06884210301322725516
DEATH_BA = 0.1758920740088821047

LN_COSH_2 = 1.3250027473578645
