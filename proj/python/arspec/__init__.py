"""Finite-order AR/MA approximations of stationary processes.

Thin wrapper over the compiled extension: covariance/Wold/AR conversions,
Levinson-Durbin predictors, spectral densities and their convergence sweeps,
TAVC estimation and seeded Monte-Carlo experiments.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
