"""Generic-vs-specific evidential analysis: odds-form Bayesian updating,
interval-valued likelihood ratios, partitioned offender populations and a
seeded Monte Carlo oracle for every analytic quantity."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
