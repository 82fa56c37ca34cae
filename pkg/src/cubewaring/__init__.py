"""Desk-scale circle-method computations for Waring's problem over
k-th powers of sums of three positive cubes.

Modules: arith (integer utilities), expsums (complete exponential sums),
localsolve (residue structure and local counts), series (singular series),
reps (exact representation counting), dickman (Dickman's rho), circle
(generating sums, arcs, oscillatory integrals), predict (main terms and
lower bounds), checks (acceptance and invariant suites), cli.
"""

__version__ = "0.1.0"

from . import arith, circle, dickman, expsums, kernels, localsolve, predict, reps, series

__all__ = [
    "arith", "circle", "dickman", "expsums", "kernels",
    "localsolve", "predict", "reps", "series",
]
