"""Backend selection for the enumeration kernels.

The compiled extension is used when present; otherwise the NumPy fallback.
Both backends expose the same functions with identical integer results, so
callers never need to know which one is active (``BACKEND`` reports it, and
``get_backend`` gives explicit access for benchmarks and equivalence tests).
"""

try:
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _pykernels as _impl

    BACKEND = "python"

from . import _pykernels

lpf_sieve = _impl.lpf_sieve
t_value_counts = _impl.t_value_counts
t_mod_hist = _impl.t_mod_hist


def get_backend(name):
    """Return the kernel module for ``name`` ("cython" or "python")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
