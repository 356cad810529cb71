"""Hot inner loops with a compiled backend and a pure-Python fallback.

The compiled module ``_core`` is used when it was built and importable.
Setting ``MPPC_PURE_PYTHON=1`` forces the fallback. Both backends expose the
same functions and give identical integer counts; floating results agree to
rounding.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("MPPC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

count_close_pairs = _impl.count_close_pairs
positive_difference_counts = _impl.positive_difference_counts
gcd_sum_naive = _impl.gcd_sum_naive
gcd_sum_sieve = _impl.gcd_sum_sieve
lemma_beta_min = _impl.lemma_beta_min


def backend(name):
    """Return the kernel namespace for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
