import pytest

from mppc import _kernels


def _available_backends():
    names = ["python"]
    try:
        _kernels.backend("cython")
        names.append("cython")
    except ImportError:
        pass
    return names


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return _kernels.backend(request.param)


@pytest.fixture(params=BACKENDS)
def any_backend(request, monkeypatch):
    """Route the public API through one backend for the duration of a test."""
    impl = _kernels.backend(request.param)
    for name in ("count_close_pairs", "positive_difference_counts", "gcd_sum_naive",
                 "gcd_sum_sieve", "lemma_beta_min"):
        monkeypatch.setattr(_kernels, name, getattr(impl, name))
    return request.param
