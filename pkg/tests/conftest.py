"""Shared fixtures.

The two full-scale sweeps used by the acceptance module are expensive
enough that nothing else should ever trigger a second run; they are
session-scoped here so a plain `pytest` invocation pays for each exactly
once no matter which test files reference them.
"""

import pytest

from cppforge import make_extension, make_prime_field
from cppforge.grids import sweep_kernel_binomials, sweep_norm_lift


@pytest.fixture(scope="session")
def f2():
    return make_prime_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_prime_field(3)


@pytest.fixture(scope="session")
def f4(f2):
    return make_extension(f2, 2)


@pytest.fixture(scope="session")
def f9(f3):
    return make_extension(f3, 2)


@pytest.fixture(scope="session")
def f16(f2):
    return make_extension(f2, 4)


@pytest.fixture(scope="session")
def thm22_full():
    """Full-scale norm-lift equivalence sweep (every pair up to order 4096)."""
    return sweep_norm_lift()


@pytest.fixture(scope="session")
def lemma34_full():
    """Full-scale kernel-binomial criterion sweep (every tower up to 4096)."""
    return sweep_kernel_binomials()
