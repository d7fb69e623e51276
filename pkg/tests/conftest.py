"""Shared fixtures: the expensive designs are built once per session."""

import numpy as np
import pytest

from udesign.designset import (DesignRecipe, build_inductive, builtin_plan,
                               group_closure, roots_of_unity_design,
                               shrink_multiplicity)


def binary_icosahedral_generators():
    """A standard generating pair for the order-120 subgroup of SU(2),
    written through the quaternion embedding a+bi+cj+dk."""
    phi = (1 + np.sqrt(5)) / 2

    def quat(a, b, c, d):
        return np.array([[a + 1j * b, c + 1j * d],
                         [-c + 1j * d, a - 1j * b]])

    return [quat(0.5, 0.5, 0.5, 0.5), quat(0.5, 0.5 / phi, phi / 2, 0.0)]


@pytest.fixture(scope="session")
def X1():
    return roots_of_unity_design(4)


@pytest.fixture(scope="session")
def rec2(X1):
    e = DesignRecipe.explicit(X1)
    return build_inductive(2, 1, 4, e, e, builtin_plan(2, 1, 4))


@pytest.fixture(scope="session")
def X2(rec2):
    return shrink_multiplicity(rec2.to_multiset())


@pytest.fixture(scope="session")
def sl25():
    return group_closure(binary_icosahedral_generators(), tol=1e-8,
                         max_size=200)


@pytest.fixture(scope="session")
def rec4_factored(rec2):
    # feeding the factored U(2) recipe (children of size <= 25) keeps the
    # probe check fast; shrinking does not change the moment average
    return build_inductive(4, 2, 4, rec2, rec2, builtin_plan(4, 2, 4))
