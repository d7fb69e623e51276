import numpy as np
import pytest

from udesign.errors import DimensionMismatch, OutOfRange
from udesign.grassmann import coset_point, principal_y, zonal_at_unitary
from udesign.linalg import random_unitary

rng = np.random.default_rng(11)


def test_identity_coset():
    assert np.allclose(principal_y(np.eye(4), 2), 0.0)


def test_round_trip():
    for y in ([0.3], [0.0, 0.7], [0.25, 0.9]):
        n = 2 * len(y) + 1
        g = coset_point(y, n)
        assert np.allclose(principal_y(g, len(y)), sorted(y), atol=1e-12)


def test_coset_point_is_unitary():
    g = coset_point([0.2, 0.6], 5)
    assert np.allclose(g @ g.conj().T, np.eye(5), atol=1e-12)


def test_bi_invariance():
    # y depends only on the double coset: k1 g k2 with block-diagonal k's
    y = [0.15, 0.85]
    g = coset_point(y, 4)
    for _ in range(5):
        k1 = np.zeros((4, 4), dtype=complex)
        k2 = np.zeros((4, 4), dtype=complex)
        for k in (k1, k2):
            k[:2, :2] = random_unitary(2, rng)
            k[2:, 2:] = random_unitary(2, rng)
        moved = k1 @ g @ k2
        assert np.allclose(principal_y(moved, 2), sorted(y), atol=1e-10)


def test_extreme_angles():
    # theta = pi/2 gives y = 1 exactly (the antipodal coset)
    g = coset_point([1.0], 2)
    assert abs(principal_y(g, 1)[0] - 1.0) < 1e-12


def test_out_of_range():
    with pytest.raises(OutOfRange):
        coset_point([1.5], 4)
    with pytest.raises(OutOfRange):
        coset_point([-0.2], 4)


def test_dimension_guards():
    with pytest.raises(DimensionMismatch):
        coset_point([0.1, 0.2], 3)
    with pytest.raises(DimensionMismatch):
        principal_y(np.eye(4), 3)   # m > n/2
    with pytest.raises(ValueError):
        principal_y(2 * np.eye(4), 2)


def test_zonal_at_unitary_identity():
    for kappa in [(1,), (2, 1)]:
        assert abs(zonal_at_unitary(kappa, 2, 4, np.eye(4)) - 1.0) < 1e-12


def test_zonal_at_unitary_matches_direct_eval():
    from udesign.zonal import zonal_eval, zonal_poly
    y = [0.2, 0.55]
    g = coset_point(y, 4)
    for kappa in [(2,), (1, 1), (3, 1)]:
        want = zonal_eval(zonal_poly(kappa, 2, 4), y)
        assert abs(zonal_at_unitary(kappa, 2, 4, g) - want) < 1e-10
