"""Principal angles and coset representatives on the complex Grassmannian.

The double coset of omega in U(m) x U(n-m) \\ U(n) / U(m) x U(n-m) is
determined by the principal angles between the span E of the first m basis
vectors and omega E.  We work in the coordinates y_i = sin^2(theta_i), so
the identity coset sits at y = 0.
"""

import numpy as np

from .errors import DimensionMismatch, OutOfRange
from .linalg import require_unitary
from .zonal import zonal_eval, zonal_poly


def principal_y(omega, m):
    """sin^2 of the principal angles between E and omega E, sorted ascending.

    The cosines are the singular values of the top-left m x m block of
    omega (SVD is well conditioned near both theta = 0 and pi/2, unlike
    eigenvalues of the projector product).
    """
    omega = np.asarray(omega, dtype=complex)
    n = omega.shape[0]
    if omega.shape != (n, n) or not (1 <= m <= n / 2):
        raise DimensionMismatch("need omega in U(n) with 1 <= m <= n/2")
    require_unitary(omega)
    cos = np.linalg.svd(omega[:m, :m], compute_uv=False)
    y = np.clip(1.0 - cos ** 2, 0.0, 1.0)
    return np.sort(y)


def coset_point(y, n):
    """A real orthogonal representative of the coset with angle coordinates y.

    Returns [[C, -S], [S, C]] (+) I_{n-2m} with C = diag(cos theta_i),
    S = diag(sin theta_i), theta_i = arcsin(sqrt(y_i)).
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    m = len(y)
    if 2 * m > n:
        raise DimensionMismatch("need 2 len(y) <= n")
    if np.any(y < -1e-12) or np.any(y > 1 + 1e-12):
        raise OutOfRange("coordinates must lie in [0, 1]")
    theta = np.arcsin(np.sqrt(np.clip(y, 0.0, 1.0)))
    C = np.diag(np.cos(theta))
    S = np.diag(np.sin(theta))
    out = np.eye(n, dtype=complex)
    out[:m, :m] = C
    out[:m, m:2 * m] = -S
    out[m:2 * m, :m] = S
    out[m:2 * m, m:2 * m] = C
    return out


def zonal_at_unitary(kappa, m, n, omega):
    """Zonal spherical function Z_kappa evaluated at the coset of omega."""
    return zonal_eval(zonal_poly(kappa, m, n), principal_y(omega, m))
