"""Dense complex matrix kernels.

Unitarity checks, principal exp/log on the unitary group, and mode-by-mode
application of tensor powers U^(x)r (x) conj(U)^(x)s to probe vectors without
ever materializing the n^(r+s) x n^(r+s) operator.
"""

import struct

import numpy as np
import scipy.linalg

from .config import DEFAULT, Tolerances
from .errors import BranchCut, DimensionMismatch


def is_unitary(U, tol=DEFAULT.structural):
    """Max-norm test of U†U = I."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    if not np.all(np.isfinite(U)):
        return False
    n = U.shape[0]
    return np.max(np.abs(U.conj().T @ U - np.eye(n))) <= tol


def require_unitary(U, tol=DEFAULT.structural):
    if not is_unitary(U, tol):
        raise ValueError("matrix is not unitary within tolerance %g" % tol)


def random_unitary(n, rng):
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is exactly Haar
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def mat_log(U, tols: Tolerances = DEFAULT):
    """Principal logarithm of a unitary matrix.

    Returns the skew-Hermitian A with exp(A) = U and eigenphases in (-pi, pi).
    Raises BranchCut if an eigenvalue of U lies within tols.branch_cut of -1,
    where the principal branch is ill-defined; the caller retries with a
    perturbed endpoint.
    """
    U = np.asarray(U, dtype=complex)
    require_unitary(U, tols.structural)
    # complex Schur form of a normal matrix is diagonal, giving an exactly
    # unitary eigenbasis (np.linalg.eig does not for repeated eigenvalues)
    T, Q = scipy.linalg.schur(U, output="complex")
    eigvals = np.diagonal(T)
    if np.min(np.abs(eigvals + 1.0)) < tols.branch_cut:
        raise BranchCut("eigenvalue within %g of -1" % tols.branch_cut)
    phases = np.angle(eigvals)
    return (Q * (1j * phases)) @ Q.conj().T


def mat_exp(A):
    """Matrix exponential.

    Skew-Hermitian input goes through a Hermitian eigendecomposition so the
    result is unitary to rounding; anything else falls back to
    scipy's scaling-and-squaring.
    """
    A = np.asarray(A, dtype=complex)
    if not np.all(np.isfinite(A.view(float))):
        raise ValueError("non-finite entries")
    if np.max(np.abs(A + A.conj().T)) <= 1e-12 * max(1.0, np.max(np.abs(A))):
        phases, V = np.linalg.eigh(-1j * A)
        return (V * np.exp(1j * phases)) @ V.conj().T
    return scipy.linalg.expm(A)


class ProbeVector:
    """Complex vector of length n^(r+s), the carrier for tensor moments."""

    def __init__(self, n, r, s, data):
        data = np.asarray(data, dtype=complex).ravel()
        if len(data) != n ** (r + s):
            raise DimensionMismatch(
                "probe length %d != %d^(%d+%d)" % (len(data), n, r, s))
        self.n = n
        self.r = r
        self.s = s
        self.data = data

    @classmethod
    def random(cls, n, r, s, rng):
        size = n ** (r + s)
        return cls(n, r, s, rng.standard_normal(size) + 1j * rng.standard_normal(size))

    def norm(self):
        return float(np.linalg.norm(self.data))


def apply_mode(tensor_flat, n, num_modes, mode, M):
    """Apply the n x n matrix M to one tensor factor of a flat vector."""
    left = n ** mode
    right = n ** (num_modes - mode - 1)
    v = tensor_flat.reshape(left, n, right)
    return np.einsum("ab,xby->xay", M, v).ravel()


def tensor_moment_apply(U, r, s, v: ProbeVector) -> ProbeVector:
    """Compute (U^(x)r (x) conj(U)^(x)s) v mode by mode.

    O((r+s) n^(r+s+1)) work; the full Kronecker operator is never formed.
    """
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    if U.shape != (n, n) or v.n != n or v.r != r or v.s != s:
        raise DimensionMismatch("operand dimensions inconsistent with probe")
    out = v.data
    Uc = U.conj()
    for mode in range(r + s):
        out = apply_mode(out, n, r + s, mode, U if mode < r else Uc)
    return ProbeVector(n, r, s, out)


# --- binary matrix format -------------------------------------------------
# one 32-bit little-endian dimension field, then row-major (re, im) float64

def write_matrix(fh, U):
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    fh.write(struct.pack("<i", n))
    inter = np.empty(2 * n * n, dtype="<f8")
    inter[0::2] = U.real.ravel()
    inter[1::2] = U.imag.ravel()
    fh.write(inter.tobytes())


def read_matrix(fh):
    """Read one matrix; returns None at a clean end of stream."""
    head = fh.read(4)
    if not head:
        return None
    (n,) = struct.unpack("<i", head)
    raw = np.frombuffer(fh.read(16 * n * n), dtype="<f8")
    return (raw[0::2] + 1j * raw[1::2]).reshape(n, n)
