"""Schur polynomials and U(n) characters.

Numeric Schur evaluation uses the bialternant quotient of determinants and
falls back to a Jacobi-Trudi determinant built from power sums near
confluent points, where the bialternant is 0/0.  Characters of U(n) at
explicit matrices come from Schur values at the eigenvalues, with negative
weight entries absorbed into a determinant power.
"""

from fractions import Fraction
from functools import cache

import numpy as np

from .config import DEFAULT
from .errors import DimensionMismatch, NotAGroup
from .repindex import DominantWeight, normalize_partition
from .report import VerificationReport


@cache
def ssyt_count(sigma, m):
    """Number of semistandard tableaux of shape sigma in m letters.

    This is S_sigma(1, ..., 1), the normalizer of the normalized Schur
    polynomial; computed exactly by the hook-content formula.
    """
    sigma = normalize_partition(sigma)
    if len(sigma) > m:
        return 0
    conj = [sum(1 for p in sigma if p > j) for j in range(sigma[0])] if sigma else []
    val = Fraction(1)
    for i, row in enumerate(sigma):
        for j in range(row):
            hook = (row - j) + (conj[j] - i) - 1
            val *= Fraction(m + j - i, hook)
    assert val.denominator == 1
    return int(val)


def power_sums_from_values(x, kmax):
    """p_j = sum_i x_i^j for j = 1..kmax."""
    x = np.asarray(x, dtype=complex)
    return [complex(np.sum(x ** j)) for j in range(1, kmax + 1)]


def complete_homogeneous_from_power_sums(p, kmax):
    """Newton's identities: k h_k = sum_{i=1..k} h_{k-i} p_i."""
    h = [1.0 + 0j]
    for k in range(1, kmax + 1):
        acc = sum(h[k - i] * p[i - 1] for i in range(1, k + 1))
        h.append(acc / k)
    return h


def _jacobi_trudi(sigma, h):
    ell = len(sigma)
    if ell == 0:
        return 1.0 + 0j
    M = np.empty((ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            k = sigma[i] - (i + 1) + (j + 1)
            M[i, j] = h[k] if 0 <= k < len(h) else 0.0
    return complex(np.linalg.det(M))


def schur_eval(sigma, x, confluent_tol=DEFAULT.confluent):
    """Schur polynomial S_sigma at the point x (m = len(x) variables)."""
    sigma = normalize_partition(sigma)
    x = np.asarray(x, dtype=complex)
    m = len(x)
    if len(sigma) > m:
        raise ValueError("partition has more parts than variables")
    diffs = np.abs(x[:, None] - x[None, :])[np.triu_indices(m, 1)]
    if len(diffs) and np.min(diffs) < confluent_tol:
        p = power_sums_from_values(x, sum(sigma))
        h = complete_homogeneous_from_power_sums(p, sum(sigma))
        return _jacobi_trudi(sigma, h)
    full = sigma + (0,) * (m - len(sigma))
    num = np.column_stack([x ** (full[j] + m - j - 1) for j in range(m)])
    den = np.column_stack([x ** (m - j - 1) for j in range(m)])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def schur_from_traces(sigma, traces):
    """Schur value from power sums tr(g), tr(g^2), ... without eigenvalues."""
    sigma = normalize_partition(sigma)
    h = complete_homogeneous_from_power_sums(list(traces), sum(sigma))
    return _jacobi_trudi(sigma, h)


def normalized_schur(sigma, y, confluent_tol=DEFAULT.confluent):
    """S_sigma(y) / S_sigma(1, ..., 1); equals 1 at the all-ones point."""
    sigma = normalize_partition(sigma)
    norm = ssyt_count(sigma, len(y))
    if norm == 0:
        raise ValueError("partition has more parts than variables")
    return schur_eval(sigma, y, confluent_tol) / norm


def character(mu: DominantWeight, g, use_traces=False):
    """Character of the U(n) irrep with highest weight mu at the matrix g.

    Negative entries are shifted away: with c = mu_n,
    chi_mu(g) = det(g)^c * S_{mu - c}(eigenvalues of g).
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if g.shape != (n, n) or mu.n != n:
        raise DimensionMismatch("weight length %d != matrix dim %d" % (mu.n, n))
    shift = mu.entries[-1]
    sigma = normalize_partition(tuple(e - shift for e in mu.entries))
    det_pow = np.linalg.det(g) ** shift
    if use_traces:
        kmax = sum(sigma)
        traces = [complex(np.trace(np.linalg.matrix_power(g, j)))
                  for j in range(1, kmax + 1)]
        return det_pow * schur_from_traces(sigma, traces)
    eig = np.linalg.eigvals(g)
    return det_pow * schur_eval(sigma, eig)


def weight_dimension(mu: DominantWeight):
    """Dimension of the irrep: the character at the identity, exactly."""
    shift = mu.entries[-1]
    sigma = normalize_partition(tuple(e - shift for e in mu.entries))
    return ssyt_count(sigma, mu.n)


def _element_list(gamma):
    """Accept a UnitaryMultiset or a plain list of matrices."""
    if hasattr(gamma, "elements"):
        out = []
        for mat, mult in gamma.elements:
            out.extend([mat] * mult)
        return out
    return [np.asarray(g, dtype=complex) for g in gamma]


def _check_group_closure(mats, tol):
    """Every pairwise product and every inverse must match a listed element."""
    n = mats[0].shape[0]
    flat = np.stack([g.ravel() for g in mats])           # (N, n^2)
    stack = np.stack(mats)                               # (N, n, n)
    prods = np.einsum("aij,bjk->abik", stack, stack).reshape(-1, n * n)
    d = np.abs(prods[:, None, :] - flat[None, :, :]).max(axis=2)
    if np.max(d.min(axis=1)) > tol:
        raise NotAGroup("a pairwise product matches no element (err %g)"
                        % float(np.max(d.min(axis=1))))
    invs = np.stack([g.conj().T.ravel() for g in mats])
    di = np.abs(invs[:, None, :] - flat[None, :, :]).max(axis=2)
    if np.max(di.min(axis=1)) > tol:
        raise NotAGroup("an inverse matches no element")


def group_character_test(gamma, weights, tol=DEFAULT.structural):
    """Averaged-character test for a finite subgroup to be a design.

    For each nontrivial weight mu the residual is |(1/|G|) sum_x chi_mu(x)|,
    the trace of the group-average projection in the irrep; all residuals
    vanishing is necessary and sufficient for the group to average every
    listed irrep to zero.
    """
    mats = _element_list(gamma)
    if not mats:
        raise ValueError("empty multiset")
    _check_group_closure(mats, max(tol, 1e-8))
    residuals = {}
    for mu in sorted(weights):
        if mu.is_trivial():
            continue
        avg = sum(character(mu, g) for g in mats) / len(mats)
        residuals[mu.entries] = abs(avg)
    return VerificationReport.from_residuals(
        "character", residuals, tol, counts={"elements": len(mats)})
