"""Zonal spherical polynomials for (U(n), U(m) x U(n-m)).

Everything here is exact rational arithmetic.  Symmetric polynomials are
carried in two bases: the monomial symmetric basis (for expansions and for
conversion to explicit polynomials) and the normalized-Schur basis {S*_sigma}
(the natural basis for the hypergeometric coefficient machinery).  Floating
point only appears at evaluation time.

Coordinate convention: y_i = sin^2(theta_i) of the principal angles, so the
identity coset is y = 0 and every polynomial is normalized to Z(0) = 1.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb

from .errors import SingularCoefficient
from .repindex import normalize_partition
from .symfun import normalized_schur, ssyt_count


# --- exact symmetric-polynomial expansions ---------------------------------

@cache
def schur_monomial(kappa, m):
    """Schur polynomial S_kappa in m variables in the monomial basis.

    Coefficients are the Kostka numbers, obtained by enumerating
    semistandard tableaux of shape kappa with entries in 1..m and collecting
    content vectors.
    """
    kappa = normalize_partition(kappa)
    if len(kappa) > m:
        raise ValueError("shape has more rows than variables")
    if not kappa:
        return {(): 1}
    counts = {}

    rows = len(kappa)

    def fill(cells, row, col, prev_rows, content):
        if row == rows:
            ct = tuple(content)
            counts[ct] = counts.get(ct, 0) + 1
            return
        width = kappa[row]
        if col == width:
            fill(cells, row + 1, 0, prev_rows, content)
            return
        lo = cells[(row, col - 1)] if col > 0 else 1
        above = cells.get((row - 1, col), 0)
        lo = max(lo, above + 1)
        for v in range(lo, m + 1):
            cells[(row, col)] = v
            content[v - 1] += 1
            fill(cells, row, col + 1, prev_rows, content)
            content[v - 1] -= 1
            del cells[(row, col)]

    fill({}, 0, 0, [], [0] * m)
    # the coefficient of m_lambda is the Kostka number K_{kappa,lambda}: the
    # count of tableaux whose content equals lambda itself, not a permutation
    return {normalize_partition(ct): v for ct, v in counts.items()
            if all(ct[i] >= ct[i + 1] for i in range(len(ct) - 1))}


def _distinct_permutations(padded):
    return set(itertools.permutations(padded))


@cache
def monomial_shift(sigma, m):
    """Expansion of the monomial symmetric m_sigma(y+1) in the monomial basis."""
    sigma = normalize_partition(sigma)
    padded = sigma + (0,) * (m - len(sigma))
    out = {}
    for alpha in _distinct_permutations(padded):
        ranges = [range(a + 1) for a in alpha]
        for beta in itertools.product(*ranges):
            coef = 1
            for a, b in zip(alpha, beta):
                coef *= comb(a, b)
            key = normalize_partition(sorted(beta, reverse=True))
            # each exponent multiset is produced once per matching alpha
            # permutation; dividing by the symmetry of beta keeps m_beta count
            out.setdefault(key, {})
            out[key][beta] = out[key].get(beta, 0) + coef
    # m_beta collects one representative exponent vector per orbit; every
    # orbit member accumulated the same total, so read off a sorted one
    result = {}
    for key, by_vec in out.items():
        rep = key + (0,) * (m - len(key))
        result[key] = by_vec[rep]
    return result


def _mono_add(target, src, scale):
    for k, v in src.items():
        c = target.get(k, Fraction(0)) + Fraction(v) * scale
        if c == 0:
            target.pop(k, None)
        else:
            target[k] = c


@cache
def sstar_monomial(sigma, m):
    """Normalized Schur S*_sigma in the monomial basis (exact Fractions)."""
    n = ssyt_count(sigma, m)
    return {k: Fraction(v, n) for k, v in schur_monomial(sigma, m).items()}


def _partition_sort_key(p):
    # weight-descending then lex-descending: compatible with dominance, so
    # peeling leading monomial terms in this order triangularizes the basis
    # change into {S*_sigma}
    return (-sum(p), tuple(-x for x in p))


def monomial_to_sstar(mono, m):
    """Convert a monomial-basis symmetric polynomial into the S*-basis."""
    work = {k: Fraction(v) for k, v in mono.items() if v != 0}
    out = {}
    while work:
        sigma = min(work, key=_partition_sort_key)
        coef = work[sigma] * ssyt_count(sigma, m)
        out[sigma] = coef
        _mono_add(work, sstar_monomial(sigma, m), -coef)
    return out


@cache
def hyper_binom(kappa, m):
    """Generalized binomial table: S*_kappa(y+1) = sum <kappa;sigma> S*_sigma(y)."""
    kappa = normalize_partition(kappa)
    shifted = {}
    for sigma, kost in schur_monomial(kappa, m).items():
        _mono_add(shifted, monomial_shift(sigma, m),
                  Fraction(kost, ssyt_count(kappa, m)))
    return monomial_to_sstar(shifted, m)


# --- hypergeometric coefficients -------------------------------------------

def ascending_factorial(a, s):
    """a (a+1) ... (a+s-1), exactly."""
    a = Fraction(a)
    out = Fraction(1)
    for i in range(s):
        out *= a + i
    return out


def hyper_coeff(a, sigma):
    """[a]^sigma = prod_i (a - i + 1)^(ascending s_i)."""
    sigma = normalize_partition(sigma)
    out = Fraction(1)
    for i, s in enumerate(sigma, start=1):
        out *= ascending_factorial(Fraction(a) - i + 1, s)
    return out


def partition_rho(sigma):
    """rho_sigma = sum_i s_i (s_i - 2 i + 1)."""
    sigma = normalize_partition(sigma)
    return sum(s * (s - 2 * i + 1) for i, s in enumerate(sigma, start=1))


def _bumps(sigma, m):
    """Valid sigma + e_i (still a partition with at most m parts)."""
    sigma = normalize_partition(sigma)
    out = []
    for i in range(min(len(sigma) + 1, m)):
        parts = list(sigma) + [0] * (i + 1 - len(sigma))
        parts[i] += 1
        if all(parts[j] >= parts[j + 1] for j in range(len(parts) - 1)):
            out.append(normalize_partition(parts))
    return out


def c_coefficient_table(c, kappa, m):
    """All [c]_(kappa, sigma) for sigma <= kappa by downward recursion.

    Base case [c]_(kappa, kappa) = 1; each step descends one box.  Raises
    SingularCoefficient when a denominator c + (rho_kappa - rho_sigma)/(k-s)
    is exactly zero.
    """
    c = Fraction(c)
    kappa = normalize_partition(kappa)
    binom_kappa = hyper_binom(kappa, m)
    k = sum(kappa)
    rho_kappa = partition_rho(kappa)
    table = {kappa: Fraction(1)}
    # fill in weight-descending order so every sigma+e_i is already known
    sigmas = sorted(binom_kappa, key=lambda p: -sum(p))
    for sigma in sigmas:
        if sigma in table:
            continue
        s = sum(sigma)
        denom = c + Fraction(rho_kappa - partition_rho(sigma), k - s)
        if denom == 0:
            raise SingularCoefficient(
                "zero denominator for c=%s kappa=%s sigma=%s" % (c, kappa, sigma))
        total = Fraction(0)
        for tau in _bumps(sigma, m):
            if tau not in binom_kappa:
                continue
            ratio = (binom_kappa[tau] * hyper_binom(tau, m)[sigma]
                     / ((k - s) * binom_kappa[sigma]))
            total += ratio * table[tau] / denom
        table[sigma] = total
    return table


def c_coefficient(c, kappa, sigma, m):
    sigma = normalize_partition(sigma)
    return c_coefficient_table(c, kappa, m)[sigma]


# --- zonal polynomials ------------------------------------------------------

@dataclass(frozen=True)
class SymmetricPoly:
    """Symmetric polynomial in m variables, coefficients in the S*-basis."""

    m: int
    coeffs: tuple   # sorted tuple of (partition, Fraction)

    @staticmethod
    def from_dict(m, coeffs):
        items = tuple(sorted(((normalize_partition(p), Fraction(c))
                              for p, c in coeffs.items() if c != 0),
                             key=lambda it: _partition_sort_key(it[0])))
        return SymmetricPoly(m=m, coeffs=items)

    def coeff_dict(self):
        return dict(self.coeffs)

    def monomial_dict(self):
        """Exact expansion in the monomial symmetric basis."""
        out = {}
        for sigma, c in self.coeffs:
            _mono_add(out, sstar_monomial(sigma, self.m), c)
        return out

    def degree(self):
        return max((sum(p) for p, _ in self.coeffs), default=0)

    def to_json(self):
        return {
            "m": self.m,
            "sstar_coeffs": [[list(p), str(c)] for p, c in self.coeffs],
            "monomial_coeffs": [[list(p), str(c)]
                                for p, c in sorted(self.monomial_dict().items())],
        }


def zonal_poly(kappa, m, n):
    """Normalized zonal polynomial Z_kappa for (U(n), U(m) x U(n-m)).

    Z_kappa(y) = sum_{sigma <= kappa} (-1)^|sigma| <kappa;sigma>
                 [n]_(kappa,sigma) / [m]_sigma  * S*_sigma(y),
    rescaled so the constant (S*_0) coefficient is 1, i.e. Z(0) = 1.
    """
    kappa = normalize_partition(kappa)
    if not (len(kappa) <= m <= n / 2):
        raise ValueError("need len(kappa) <= m <= n/2")
    if not kappa:
        return SymmetricPoly.from_dict(m, {(): Fraction(1)})
    binom = hyper_binom(kappa, m)
    ctable = c_coefficient_table(n, kappa, m)
    coeffs = {}
    for sigma, b in binom.items():
        s = sum(sigma)
        coeffs[sigma] = (Fraction(-1) ** s) * b * ctable[sigma] / hyper_coeff(m, sigma)
    const = coeffs.get((), None)
    if not const:
        raise SingularCoefficient("vanishing constant term for kappa=%s" % (kappa,))
    return SymmetricPoly.from_dict(m, {p: c / const for p, c in coeffs.items()})


def zonal_eval(Z: SymmetricPoly, y):
    """Floating-point value of Z at the angle coordinates y."""
    if len(y) != Z.m:
        raise ValueError("expected %d coordinates" % Z.m)
    total = 0.0
    for sigma, c in Z.coeffs:
        total += float(c) * normalized_schur(sigma, [float(v) for v in y]).real
    return total


def to_univariate(Z: SymmetricPoly):
    """Exact coefficient list [c_0, c_1, ...] for m = 1."""
    if Z.m != 1:
        raise ValueError("univariate form requires m = 1")
    mono = Z.monomial_dict()
    deg = Z.degree()
    out = [Fraction(0)] * (deg + 1)
    for p, c in mono.items():
        out[p[0] if p else 0] = c
    return out


def to_bivariate(Z: SymmetricPoly):
    """Exact dict (i, j) -> Fraction of y1^i y2^j for m = 2."""
    if Z.m != 2:
        raise ValueError("bivariate form requires m = 2")
    out = {}
    for p, c in Z.monomial_dict().items():
        a = p[0] if len(p) > 0 else 0
        b = p[1] if len(p) > 1 else 0
        if a == b:
            out[(a, b)] = out.get((a, b), Fraction(0)) + c
        else:
            out[(a, b)] = out.get((a, b), Fraction(0)) + c
            out[(b, a)] = out.get((b, a), Fraction(0)) + c
    return {k: v for k, v in out.items() if v != 0}
