"""Zero finding for zonal polynomials and on the unitary group.

Univariate roots are isolated by Sturm sequences over exact rationals and
refined by bisection; bivariate (m = 2) common zeros go through resultant
elimination; zeros of functions on U(n) use geodesic bisection; and common
zeros of several bi-invariant functions use the random local search over a
16-parameter factorization of U(4).
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from .config import DEFAULT
from .errors import BranchCut, NoSignChange, NoZeroFound, Stalled
from .grassmann import coset_point
from .linalg import mat_exp, mat_log
from .zonal import to_bivariate, to_univariate, zonal_eval, zonal_poly

# --- exact univariate polynomials (coefficient lists, low degree first) -----


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p):
    return [c * i for i, c in enumerate(p)][1:]


def _poly_rem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _trim(a):
        da, la = len(a) - 1, a[-1]
        q = la / lb
        for i in range(db + 1):
            a[da - db + i] -= q * b[i]
        a[da] = Fraction(0)
        _trim(a)
    return a


def poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_poly_rem(a, b))
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def square_free(p):
    """Divide out repeated factors so every real root is simple."""
    g = poly_gcd(p, poly_deriv(p))
    if len(g) <= 1:
        return list(p)
    q, r = _poly_divmod(p, g)
    assert not _trim(r)
    return q


def _poly_divmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(1, len(a) - db)
    while len(a) - 1 >= db and _trim(a):
        da, la = len(a) - 1, a[-1]
        f = la / lb
        q[da - db] = f
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a[da] = Fraction(0)
        _trim(a)
    return _trim(q), a


def sturm_chain(p):
    chain = [_trim(list(p))]
    d = poly_deriv(chain[0])
    if _trim(list(d)):
        chain.append(d)
        while len(chain[-1]) > 1:
            r = _trim([-c for c in _poly_rem(chain[-2], chain[-1])])
            if not r:
                break
            chain.append(r)
    return chain


def _sign_variations(chain, x):
    signs = []
    for q in chain:
        v = poly_eval(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, a, b):
    """Number of distinct real roots of p in (a, b] (p square-free or not)."""
    chain = sturm_chain(square_free(p))
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def real_roots(p, interval=(0, 1), tol=1e-12):
    """All distinct real roots of the rational-coefficient polynomial p
    inside [a, b], each refined by bisection to within tol.

    Multiple roots are reported once (square-free decomposition first).
    """
    a, b = Fraction(interval[0]), Fraction(interval[1])
    p = _trim([Fraction(c) for c in p])
    if not p:
        raise ValueError("zero polynomial")
    sf = square_free(p)
    chain = sturm_chain(sf)

    roots = []
    if poly_eval(sf, a) == 0:
        roots.append(a)

    width = Fraction(tol).limit_denominator(10 ** 18) / 4

    def _refine(q, lo, hi):
        # exactly one simple root in (lo, hi]; bisect on Sturm counts so a
        # root landing exactly on a midpoint is handled
        while hi - lo > width:
            mid = (lo + hi) / 2
            if poly_eval(q, mid) == 0:
                return mid
            if _sign_variations(chain, lo) - _sign_variations(chain, mid) == 1:
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2

    # plain recursive bisection on root counts
    def split(lo, hi):
        n_here = _sign_variations(chain, lo) - _sign_variations(chain, hi)
        if n_here == 0:
            return
        if n_here == 1:
            roots.append(_refine(sf, lo, hi))
            return
        mid = (lo + hi) / 2
        # a root exactly at mid falls in the half-open left piece (lo, mid]
        split(lo, mid)
        split(mid, hi)

    split(a, b)
    return sorted(set(float(r) for r in roots))


# --- zero certificates -------------------------------------------------------


@dataclass(frozen=True)
class ZeroCertificate:
    """A certified (near-)zero of a family of zonal polynomials."""

    kappa_list: tuple      # partitions covered
    m: int
    n: int
    y: tuple               # angle coordinates
    residuals: tuple       # per-kappa |Z_kappa(y)|, same order as kappa_list
    kind: str = "common-zero"   # or "real-part-zero"
    y_precise: tuple = None     # optional high-precision decimal strings

    def max_residual(self):
        return max(self.residuals) if self.residuals else 0.0

    def certified(self, tol=DEFAULT.structural):
        return self.max_residual() <= tol

    def to_json(self):
        ys = list(self.y_precise) if self.y_precise else ["%.30g" % v for v in self.y]
        return {
            "kappas": [list(k) for k in self.kappa_list],
            "m": self.m,
            "n": self.n,
            "y": ys,
            "residuals": {str(list(k)): r
                          for k, r in zip(self.kappa_list, self.residuals)},
            "kind": self.kind,
        }


def certify(kappas, m, n, y, kind="common-zero", y_precise=None):
    res = tuple(abs(zonal_eval(zonal_poly(k, m, n), y)) for k in kappas)
    return ZeroCertificate(tuple(kappas), m, n, tuple(float(v) for v in y),
                           res, kind, tuple(y_precise) if y_precise else None)


# --- bivariate common zeros (m = 2) ------------------------------------------

_E1, _E2 = sympy.symbols("e1 e2")


def _power_sum_in_e(k):
    """p_k = y1^k + y2^k as a dict (a, b) -> int coefficient of e1^a e2^b,
    via p_k = e1 p_{k-1} - e2 p_{k-2}."""
    prev, cur = {(0, 0): 2}, {(1, 0): 1}
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = {}
        for (a, b), c in cur.items():
            nxt[(a + 1, b)] = nxt.get((a + 1, b), 0) + c
        for (a, b), c in prev.items():
            nxt[(a, b + 1)] = nxt.get((a, b + 1), 0) - c
        prev, cur = cur, nxt
    return cur


def _elementary_poly(Z):
    """Rewrite a symmetric bivariate polynomial exactly in the elementary-
    symmetric coordinates e1 = y1 + y2, e2 = y1 y2, as a sympy Poly over QQ.

    Uses y1^i y2^j + y1^j y2^i = e2^j p_{i-j} for i > j and
    (y1 y2)^i = e2^i on the diagonal.
    """
    out = {}
    for (i, j), c in to_bivariate(Z).items():
        if i < j:
            continue
        if i == j:
            key = (0, i)
            out[key] = out.get(key, Fraction(0)) + c
        else:
            for (a, b), w in _power_sum_in_e(i - j).items():
                key = (a, b + j)
                out[key] = out.get(key, Fraction(0)) + c * w
    expr = sympy.Integer(0)
    for (a, b), c in out.items():
        if c:
            expr += sympy.Rational(c.numerator, c.denominator) * _E1 ** a * _E2 ** b
    return sympy.Poly(expr, _E1, _E2, domain="QQ")


def _coeff_list(poly_1d):
    cs = poly_1d.all_coeffs()[::-1]
    return [Fraction(int(c.p), int(c.q)) for c in cs]


def eliminate(kappas, n):
    """Resultant elimination for the m = 2 system in elementary-symmetric
    coordinates.  Returns exact coefficient lists (low degree first) of the
    eliminants in e1 and in e2; either may be None when every pairwise
    resultant vanishes (shared curve component)."""
    polys = [_elementary_poly(zonal_poly(tuple(k), 2, n)) for k in kappas]
    if len(polys) < 2:
        raise ValueError("need at least two polynomials to eliminate")

    def gcd_of_resultants(var):
        g = None
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                r = sympy.resultant(polys[i].as_expr(), polys[j].as_expr(), var)
                r = sympy.expand(r)
                if r == 0:
                    continue
                g = r if g is None else sympy.gcd(g, r)
        if g is None:
            return None
        other = _E2 if var is _E1 else _E1
        p = sympy.Poly(g, other, domain="QQ")
        return _coeff_list(p) if p.degree() > 0 else None

    return gcd_of_resultants(_E2), gcd_of_resultants(_E1)


def common_zero_2d(kappas, n, tol=DEFAULT.structural, m=2):
    """Certified common zeros of the zonal polynomials Z_kappa in [0,1]^2.

    Each polynomial is rewritten exactly in elementary-symmetric coordinates
    (e1, e2); pairwise resultants eliminate each variable in turn, the
    univariate eliminants are solved by Sturm isolation, and candidate
    (e1, e2) pairs are mapped back to (y1, y2) through the quadratic
    z^2 - e1 z + e2.  Pairing ambiguity is settled by residual certification
    against every kappa.
    """
    if m != 2:
        raise ValueError("common_zero_2d handles m = 2 only")
    kappas = [tuple(k) for k in kappas]
    elim1, elim2 = eliminate(kappas, n)

    e1_roots = real_roots(elim1, (0, 2), tol=1e-14) if elim1 else None
    e2_roots = real_roots(elim2, (0, 1), tol=1e-14) if elim2 else None
    if e1_roots is not None and e2_roots is not None:
        pairs = [(u, v) for u in e1_roots for v in e2_roots]
    else:
        # some curves share a whole component; sweep the common factor of the
        # system in both directions (handles components like e1 = const)
        polys = [_elementary_poly(zonal_poly(k, 2, n)) for k in kappas]
        g = sympy.expand(polys[0].as_expr())
        for q in polys[1:]:
            g = sympy.gcd(g, sympy.expand(q.as_expr()))
        pairs = []
        for num in range(0, 33):
            s = sympy.Poly(g.subs(_E1, sympy.Rational(num, 16)), _E2, domain="QQ")
            if not s.is_zero and s.degree() >= 1:
                pairs.extend((num / 16, v)
                             for v in real_roots(_coeff_list(s), (0, 1), tol=1e-14))
        for num in range(0, 17):
            s = sympy.Poly(g.subs(_E2, sympy.Rational(num, 16)), _E1, domain="QQ")
            if not s.is_zero and s.degree() >= 1:
                pairs.extend((u, num / 16)
                             for u in real_roots(_coeff_list(s), (0, 2), tol=1e-14))

    certs = []
    seen = set()
    slack = 1e-9
    for e1, e2 in pairs:
        disc = e1 * e1 - 4 * e2
        if disc < -slack:
            continue
        root = np.sqrt(max(disc, 0.0))
        y = ((e1 - root) / 2, (e1 + root) / 2)
        if y[0] < -slack or y[1] > 1 + slack:
            continue
        y = (min(max(y[0], 0.0), 1.0), min(max(y[1], 0.0), 1.0))
        # the loci live in the full (y1, y2) square, so an off-diagonal zero
        # and its mirror image count separately
        orientations = [y] if abs(y[0] - y[1]) < 1e-9 else [y, (y[1], y[0])]
        for yy in orientations:
            cert = certify(kappas, 2, n, yy)
            if cert.max_residual() <= tol:
                key = (round(yy[0], 9), round(yy[1], 9))
                if key not in seen:
                    seen.add(key)
                    certs.append(cert)
    if not certs:
        raise NoZeroFound("no candidate met residual tolerance %g" % tol)
    return certs


# --- Algorithm 1: geodesic bisection on the group ----------------------------


def find_zero_on_group(f, L, R, eps=1e-10, max_iters=200, tols=DEFAULT):
    """Bisection along the geodesic between L and R for a sign change of f.

    Midpoint M = exp((log L + log R)/2).  Endpoints are auto-oriented so
    f(L) < 0 < f(R); a branch-cut failure of the log retries once with a
    slightly rotated endpoint.
    """
    L = np.asarray(L, dtype=complex)
    R = np.asarray(R, dtype=complex)
    fL, fR = f(L), f(R)
    if fL > 0 and fR < 0:
        L, R, fL, fR = R, L, fR, fL
    if not (fL < 0 < fR or fL == 0 or fR == 0):
        raise NoSignChange("f(L)=%g, f(R)=%g do not bracket zero" % (fL, fR))

    rng = np.random.default_rng(12345)
    perturbed = False
    M = L
    it = 0
    while np.linalg.norm(L - R) > eps and it < max_iters:
        it += 1
        try:
            M = mat_exp((mat_log(L, tols) + mat_log(R, tols)) / 2)
        except BranchCut:
            if perturbed:
                raise
            perturbed = True
            n = L.shape[0]
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            A = (z - z.conj().T) / 2
            A /= np.linalg.norm(A)
            R = mat_exp(1e-6 * A) @ R
            fR = f(R)
            continue
        if f(M) < 0:
            L = M
        else:
            R = M
    return M


# --- Algorithm 2: random local search over the U(4) factorization ------------

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def u2_factor(alpha, beta, gamma):
    da = np.diag([np.exp(-1j * alpha), np.exp(1j * alpha)])
    rot = np.array([[np.cos(beta), -np.sin(beta)], [np.sin(beta), np.cos(beta)]])
    dg = np.diag([np.exp(-1j * gamma), np.exp(1j * gamma)])
    return da @ rot @ dg


def u4_core(alpha, beta, gamma):
    H = (alpha * np.kron(_SX, _SX) + beta * np.kron(_SY, _SY)
         + gamma * np.kron(_SZ, _SZ))
    return mat_exp(-1j * H)


def kak_unitary(theta):
    """U(4) element from 16 angles: global phase, two local U(2) pairs and
    the entangling core."""
    t = np.asarray(theta, dtype=float)
    if t.shape != (16,):
        raise ValueError("expected 16 parameters")
    left = np.kron(u2_factor(t[1], t[2], t[3]), u2_factor(t[4], t[5], t[6]))
    right = np.kron(u2_factor(t[10], t[11], t[12]), u2_factor(t[13], t[14], t[15]))
    return np.exp(-1j * t[0]) * (left @ u4_core(t[7], t[8], t[9]) @ right)


def find_common_zero_random(objective, theta0, eps=1e-7, h=0.1,
                            seed=0, max_iters=100000):
    """Random local search: draw Delta-theta uniform over the parameter
    cube, propose theta + step * Delta-theta, accept on decrease, shrink the
    step scale by the acceptance ratio I(U')/I(U).

    The uniform draw is centered (range -pi..pi rather than 0..2pi): a
    one-sided draw can never decrease a coordinate by less than a full turn,
    so the search would freeze once the scale is below 2 pi.

    Returns (theta, residual); raises Stalled with the best-so-far attached
    when the iteration cap is reached first.
    """
    rng = np.random.default_rng(seed)
    theta = np.mod(np.asarray(theta0, dtype=float), 2 * np.pi)
    step = float(h)
    value = float(objective(kak_unitary(theta)))
    it = 0
    while value > eps and it < max_iters:
        it += 1
        delta = rng.uniform(0.0, 2 * np.pi, size=16) - np.pi
        cand = np.mod(theta + step * delta, 2 * np.pi)
        cval = float(objective(kak_unitary(cand)))
        if cval < value:
            step *= max(cval / value, 1e-3) if value > 0 else 1.0
            theta, value = cand, cval
    if value > eps:
        raise Stalled("no zero within %d iterations (best %g)" % (max_iters, value),
                      best_params=theta, best_value=value)
    return theta, value


def omega_from_certificate(cert: ZeroCertificate, n):
    """Realize a certificate as a multiset of coset representatives:
    a singleton for a common zero, the pair {omega, omega^-1} for a zero of
    the real part only."""
    from .designset import UnitaryMultiset

    omega = coset_point(sorted(cert.y), n)
    if cert.kind == "real-part-zero":
        return UnitaryMultiset.from_matrices(n, [omega, omega.conj().T])
    return UnitaryMultiset.from_matrices(n, [omega])
