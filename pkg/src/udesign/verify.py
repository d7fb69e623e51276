"""Design verification against the Haar measure.

Three modes, by affordability: exact pairwise frame potentials for
enumerable multisets, probe-vector checks factorized over recipe structure
for products of enumerable children, and Monte Carlo sampling for designs
too large for either.
"""

import itertools
import math

import numpy as np

from .config import DEFAULT
from .errors import ChildTooLarge, TooLarge
from .linalg import ProbeVector, tensor_moment_apply
from .repindex import haar_moment_constant
from .report import VerificationReport

PAIR_GUARD = 10 ** 8


# --- frame potentials ---------------------------------------------------------


def frame_potential(X, r, s):
    """(value, haar_target) for the generalized frame potential
    (1/|X|^2) sum_{U,V} tr(U^dag V)^r conj(tr(U^dag V))^s.

    The Haar target is delta_{rs} * haar_moment_constant(n, r); the value
    is >= the target (minimum principle) with equality iff X is a design
    for Hom(r, s).
    """
    mats = [g for g, _ in X.elements]
    weights = np.array([m for _, m in X.elements], dtype=float)
    if len(mats) ** 2 > PAIR_GUARD:
        raise TooLarge("%d^2 pairs exceed the pairwise guard" % len(mats))
    A = np.stack([g.ravel() for g in mats])
    T = A.conj() @ A.T                  # T[i, j] = tr(U_i^dag U_j)
    kernel = T ** r * np.conj(T) ** s
    total = weights @ kernel @ weights
    card = weights.sum()
    value = total / card ** 2
    target = float(haar_moment_constant(X.n, r)) if r == s else 0.0
    return float(value.real), target


def frame_potential_check(X, t, tol=DEFAULT.verification):
    """VerificationReport over all 0 <= r, s <= t from one Gram matrix.

    Residual per (r, s) is |value - haar_target|.
    """
    mats = [g for g, _ in X.elements]
    weights = np.array([m for _, m in X.elements], dtype=float)
    if len(mats) ** 2 > PAIR_GUARD:
        raise TooLarge("%d^2 pairs exceed the pairwise guard" % len(mats))
    A = np.stack([g.ravel() for g in mats])
    T = A.conj() @ A.T
    card = weights.sum()
    residuals, targets = {}, {}
    for r in range(t + 1):
        for s in range(t + 1):
            kernel = T ** r * np.conj(T) ** s
            value = (weights @ kernel @ weights).real / card ** 2
            target = float(haar_moment_constant(X.n, r)) if r == s else 0.0
            key = "r%d_s%d" % (r, s)
            residuals[key] = abs(value - target)
            targets[key] = target
    return VerificationReport.from_residuals(
        "exact-enumerated", residuals, tol, targets=targets,
        counts={"elements": len(mats), "cardinality": int(card)})


# --- Weingarten calculus ------------------------------------------------------


def _cycle_count(perm):
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


class WeingartenTable:
    """Gram matrix d^{#cycles(pi sigma^-1)} over S_t and its pseudo-inverse."""

    def __init__(self, d, t, cutoff=DEFAULT.pinv_cutoff):
        self.d = d
        self.t = t
        self.perms = list(itertools.permutations(range(t)))
        k = len(self.perms)
        gram = np.empty((k, k))
        for a, p in enumerate(self.perms):
            for b, q in enumerate(self.perms):
                qinv = [0] * t
                for i, v in enumerate(q):
                    qinv[v] = i
                comp = tuple(qinv[p[i]] for i in range(t))
                gram[a, b] = float(d) ** _cycle_count(comp)
        self.gram = gram
        vals, vecs = np.linalg.eigh(gram)
        inv = np.where(np.abs(vals) > cutoff * np.abs(vals).max(), 1.0 / vals, 0.0)
        self.wg = (vecs * inv) @ vecs.T

    def rank(self):
        vals = np.linalg.eigvalsh(self.gram)
        return int(np.sum(np.abs(vals) > 1e-8 * np.abs(vals).max()))


def weingarten(d, t):
    if t > 5:
        raise ValueError("t <= 5 supported")
    return WeingartenTable(d, t)


def _perm_vectors(d, t):
    """Stack of |P_pi> over S_t: <i k|P_pi> = prod_a delta_{i_a, k_{pi(a)}}."""
    perms = list(itertools.permutations(range(t)))
    out = np.zeros((len(perms), d ** (2 * t)))
    strides = [d ** (2 * t - 1 - a) for a in range(2 * t)]
    for a, p in enumerate(perms):
        pinv = [0] * t
        for i, v in enumerate(p):
            pinv[v] = i
        for i_vec in itertools.product(range(d), repeat=t):
            k_vec = tuple(i_vec[pinv[b]] for b in range(t))
            flat = sum(v * strides[j] for j, v in enumerate(i_vec + k_vec))
            out[a, flat] = 1.0
    return out


def haar_moment_apply(d, r, s, v: ProbeVector) -> ProbeVector:
    """Apply the Haar moment operator int U^(x)r (x) conj(U)^(x)s dU.

    Zero for r != s (global-phase invariance of the Haar measure); for
    r = s = t, the Weingarten projector sum_{pi,sigma} wg[pi,sigma]
    |P_pi><P_sigma|.
    """
    if v.n != d or v.r != r or v.s != s:
        raise ValueError("probe inconsistent with (d, r, s)")
    if r != s:
        return ProbeVector(d, r, s, np.zeros(d ** (r + s), dtype=complex))
    t = r
    if t == 0:
        return ProbeVector(d, 0, 0, v.data.copy())
    table = weingarten(d, t)
    P = _perm_vectors(d, t)
    coeffs = P @ v.data
    return ProbeVector(d, r, s, P.T @ (table.wg @ coeffs))


# --- probe-factorized check ---------------------------------------------------


def _embed(g, offset, n_total):
    out = np.eye(n_total, dtype=complex)
    k = g.shape[0]
    out[offset:offset + k, offset:offset + k] = g
    return out


def _moment_apply(node, v, offset, n_total):
    """v <- M_node v with node's elements embedded at a block offset.

    Products compose right-to-left (M_{X.Y} = M_X M_Y on tensor space);
    block embeddings split as diag(g, I) . diag(I, h).
    """
    kind = node.kind
    if kind == "explicit":
        if node.cardinality > 10 ** 7:
            raise ChildTooLarge("explicit child of size %d" % node.cardinality)
        acc = np.zeros_like(v.data)
        total = 0
        for g, mult in node.mset.elements:
            gg = _embed(g, offset, n_total) if g.shape[0] != n_total else g
            acc += mult * tensor_moment_apply(gg, v.r, v.s, v).data
            total += mult
        return ProbeVector(v.n, v.r, v.s, acc / total)
    if kind == "product":
        for child in reversed(node.children):
            v = _moment_apply(child, v, offset, n_total)
        return v
    if kind == "block":
        left, right = node.children
        v = _moment_apply(right, v, offset + left.n, n_total)
        return _moment_apply(left, v, offset, n_total)
    if kind == "translate":
        g = _embed(node.translator, offset, n_total) \
            if node.translator.shape[0] != n_total else node.translator
        if node.side == "left":
            v = _moment_apply(node.children[0], v, offset, n_total)
            return tensor_moment_apply(g, v.r, v.s, v)
        v = tensor_moment_apply(g, v.r, v.s, v)
        return _moment_apply(node.children[0], v, offset, n_total)
    if kind == "inverse":
        from .designset import mset_inverse
        inner = node.children[0]
        if inner.kind != "explicit":
            raise ChildTooLarge("inverse of a non-explicit node is not factorizable")
        from .designset import DesignRecipe
        return _moment_apply(DesignRecipe.explicit(mset_inverse(inner.mset)),
                             v, offset, n_total)
    if kind == "union":
        total = node.cardinality
        acc = np.zeros_like(v.data)
        for child in node.children:
            acc += (child.cardinality / total) * \
                _moment_apply(child, v, offset, n_total).data
        return ProbeVector(v.n, v.r, v.s, acc)
    raise ValueError("unknown recipe kind %r" % kind)


def probe_check(recipe, r, s, n_probes=8, tol=DEFAULT.verification, seed=0):
    """Compare M_X v against the Haar moment on random Gaussian probes.

    Relative residual ||M_X v - M_Haar v|| / ||v|| per probe; the report
    carries the max.
    """
    rng = np.random.default_rng(seed)
    n = recipe.n
    residuals = {}
    worst = 0.0
    for k in range(n_probes):
        v = ProbeVector.random(n, r, s, rng)
        got = _moment_apply(recipe, v, 0, n)
        want = haar_moment_apply(n, r, s, v)
        res = float(np.linalg.norm(got.data - want.data) / v.norm())
        residuals["probe%d_r%d_s%d" % (k, r, s)] = res
        worst = max(worst, res)
    return VerificationReport.from_residuals(
        "probe-factorized", residuals, tol,
        counts={"probes": n_probes, "r": r, "s": s})


# --- sampled check ------------------------------------------------------------


def sampled_traces(recipe, n_samples, seed=0, chunk=100000):
    """tr(U^dag V) for n_samples independently sampled pairs."""
    rng = np.random.default_rng(seed)
    out = np.empty(n_samples, dtype=complex)
    done = 0
    while done < n_samples:
        c = min(chunk, n_samples - done)
        U = recipe.sample_batch(c, rng)
        V = recipe.sample_batch(c, rng)
        out[done:done + c] = np.einsum("nij,nij->n", U.conj(), V)
        done += c
    return out


def sampled_check_many(recipe, rs_list, n_samples, seed=0, traces=None):
    """Monte Carlo frame-potential estimates for several (r, s) at once,
    reusing one set of sampled pair traces; pass iff every |z| <= 4."""
    if traces is None:
        traces = sampled_traces(recipe, n_samples, seed)
    residuals = {}
    detail = {}
    for r, s in rs_list:
        terms = traces ** r * np.conj(traces) ** s
        est = float(np.mean(terms.real))
        se = float(np.std(terms.real, ddof=1) / math.sqrt(len(terms)))
        target = float(haar_moment_constant(recipe.n, r)) if r == s else 0.0
        z = (est - target) / se if se > 0 else 0.0
        residuals["r%d_s%d" % (r, s)] = abs(z)
        detail["r%d_s%d" % (r, s)] = {"estimate": est, "stderr": se,
                                      "target": target, "z": z}
    report = VerificationReport.from_residuals(
        "sampled", residuals, 4.0,
        counts={"samples": len(traces)}, detail=detail)
    return report


def sampled_check(recipe, r, s, n_samples, seed=0):
    return sampled_check_many(recipe, [(r, s)], n_samples, seed)
