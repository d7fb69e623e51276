"""Multiset algebra on unitary groups, lazy design recipes, and the
inductive builder.

A design is either held concretely (UnitaryMultiset) or denoted lazily by a
DesignRecipe tree of products, unions, block embeddings and translations,
whose cardinality is tracked exactly as a big integer so that astronomically
large designs (e.g. 5^37 elements on U(4)) remain manipulable.
"""

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag

from .config import DEFAULT
from .errors import (CoverageGap, DimensionMismatch, Overflow, TooLarge,
                     UncertifiedOmega)
from .linalg import require_unitary
from .repindex import enumerate_box, normalize_partition, spherical_split

ENUMERATION_CAP = 10 ** 7


# --- concrete multisets -------------------------------------------------------


@dataclass
class UnitaryMultiset:
    """A finite multiset of unitary matrices on U(n)."""

    n: int
    elements: list                      # list of (matrix, multiplicity)
    design_notion: str = "strong"       # "strong" or "plain" (after phase shrink)

    @staticmethod
    def from_matrices(n, mats, mults=None, tol=None):
        tol = DEFAULT.structural if tol is None else tol
        mats = [np.asarray(g, dtype=complex) for g in mats]
        if mults is None:
            mults = [1] * len(mats)
        for g in mats:
            if g.shape != (n, n):
                raise DimensionMismatch("expected %d x %d matrices" % (n, n))
            require_unitary(g, tol=max(tol, 1e-8))
        if not mats or any(m < 1 for m in mults):
            raise ValueError("need at least one element, positive multiplicities")
        return UnitaryMultiset(n=n, elements=list(zip(mats, mults)))

    @property
    def cardinality(self):
        return sum(m for _, m in self.elements)

    def matrices(self):
        """Expanded stream honoring multiplicities."""
        for g, m in self.elements:
            for _ in range(m):
                yield g

    def to_json(self):
        return {
            "n": self.n,
            "design_notion": self.design_notion,
            "elements": [{"multiplicity": m,
                          "re": np.real(g).tolist(),
                          "im": np.imag(g).tolist()}
                         for g, m in self.elements],
        }

    @staticmethod
    def from_json(obj):
        els = [(np.array(e["re"], dtype=float) + 1j * np.array(e["im"], dtype=float),
                int(e["multiplicity"])) for e in obj["elements"]]
        return UnitaryMultiset(n=int(obj["n"]), elements=els,
                               design_notion=obj.get("design_notion", "strong"))


def mset_product(X, Y):
    """X . Y, all pairwise products, multiplicities multiply."""
    if X.n != Y.n:
        raise DimensionMismatch("product needs equal dimensions")
    els = [(gx @ gy, mx * my)
           for gx, mx in X.elements for gy, my in Y.elements]
    return UnitaryMultiset(n=X.n, elements=els)


def mset_union(X, Y):
    if X.n != Y.n:
        raise DimensionMismatch("union needs equal dimensions")
    return UnitaryMultiset(n=X.n, elements=list(X.elements) + list(Y.elements))


def mset_translate(g, X, side="left"):
    g = np.asarray(g, dtype=complex)
    if g.shape != (X.n, X.n):
        raise DimensionMismatch("translator has wrong dimension")
    if side == "left":
        els = [(g @ x, m) for x, m in X.elements]
    elif side == "right":
        els = [(x @ g, m) for x, m in X.elements]
    else:
        raise ValueError("side must be left or right")
    return UnitaryMultiset(n=X.n, elements=els)


def mset_inverse(X):
    return UnitaryMultiset(n=X.n,
                           elements=[(x.conj().T, m) for x, m in X.elements])


def mset_block(X, Y):
    """Block-diagonal embedding of U(m) x U(n-m) multisets into U(n)."""
    els = [(block_diag(gx, gy).astype(complex), mx * my)
           for gx, mx in X.elements for gy, my in Y.elements]
    return UnitaryMultiset(n=X.n + Y.n, elements=els)


def roots_of_unity_design(t):
    """The (t+1)-st roots of unity: a strong unitary t-design on U(1)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    mats = [np.array([[np.exp(2j * np.pi * k / (t + 1))]]) for k in range(t + 1)]
    return UnitaryMultiset.from_matrices(1, mats)


def group_closure(generators, tol=DEFAULT.structural, max_size=10 ** 5):
    """Breadth-first closure of the generated group with tolerance dedup."""
    gens = [np.asarray(g, dtype=complex) for g in generators]
    n = gens[0].shape[0]
    for g in gens:
        require_unitary(g)
    elements = [np.eye(n, dtype=complex)]
    flat = [elements[0].ravel()]
    frontier = [elements[0]]
    while frontier:
        new_frontier = []
        stack = np.stack(flat)
        for x in frontier:
            for g in gens:
                y = x @ g
                d = np.abs(stack - y.ravel()).max(axis=1)
                if d.min() > tol:
                    elements.append(y)
                    flat.append(y.ravel())
                    stack = np.stack(flat)
                    new_frontier.append(y)
                    if len(elements) > max_size:
                        raise Overflow("closure exceeded max_size=%d" % max_size)
        frontier = new_frontier
    return UnitaryMultiset.from_matrices(n, elements)


# --- lazy recipes -------------------------------------------------------------


@dataclass(frozen=True)
class DesignRecipe:
    """Lazy design: a tree of explicit multisets and algebraic combinations.

    kind is one of explicit, product, union, block, translate, inverse.
    """

    kind: str
    n: int
    cardinality: int
    children: tuple = ()
    mset: UnitaryMultiset = None        # explicit
    translator: np.ndarray = None       # translate
    side: str = "left"                  # translate

    # -- constructors

    @staticmethod
    def explicit(X):
        return DesignRecipe("explicit", X.n, X.cardinality, mset=X)

    @staticmethod
    def product(children):
        children = tuple(children)
        n = children[0].n
        if any(c.n != n for c in children):
            raise DimensionMismatch("product children must share a dimension")
        card = math.prod(c.cardinality for c in children)
        return DesignRecipe("product", n, card, children=children)

    @staticmethod
    def union(children):
        children = tuple(children)
        n = children[0].n
        if any(c.n != n for c in children):
            raise DimensionMismatch("union children must share a dimension")
        return DesignRecipe("union", n, sum(c.cardinality for c in children),
                            children=children)

    @staticmethod
    def block(left, right):
        return DesignRecipe("block", left.n + right.n,
                            left.cardinality * right.cardinality,
                            children=(left, right))

    @staticmethod
    def translate(g, child, side="left"):
        g = np.asarray(g, dtype=complex)
        if g.shape != (child.n, child.n):
            raise DimensionMismatch("translator has wrong dimension")
        return DesignRecipe("translate", child.n, child.cardinality,
                            children=(child,), translator=g, side=side)

    @staticmethod
    def inverse(child):
        return DesignRecipe("inverse", child.n, child.cardinality,
                            children=(child,))

    # -- evaluation

    def enumerate(self, force=False):
        """Stream all elements in lexicographic order over the recipe tree."""
        if self.cardinality > ENUMERATION_CAP and not force:
            raise TooLarge("refusing to enumerate %d elements" % self.cardinality)
        return self._iter()

    def _iter(self):
        if self.kind == "explicit":
            yield from self.mset.matrices()
        elif self.kind == "product":
            for parts in itertools.product(*[list(c._iter()) for c in self.children]):
                out = parts[0]
                for p in parts[1:]:
                    out = out @ p
                yield out
        elif self.kind == "union":
            for c in self.children:
                yield from c._iter()
        elif self.kind == "block":
            for a in self.children[0]._iter():
                for b in self.children[1]._iter():
                    yield block_diag(a, b).astype(complex)
        elif self.kind == "translate":
            for x in self.children[0]._iter():
                yield self.translator @ x if self.side == "left" else x @ self.translator
        elif self.kind == "inverse":
            for x in self.children[0]._iter():
                yield x.conj().T
        else:
            raise ValueError("unknown recipe kind %r" % self.kind)

    def to_multiset(self, force=False):
        mats = list(self.enumerate(force=force))
        return UnitaryMultiset(self.n, [(g, 1) for g in mats])

    def sample_one(self, rng):
        if self.kind == "explicit":
            mults = np.array([m for _, m in self.mset.elements], dtype=float)
            idx = rng.choice(len(mults), p=mults / mults.sum())
            return self.mset.elements[idx][0]
        if self.kind == "product":
            out = self.children[0].sample_one(rng)
            for c in self.children[1:]:
                out = out @ c.sample_one(rng)
            return out
        if self.kind == "union":
            weights = np.array([float(c.cardinality) for c in self.children])
            idx = rng.choice(len(weights), p=weights / weights.sum())
            return self.children[idx].sample_one(rng)
        if self.kind == "block":
            return block_diag(self.children[0].sample_one(rng),
                              self.children[1].sample_one(rng)).astype(complex)
        if self.kind == "translate":
            x = self.children[0].sample_one(rng)
            return self.translator @ x if self.side == "left" else x @ self.translator
        if self.kind == "inverse":
            return self.children[0].sample_one(rng).conj().T
        raise ValueError("unknown recipe kind %r" % self.kind)

    def sample_batch(self, count, rng):
        """count independent uniform draws as a (count, n, n) array."""
        if self.kind == "explicit":
            mults = np.array([m for _, m in self.mset.elements], dtype=float)
            idx = rng.choice(len(mults), size=count, p=mults / mults.sum())
            stack = np.stack([g for g, _ in self.mset.elements])
            return stack[idx]
        if self.kind == "product":
            out = self.children[0].sample_batch(count, rng)
            for c in self.children[1:]:
                out = np.einsum("nij,njk->nik", out, c.sample_batch(count, rng))
            return out
        if self.kind == "block":
            a = self.children[0].sample_batch(count, rng)
            b = self.children[1].sample_batch(count, rng)
            m = self.children[0].n
            out = np.zeros((count, self.n, self.n), dtype=complex)
            out[:, :m, :m] = a
            out[:, m:, m:] = b
            return out
        if self.kind == "translate":
            x = self.children[0].sample_batch(count, rng)
            if self.side == "left":
                return np.einsum("ij,njk->nik", self.translator, x)
            return np.einsum("nij,jk->nik", x, self.translator)
        if self.kind == "inverse":
            return self.children[0].sample_batch(count, rng).conj().transpose(0, 2, 1)
        if self.kind == "union":
            weights = np.array([float(c.cardinality) for c in self.children])
            idx = rng.choice(len(weights), size=count, p=weights / weights.sum())
            out = np.zeros((count, self.n, self.n), dtype=complex)
            for i, c in enumerate(self.children):
                mask = idx == i
                if mask.any():
                    out[mask] = c.sample_batch(int(mask.sum()), rng)
            return out
        raise ValueError("unknown recipe kind %r" % self.kind)

    def sample(self, count, seed=0):
        rng = np.random.default_rng(seed)
        return UnitaryMultiset(self.n,
                               [(self.sample_one(rng), 1) for _ in range(count)])

    # -- serialization

    def to_json(self):
        obj = {"kind": self.kind, "n": self.n, "cardinality": str(self.cardinality)}
        if self.kind == "explicit":
            obj["mset"] = self.mset.to_json()
        if self.children:
            obj["children"] = [c.to_json() for c in self.children]
        if self.translator is not None:
            obj["translator"] = {"re": np.real(self.translator).tolist(),
                                 "im": np.imag(self.translator).tolist()}
            obj["side"] = self.side
        return obj

    @staticmethod
    def from_json(obj):
        kind = obj["kind"]
        children = tuple(DesignRecipe.from_json(c) for c in obj.get("children", ()))
        if kind == "explicit":
            return DesignRecipe.explicit(UnitaryMultiset.from_json(obj["mset"]))
        if kind == "product":
            return DesignRecipe.product(children)
        if kind == "union":
            return DesignRecipe.union(children)
        if kind == "block":
            return DesignRecipe.block(*children)
        if kind == "translate":
            t = obj["translator"]
            g = np.array(t["re"], dtype=float) + 1j * np.array(t["im"], dtype=float)
            return DesignRecipe.translate(g, children[0], obj.get("side", "left"))
        if kind == "inverse":
            return DesignRecipe.inverse(children[0])
        raise ValueError("unknown recipe kind %r" % kind)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @staticmethod
    def load(path):
        with open(path) as fh:
            return DesignRecipe.from_json(json.load(fh))


# --- inductive construction ---------------------------------------------------


@dataclass(frozen=True)
class GroupingPlan:
    """Partition of the spherical kappa's into groups, each with a certified
    omega multiset killing its zonal functions."""

    entries: tuple   # of (frozenset of kappa, UnitaryMultiset, certificate)

    @staticmethod
    def make(entries):
        norm = tuple((frozenset(normalize_partition(k) for k in ups), omega, cert)
                     for ups, omega, cert in entries)
        return GroupingPlan(entries=norm)


def builtin_plan(n, m, t):
    """The shipped grouping plans for (n, m, t) = (2, 1, 4) and (4, 2, 4),
    reconstructed from the bundled 30-digit zero coordinates and re-certified
    on load."""
    from importlib.resources import files

    from .zerofind import certify, omega_from_certificate

    data = json.loads(files("udesign").joinpath("data/plans.json").read_text())
    key = "%d,%d,%d" % (n, m, t)
    if key not in data:
        raise KeyError("no built-in plan for (n, m, t) = (%d, %d, %d)" % (n, m, t))
    entries = []
    for grp in data[key]["groups"]:
        kappas = [normalize_partition(k) for k in grp["kappas"]]
        y = [float(v) for v in grp["y"]]
        cert = certify(kappas, m, n, y, kind=grp["kind"], y_precise=grp["y"])
        omega = omega_from_certificate(cert, n)
        entries.append((frozenset(kappas), omega, cert))
    return GroupingPlan.make(entries)


def build_inductive(n, m, t, Y_left, Y_right, plan,
                    tol=DEFAULT.structural):
    """The recipe Y (Omega_1 Y)(Omega_2 Y)...(Omega_l Y) with
    Y = BlockEmbed(Y_left, Y_right).

    Y_left/Y_right must be strong unitary t-designs on U(m)/U(n-m) (recipes
    or multisets); the plan must cover exactly the nontrivial spherical
    kappa's of the (n, t) weight box, each with a valid zero certificate.
    """
    Y_left = _as_recipe(Y_left)
    Y_right = _as_recipe(Y_right)
    if Y_left.n != m or Y_right.n != n - m:
        raise DimensionMismatch("factors must live on U(m) and U(n-m)")

    weights = enumerate_box(n, t, t)
    spherical, _ = spherical_split(n, m, weights)
    needed = {normalize_partition(k) for k in spherical.values()
              if normalize_partition(k)}
    covered = set()
    for ups, omega, cert in plan.entries:
        overlap = covered & ups
        if overlap:
            raise CoverageGap("kappa %s appears in two groups" % (sorted(overlap),))
        covered |= ups
    if covered != needed:
        raise CoverageGap("plan covers %s, spherical set is %s"
                          % (sorted(covered), sorted(needed)))

    from .zonal import zonal_eval, zonal_poly   # cycle-free: zonal is lower level

    factors = [DesignRecipe.block(Y_left, Y_right)]
    for ups, omega, cert in plan.entries:
        if cert is None:
            raise UncertifiedOmega("group %s has no certificate" % (sorted(ups),))
        if not ups <= {normalize_partition(k) for k in cert.kappa_list}:
            raise UncertifiedOmega("certificate does not cover %s" % (sorted(ups),))
        if cert.m != m or cert.n != n:
            raise UncertifiedOmega("certificate is for the wrong pair (m, n)")
        # re-validate: the omega-sum of each zonal function must vanish
        for kappa in sorted(ups):
            Z = zonal_poly(kappa, m, n)
            total = 0.0
            from .grassmann import principal_y
            for g, mult in omega.elements:
                total += mult * zonal_eval(Z, principal_y(g, m))
            if abs(total) > max(tol, 10 * cert.max_residual() + tol):
                raise UncertifiedOmega(
                    "omega-sum of Z_%s is %g" % (list(kappa), abs(total)))
        factors.append(DesignRecipe.explicit(omega))
        factors.append(DesignRecipe.block(Y_left, Y_right))
    return DesignRecipe.product(factors)


def _as_recipe(obj):
    return obj if isinstance(obj, DesignRecipe) else DesignRecipe.explicit(obj)


# --- shrinking ----------------------------------------------------------------


def _dedup_rounded(mats, mults, decimals=6):
    """Group matrices that agree to ~10^-decimals entrywise (elements of the
    constructed designs are either numerically identical or far apart)."""
    arr = np.stack([g.ravel() for g in mats])
    keyed = {}
    for i in range(arr.shape[0]):
        key = tuple(np.round(arr[i].view(float), decimals))
        if key in keyed:
            keyed[key][1] += mults[i]
        else:
            keyed[key] = [mats[i], mults[i]]
    return list(keyed.values())


def shrink_multiplicity(X, tol=DEFAULT.structural):
    """Deduplicate, divide all multiplicities by their gcd D, record D."""
    mats = [g for g, _ in X.elements]
    mults = [m for _, m in X.elements]
    grouped = _dedup_rounded(mats, mults)
    d = 0
    for _, m in grouped:
        d = math.gcd(d, m)
    out = UnitaryMultiset(X.n, [(g, m // d) for g, m in grouped],
                          design_notion=X.design_notion)
    out.divisor = d
    return out


def shrink_phase(X, t):
    """Collapse global-phase classes to one representative per class.

    Valid for plain (not strong) t-designs; the result is flagged plain.
    """
    canons = None
    groups = []
    for g, mult in X.elements:
        a = np.abs(g).ravel()
        # first entry within 1e-8 of the max magnitude: deterministic across
        # phase multiples even when several entries tie up to roundoff
        piv = int(np.argmax(a >= a.max() - 1e-8))
        p = g.ravel()[piv]
        canon = (g * (np.conj(p) / abs(p))).ravel()
        if canons is not None:
            d = np.abs(canons - canon).max(axis=1)
            j = int(d.argmin())
            if d[j] <= 1e-8:
                groups[j][1] += mult
                continue
        canons = canon[None, :] if canons is None else np.vstack([canons, canon])
        groups.append([g, mult])
    class_sizes = {m for _, m in groups}
    if len(class_sizes) == 1 and len(groups) < X.cardinality:
        out = UnitaryMultiset(X.n, [(g, 1) for g, _ in groups],
                              design_notion="plain")
        out.phase_classes = class_sizes.pop()
        return out
    out = UnitaryMultiset(X.n, list(X.elements), design_notion=X.design_notion)
    out.phase_classes = 1
    return out
