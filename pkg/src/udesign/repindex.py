"""Indexing of U(n) irreducible representations.

Dominant weights, the box and diagonal weight families used to characterize
(strong) unitary t-designs, the spherical/nonspherical split for the pair
(U(n), U(m) x U(n-m)), and Haar frame-potential constants from the
hook-length formula.

Partitions are plain tuples of non-increasing positive integers with
trailing zeros stripped; dominant weights keep their full length n and may
have negative entries.
"""

import itertools
from dataclasses import dataclass
from functools import cache
from math import factorial


def normalize_partition(parts):
    """Strip trailing zeros and validate non-increasing order."""
    parts = tuple(int(p) for p in parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be non-increasing: %r" % (parts,))
    if parts and parts[-1] < 0:
        raise ValueError("partition parts must be nonnegative: %r" % (parts,))
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def partitions_of(k, max_parts=None, max_part=None):
    """All partitions of k, optionally bounded in length and part size."""
    if max_parts is None:
        max_parts = k
    if max_part is None:
        max_part = k
    if k == 0:
        return [()]
    result = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        if len(prefix) == max_parts:
            return
        for p in range(min(largest, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(k, max_part, [])
    return result


@dataclass(frozen=True, order=True)
class DominantWeight:
    """Non-increasing integer sequence of length n indexing a U(n) irrep."""

    entries: tuple

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError("weight entries must be non-increasing: %r" % (e,))
        object.__setattr__(self, "entries", e)

    @property
    def n(self):
        return len(self.entries)

    @property
    def plus(self):
        return sum(x for x in self.entries if x > 0)

    @property
    def minus(self):
        return -sum(x for x in self.entries if x < 0)

    def is_trivial(self):
        return all(x == 0 for x in self.entries)

    def to_json(self):
        return list(self.entries)


def enumerate_box(n, s, t):
    """All dominant weights of length n with plus-part <= s and minus-part <= t.

    Entries are bounded in [-t, s], so a direct product scan terminates.
    """
    if n < 1 or s < 0 or t < 0:
        raise ValueError("need n >= 1, s >= 0, t >= 0")
    out = set()
    for entries in itertools.combinations_with_replacement(range(s, -t - 1, -1), n):
        w = DominantWeight(entries)
        if w.plus <= s and w.minus <= t:
            out.add(w)
    return out


def enumerate_diag(n, t):
    """The weights with equal plus- and minus-parts bounded by t."""
    return {w for w in enumerate_box(n, t, t) if w.plus == w.minus}


def spherical_split(n, m, weights):
    """Split weights into spherical ones for (U(n), U(m) x U(n-m)) and the rest.

    A spherical weight has the symmetric form
    (k_1, ..., k_m, 0, ..., 0, -k_m, ..., -k_1); it is mapped to its positive
    half (k_1, ..., k_m) as a partition in at most m parts.
    """
    if not (1 <= m <= n / 2):
        raise ValueError("need 1 <= m <= n/2")
    spherical = {}
    nonspherical = set()
    for w in weights:
        if w.n != n:
            raise ValueError("weight length %d != n=%d" % (w.n, n))
        head = w.entries[:m]
        mid = w.entries[m:n - m]
        tail = w.entries[n - m:]
        if (head[-1] >= 0 if head else True) \
                and all(x == 0 for x in mid) \
                and tail == tuple(-x for x in reversed(head)):
            spherical[w] = normalize_partition(head)
        else:
            nonspherical.add(w)
    return spherical, nonspherical


def spherical_weight(kappa, n, m):
    """Inverse of spherical_split's map: partition -> full-length weight."""
    kappa = normalize_partition(kappa)
    if len(kappa) > m:
        raise ValueError("partition longer than m")
    head = kappa + (0,) * (m - len(kappa))
    return DominantWeight(head + (0,) * (n - 2 * m) + tuple(-x for x in reversed(head)))


@cache
def count_syt(parts):
    """Standard Young tableaux count by the hook-length formula."""
    parts = normalize_partition(parts)
    k = sum(parts)
    if k == 0:
        return 1
    conj = [sum(1 for p in parts if p > j) for j in range(parts[0])]
    hooks = 1
    for i, row in enumerate(parts):
        for j in range(row):
            hooks *= (row - j) + (conj[j] - i) - 1
    return factorial(k) // hooks


@cache
def haar_moment_constant(d, t):
    """Haar value of the order-t frame potential on U(d).

    Equals sum of squared SYT counts over partitions of t with at most d
    rows, hence t! when t <= d.
    """
    if d < 1 or t < 0:
        raise ValueError("need d >= 1, t >= 0")
    return sum(count_syt(p) ** 2 for p in partitions_of(t, max_parts=d))
