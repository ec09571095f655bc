"""Conjugacy-class combinatorics of the hyperoctahedral group W_N and of S_d.

Classes of W_N (signed permutations of N letters) are labeled by pairs of
partitions (alpha, beta) with |alpha| + |beta| = N: alpha lists the lengths
of positive cycles, beta those of negative cycles.  Classes of S_d are
labeled by partitions of d.  Class sizes come from the standard centralizer
orders; a brute-force signed-permutation oracle validates them at small N.
"""

from __future__ import annotations

import itertools
from math import factorial

from .errors import ResourceLimitError
from .partitions import Partition, enumerate_partitions

CUSPIDAL_ENUM_CAP = 20
BRUTE_FORCE_CAP = 6


class WeylClassB:
    """Conjugacy class of W_N labeled by a pair of partitions (alpha, beta)."""

    __slots__ = ("alpha", "beta", "N")

    def __init__(self, alpha: Partition, beta: Partition, N: int | None = None):
        if not isinstance(alpha, Partition):
            alpha = Partition(alpha)
        if not isinstance(beta, Partition):
            beta = Partition(beta)
        total = alpha.size() + beta.size()
        if N is None:
            N = total
        elif N != total:
            raise ValueError(f"|alpha| + |beta| = {total} != N = {N}")
        self.alpha = alpha
        self.beta = beta
        self.N = N

    def is_cuspidal(self) -> bool:
        """True iff the class label is of the form (empty, beta)."""
        return self.alpha.length() == 0

    def __eq__(self, other):
        return (isinstance(other, WeylClassB)
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"WeylClassB(alpha={list(self.alpha)}, beta={list(self.beta)})"

    def to_json(self):
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}


class WeylClassA:
    """Conjugacy class of S_d labeled by a partition of d."""

    __slots__ = ("pi", "d")

    def __init__(self, pi: Partition, d: int | None = None):
        if not isinstance(pi, Partition):
            pi = Partition(pi)
        if d is None:
            d = pi.size()
        elif d != pi.size():
            raise ValueError(f"|pi| = {pi.size()} != d = {d}")
        self.pi = pi
        self.d = d

    def __eq__(self, other):
        return isinstance(other, WeylClassA) and self.pi == other.pi

    def __hash__(self):
        return hash(self.pi)

    def __repr__(self):
        return f"WeylClassA(pi={list(self.pi)})"

    def to_json(self):
        return {"pi": self.pi.to_json()}


def order_b(N: int) -> int:
    """Order of W_N: 2^N * N!."""
    return (1 << N) * factorial(N)


def _centralizer_factor(p: Partition, cycle_weight: int) -> int:
    z = 1
    for k, m in p.counter().items():
        z *= (cycle_weight * k) ** m * factorial(m)
    return z


def class_size_b(c: WeylClassB) -> int:
    """Size of the W_N class (alpha, beta).

    The centralizer order is prod_k (2k)^{m_k(alpha)} m_k(alpha)! times the
    same product over beta; validated against the signed-permutation oracle.
    """
    z = _centralizer_factor(c.alpha, 2) * _centralizer_factor(c.beta, 2)
    size, rem = divmod(order_b(c.N), z)
    if rem:
        raise ArithmeticError(f"centralizer order {z} does not divide |W_{c.N}|")
    return size


def class_size_a(c: WeylClassA) -> int:
    """Size of the S_d class pi: d! / prod_k k^{m_k} m_k!."""
    z = _centralizer_factor(c.pi, 1)
    size, rem = divmod(factorial(c.d), z)
    if rem:
        raise ArithmeticError(f"centralizer order {z} does not divide {c.d}!")
    return size


def sgn_cd(c: WeylClassB) -> int:
    """Sign character (-1)^(number of parts of beta) of the class (alpha, beta)."""
    return -1 if c.beta.length() % 2 else 1


def cuspidal_classes_b(N: int) -> list[WeylClassB]:
    """All cuspidal classes (empty, beta) of W_N, beta descending-lex."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > CUSPIDAL_ENUM_CAP:
        raise ResourceLimitError(f"cuspidal enumeration capped at {CUSPIDAL_ENUM_CAP}")
    return [WeylClassB(Partition(), beta, N) for beta in enumerate_partitions(N)]


def u_cuspidal_classes_a(d: int) -> list[WeylClassA]:
    """Classes of S_d whose partition has all parts odd."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d > CUSPIDAL_ENUM_CAP:
        raise ResourceLimitError(f"cuspidal enumeration capped at {CUSPIDAL_ENUM_CAP}")
    return [WeylClassA(p, d) for p in enumerate_partitions(d)
            if all(part % 2 for part in p)]


# ---------------------------------------------------------------------------
# Brute-force oracle: explicit signed permutations.
#
# An element w of W_N acts on basis vectors by w(e_i) = signs[i] * e_{perm[i]}.
# Composition (w1 * w2)(e_i) = signs2[i] * signs1[perm2[i]] * e_{perm1[perm2[i]]}.
# ---------------------------------------------------------------------------

SignedPerm = tuple[tuple[int, ...], tuple[int, ...]]


def signed_permutations(N: int):
    """All 2^N N! signed permutations of {0..N-1}."""
    if N > BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"signed-permutation enumeration capped at {BRUTE_FORCE_CAP}")
    for perm in itertools.permutations(range(N)):
        for signs in itertools.product((1, -1), repeat=N):
            yield perm, signs


def signed_mul(w1: SignedPerm, w2: SignedPerm) -> SignedPerm:
    perm1, signs1 = w1
    perm2, signs2 = w2
    n = len(perm1)
    perm = tuple(perm1[perm2[i]] for i in range(n))
    signs = tuple(signs2[i] * signs1[perm2[i]] for i in range(n))
    return perm, signs


def signed_inv(w: SignedPerm) -> SignedPerm:
    perm, signs = w
    n = len(perm)
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv), tuple(signs[inv[j]] for j in range(n))


def signed_cycle_type(w: SignedPerm) -> tuple[Partition, Partition]:
    """Cycle type (alpha, beta): positive cycles in alpha, negative in beta."""
    perm, signs = w
    n = len(perm)
    seen = [False] * n
    pos, neg = [], []
    for start in range(n):
        if seen[start]:
            continue
        length, sign, i = 0, 1, start
        while not seen[i]:
            seen[i] = True
            sign *= signs[i]
            length += 1
            i = perm[i]
        (pos if sign == 1 else neg).append(length)
    return Partition(pos), Partition(neg)


def brute_class_sizes(N: int) -> dict[WeylClassB, int]:
    """Class sizes of W_N by full enumeration and cycle-type extraction."""
    sizes: dict[WeylClassB, int] = {}
    for w in signed_permutations(N):
        alpha, beta = signed_cycle_type(w)
        c = WeylClassB(alpha, beta, N)
        sizes[c] = sizes.get(c, 0) + 1
    return sizes


def conjugation_orbit_sizes(N: int) -> dict[WeylClassB, int]:
    """Class sizes of W_N by explicit conjugation orbits (independent of cycle types)."""
    if N > 3:
        raise ResourceLimitError("conjugation-orbit oracle capped at N = 3")
    group = list(signed_permutations(N))
    remaining = set(group)
    sizes: dict[WeylClassB, int] = {}
    while remaining:
        w = next(iter(remaining))
        orbit = {signed_mul(signed_mul(h, w), signed_inv(h)) for h in group}
        remaining -= orbit
        sizes[WeylClassB(*signed_cycle_type(w), N)] = len(orbit)
    return sizes


def brute_class_sizes_a(d: int) -> dict[WeylClassA, int]:
    """Class sizes of S_d by full enumeration."""
    if d > 7:
        raise ResourceLimitError("symmetric-group enumeration capped at d = 7")
    sizes: dict[WeylClassA, int] = {}
    for perm in itertools.permutations(range(d)):
        seen = [False] * d
        cyc = []
        for start in range(d):
            if seen[start]:
                continue
            length, i = 0, start
            while not seen[i]:
                seen[i] = True
                length += 1
                i = perm[i]
            cyc.append(length)
        c = WeylClassA(Partition(cyc), d)
        sizes[c] = sizes.get(c, 0) + 1
    return sizes
