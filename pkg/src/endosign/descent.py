"""Semisimple-descent bookkeeping and its splitting enumerations.

An elliptic element factors as s * E(X); the centralizer of s is a product
of an odd orthogonal group (eigenvalue +1, size 2 n_+ + 1), an even one
(eigenvalue -1, size 2 n_-) and unitary groups indexed by Galois orbits of
the remaining eigenvalues, each carrying a block size d_i and an unramified
degree f_i.  This module records those invariants, the feasibility window
for a cuspidal-support quadruple, the integer splittings of the support
sizes, the compatible splittings of the class partitions, and the unique
splitting selected by an endoscopic size assignment.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple

from .constants import QuadrupleGamma, r_plus_minus
from .localfield import SquareClass
from .partitions import Partition, scale, union


class UnitaryBlock(NamedTuple):
    d: int
    f: int


class DescentDatum:
    """Invariants (n_+, eta_+, n_-, eta_-, blocks) of a descent centralizer."""

    __slots__ = ("n_plus", "eta_plus", "n_minus", "eta_minus", "blocks", "n")

    def __init__(self, n_plus: int, eta_plus: SquareClass, n_minus: int,
                 eta_minus: SquareClass, blocks: Iterable[tuple[int, int]], n: int):
        blocks = tuple(UnitaryBlock(*b) for b in blocks)
        if any(b.d < 1 or b.f < 1 for b in blocks):
            raise ValueError("unitary blocks need d >= 1 and f >= 1")
        if n_plus < 0 or n_minus < 0:
            raise ValueError("n_+ and n_- must be nonnegative")
        block_size = sum(b.d * b.f for b in blocks)
        if (2 * n_plus + 1) + 2 * n_minus + 2 * block_size != 2 * n + 1:
            raise ValueError(
                f"dimension identity violated: (2*{n_plus}+1) + 2*{n_minus} "
                f"+ 2*{block_size} != 2*{n}+1")
        d = sum(b.d for b in blocks)
        if (eta_plus.val_parity + eta_minus.val_parity) % 2:
            raise ValueError("val(eta_+) + val(eta_-) must be even")
        if eta_plus.unit_sign * eta_minus.unit_sign != (-1) ** (d % 2):
            raise ValueError("unit signs must satisfy sgn(eta_+) sgn(eta_-) = (-1)^d")
        if n_minus == 1 and eta_minus == SquareClass(0, 1):
            raise ValueError("ellipticity excludes (n_-, eta_-) = (1, trivial)")
        self.n_plus = n_plus
        self.eta_plus = eta_plus
        self.n_minus = n_minus
        self.eta_minus = eta_minus
        self.blocks = blocks
        self.n = n

    @property
    def d(self) -> int:
        return sum(b.d for b in self.blocks)

    def __repr__(self):
        return (f"DescentDatum(n_plus={self.n_plus}, eta_plus={self.eta_plus.name()!r}, "
                f"n_minus={self.n_minus}, eta_minus={self.eta_minus.name()!r}, "
                f"blocks={list(self.blocks)}, n={self.n})")

    def to_json(self):
        return {"n_plus": self.n_plus, "eta_plus": self.eta_plus.name(),
                "n_minus": self.n_minus, "eta_minus": self.eta_minus.name(),
                "blocks": [[b.d, b.f] for b in self.blocks], "n": self.n}


class SplitAssignment:
    """An endoscopic split of a descent datum, sector by sector."""

    __slots__ = ("n1_plus", "n2_plus", "n1_minus", "eta1_minus",
                 "n2_minus", "eta2_minus", "pairs")

    def __init__(self, dd: DescentDatum, n1_plus: int, n2_plus: int,
                 n1_minus: int, eta1_minus: SquareClass,
                 n2_minus: int, eta2_minus: SquareClass,
                 pairs: Iterable[tuple[int, int]]):
        pairs = tuple(tuple(p) for p in pairs)
        if n1_plus + n2_plus != dd.n_plus:
            raise ValueError("plus-sector sizes must sum to n_+")
        if n1_minus + n2_minus != dd.n_minus:
            raise ValueError("minus-sector sizes must sum to n_-")
        if eta1_minus * eta2_minus != dd.eta_minus:
            raise ValueError("minus-sector classes must multiply to eta_-")
        if len(pairs) != len(dd.blocks) or \
                any(a + b != blk.d for (a, b), blk in zip(pairs, dd.blocks)):
            raise ValueError("block splits must sum to the block sizes")
        if any(a < 0 or b < 0 for a, b in pairs):
            raise ValueError("block splits must be nonnegative")
        if min(n1_plus, n2_plus, n1_minus, n2_minus) < 0:
            raise ValueError("sector sizes must be nonnegative")
        self.n1_plus = n1_plus
        self.n2_plus = n2_plus
        self.n1_minus = n1_minus
        self.eta1_minus = eta1_minus
        self.n2_minus = n2_minus
        self.eta2_minus = eta2_minus
        self.pairs = pairs

    @property
    def d2(self) -> int:
        return sum(b for _, b in self.pairs)

    def __repr__(self):
        return (f"SplitAssignment(plus=({self.n1_plus},{self.n2_plus}), "
                f"minus=({self.n1_minus},{self.n2_minus}), pairs={list(self.pairs)})")


def sign_star_aggregate(components: Iterable[int], d: int, eta_minus: SquareClass) -> int:
    """Product of the per-sector group-form signs, twisted by (-1)^(d val(eta_-))."""
    out = -1 if (d * eta_minus.val_parity) % 2 else 1
    for s in components:
        if s not in (1, -1):
            raise ValueError("component signs must be +-1")
        out *= s
    return out


def delta_descent(component_deltas: Iterable[int], d2: int, eta_minus: SquareClass) -> int:
    """Descended transfer factor: (-1)^(d2 val(eta_-)) times the sector product."""
    out = -1 if (d2 * eta_minus.val_parity) % 2 else 1
    for s in component_deltas:
        if s not in (1, -1):
            raise ValueError("component factors must be +-1")
        out *= s
    return out


class Feasibility(NamedTuple):
    holds: bool
    N_plus: int | None
    N_minus: int | None
    b: int


def descent_feasibility(dd: DescentDatum, g: QuadrupleGamma) -> Feasibility:
    """Feasibility window for the quadruple g against a descent datum.

    Requires val(eta_-) = r'' mod 2 and the two sector sizes to dominate
    the squares of the shifted parameters; returns the residual sizes
    N_+ = n_+ - (r'_+^2 + r''^2 - 1)/2 and N_- = n_- - (r'_-^2 + r''^2)/2.
    """
    rp, rpp = g.rp, g.rpp
    r_plus, r_minus = r_plus_minus(rp, rpp)
    b = 0 if rpp > 0 or (rpp == 0 and rp % 2 == 0) else 1
    if dd.eta_minus.val_parity != rpp % 2:
        return Feasibility(False, None, None, b)
    if 2 * dd.n_plus + 1 < r_plus ** 2 + rpp ** 2 or \
            2 * dd.n_minus < r_minus ** 2 + rpp ** 2:
        return Feasibility(False, None, None, b)
    N_plus = dd.n_plus - (r_plus ** 2 + rpp ** 2 - 1) // 2
    N_minus = dd.n_minus - (r_minus ** 2 + rpp ** 2) // 2
    return Feasibility(True, N_plus, N_minus, b)


class SizeSplit(NamedTuple):
    """An integer splitting of the residual sizes across the two support slots."""

    Np_plus: int
    Np_minus: int
    Npp_plus: int
    Npp_minus: int
    pairs: tuple[tuple[int, int], ...]

    def to_json(self):
        return {"Np_plus": self.Np_plus, "Np_minus": self.Np_minus,
                "Npp_plus": self.Npp_plus, "Npp_minus": self.Npp_minus,
                "pairs": [list(p) for p in self.pairs]}


def enumerate_size_splits(dd: DescentDatum, g: QuadrupleGamma,
                          N_plus: int, N_minus: int) -> list[SizeSplit]:
    """All nonnegative solutions of the five size constraints.

    N'_+ + N''_+ = N_+, N'_- + N''_- = N_-, d'_i + d''_i = d_i, and the two
    support sums N'_+ + N'_- + sum d'_i f_i = N', N''_+ + N''_- + sum
    d''_i f_i = N''.
    """
    out = []
    block_ranges = [range(b.d + 1) for b in dd.blocks]
    for dps in itertools.product(*block_ranges):
        dprime_weight = sum(dp * b.f for dp, b in zip(dps, dd.blocks))
        for Np_plus in range(N_plus + 1):
            Np_minus = g.Np - Np_plus - dprime_weight
            if not 0 <= Np_minus <= N_minus:
                continue
            Npp_plus = N_plus - Np_plus
            Npp_minus = N_minus - Np_minus
            dpps_weight = sum((b.d - dp) * b.f for dp, b in zip(dps, dd.blocks))
            if Npp_plus + Npp_minus + dpps_weight != g.Npp:
                continue
            pairs = tuple((dp, b.d - dp) for dp, b in zip(dps, dd.blocks))
            out.append(SizeSplit(Np_plus, Np_minus, Npp_plus, Npp_minus, pairs))
    return out


class ClassSplit(NamedTuple):
    """A splitting of one class partition across the sectors."""

    beta_plus: Partition
    beta_minus: Partition
    beta_blocks: tuple[Partition, ...]

    def to_json(self):
        return {"plus": self.beta_plus.to_json(), "minus": self.beta_minus.to_json(),
                "blocks": [b.to_json() for b in self.beta_blocks]}


def _partition_splits(beta: Partition, sizes: tuple[int, int],
                      blocks: tuple[UnitaryBlock, ...],
                      block_targets: tuple[int, ...]) -> list[ClassSplit]:
    """All splittings beta = beta_+ u beta_- u union_i f_i * beta_i.

    beta_+ and beta_- must have the prescribed sizes; beta_i must be an
    all-odd partition of the prescribed block target, entering beta with
    parts scaled by f_i.
    """
    nbins = 2 + len(blocks)
    seen = set()
    out = []
    parts = beta.parts
    for assign in itertools.product(range(nbins), repeat=len(parts)):
        bins = [[] for _ in range(nbins)]
        for part, where in zip(parts, assign):
            bins[where].append(part)
        key = tuple(tuple(sorted(b)) for b in bins)
        if key in seen:
            continue
        seen.add(key)
        bplus, bminus = Partition(bins[0]), Partition(bins[1])
        if bplus.size() != sizes[0] or bminus.size() != sizes[1]:
            continue
        ok = True
        scaled = []
        for blk, target, raw in zip(blocks, block_targets, bins[2:]):
            if any(p % blk.f or (p // blk.f) % 2 == 0 for p in raw):
                ok = False
                break
            inner = Partition(p // blk.f for p in raw)
            if inner.size() != target:
                ok = False
                break
            scaled.append(inner)
        if ok:
            out.append(ClassSplit(bplus, bminus, tuple(scaled)))
    return out


def enumerate_class_splits(split: SizeSplit, beta_p: Partition, beta_pp: Partition,
                           blocks: tuple[UnitaryBlock, ...]) -> list[tuple[ClassSplit, ClassSplit]]:
    """Compatible splittings of both class partitions for one size split."""
    first = _partition_splits(beta_p, (split.Np_plus, split.Np_minus), blocks,
                              tuple(p[0] for p in split.pairs))
    second = _partition_splits(beta_pp, (split.Npp_plus, split.Npp_minus), blocks,
                               tuple(p[1] for p in split.pairs))
    return [(v1, v2) for v1 in first for v2 in second]


def assignment_sizes(g: QuadrupleGamma, split: SizeSplit) -> tuple[int, int, int, int]:
    """Sector sizes (n_{1,+}, n_{2,+}, n_{1,-}, n_{2,-}) from the size relations."""
    r_plus, r_minus = r_plus_minus(g.rp, g.rpp)
    rho = abs(g.rpp)
    n1_plus = ((r_plus + rho) ** 2 - 1) // 4 + split.Np_plus
    n2_plus = ((r_plus - rho) ** 2 - 1) // 4 + split.Npp_plus
    n1_minus = (r_minus + rho) ** 2 // 4 + split.Np_minus
    n2_minus = (r_minus - rho) ** 2 // 4 + split.Npp_minus
    return n1_plus, n2_plus, n1_minus, n2_minus


def solve_split_family(dd: DescentDatum, g: QuadrupleGamma,
                       assignment: SplitAssignment) -> SizeSplit | None:
    """The unique size split selected by an assignment, or None.

    Inverts the sector-size relations; requires r'' >= 0 (for r'' < 0 swap
    the assignment's two slots and negate r'').  Returns None when the
    parity condition on val(eta_{1,-}) or any inequality fails.
    """
    if g.rpp < 0:
        raise ValueError("solver expects r'' >= 0; swap the assignment slots first")
    rp, rpp = g.rp, g.rpp
    r_plus, r_minus = r_plus_minus(rp, rpp)
    if assignment.eta1_minus.val_parity != ((r_minus + rpp) // 2) % 2:
        return None
    if assignment.eta2_minus.val_parity != ((r_minus - rpp) // 2) % 2:
        return None
    if assignment.n1_plus < ((r_plus + rpp) ** 2 - 1) // 4 or \
            assignment.n2_plus < ((r_plus - rpp) ** 2 - 1) // 4 or \
            assignment.n1_minus < (r_minus + rpp) ** 2 // 4 or \
            assignment.n2_minus < (r_minus - rpp) ** 2 // 4:
        return None
    split = SizeSplit(
        assignment.n1_plus - ((r_plus + rpp) ** 2 - 1) // 4,
        assignment.n1_minus - (r_minus + rpp) ** 2 // 4,
        assignment.n2_plus - ((r_plus - rpp) ** 2 - 1) // 4,
        assignment.n2_minus - (r_minus - rpp) ** 2 // 4,
        assignment.pairs)
    feas = descent_feasibility(dd, g)
    if not feas.holds:
        return None
    if split not in enumerate_size_splits(dd, g, feas.N_plus, feas.N_minus):
        return None
    return split


def sector_size_sum(g: QuadrupleGamma, split: SizeSplit,
                    blocks: tuple[UnitaryBlock, ...]) -> tuple[int, int]:
    """(n1, n2) obtained by summing the sector sizes of a split.

    Must reproduce the sizes of the quadruple splitting; checked by the
    descent suite against split_sizes.
    """
    n1_plus, n2_plus, n1_minus, n2_minus = assignment_sizes(g, split)
    n1 = n1_plus + n1_minus + sum(p[0] * b.f for p, b in zip(split.pairs, blocks))
    n2 = n2_plus + n2_minus + sum(p[1] * b.f for p, b in zip(split.pairs, blocks))
    return n1, n2


def sector_label_sets(rp: int, rpp: int) -> tuple[frozenset[int], frozenset[int]]:
    """The candidate label sets {(r'_+ + r'' +- 1)/2} and {(r'_- + r'' +- 1)/2}."""
    r_plus, r_minus = r_plus_minus(rp, rpp)
    return (frozenset(((r_plus + rpp + 1) // 2, (r_plus + rpp - 1) // 2)),
            frozenset(((r_minus + rpp + 1) // 2, (r_minus + rpp - 1) // 2)))


def check_v_sign_relation(beta: Partition, split: ClassSplit) -> bool:
    """(-1)^len(beta) = (-1)^len(beta_+) (-1)^len(beta_-) (-1)^(sum |beta_i|)."""
    lhs = (-1) ** (beta.length() % 2)
    rhs = (-1) ** ((split.beta_plus.length() + split.beta_minus.length()
                    + sum(b.size() for b in split.beta_blocks)) % 2)
    return lhs == rhs


def recombine_class_split(split: ClassSplit, blocks: tuple[UnitaryBlock, ...]) -> Partition:
    """Reassemble beta from a class split (sanity inverse)."""
    out = union(split.beta_plus, split.beta_minus)
    for inner, blk in zip(split.beta_blocks, blocks):
        out = union(out, scale(inner, blk.f))
    return out
