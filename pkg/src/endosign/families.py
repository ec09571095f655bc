"""Family combinatorics for the even orthogonal transfer computation.

For a pair (r', r'') of nonnegative integers of equal parity put
R = max, r = min.  Index slots 1..R carry residue entries (slots up to
R - r, valued in F_q^x) or square-class entries (the top r slots, valued
in {+1, -1}).  This module enumerates:

  * admissible assignment vectors gamma (pairwise-distinct residues on the
    even-indexed pair slots, plus a global sign condition tying the product
    of entry signs to the unit part of eta and the two class signs),
  * sign vectors e with their distinguished subgroup and kappa characters,
  * binary vectors u with the kappa character selecting the second block,
  * transversal pairings (L1, L2) of the pair slots,
  * families of two-element square/non-square transversals with the
    reassembly map used in the product-formula fiber count.

All weights and counts are exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exact import ExactValue
from .localfield import ResidueParam, SquareClass, legendre, sgn_minus_one
from .weyl import WeylClassB, sgn_cd


class SplitShape:
    """The slot bookkeeping attached to a pair (r', r'') of equal parity."""

    __slots__ = ("rp", "rpp", "R", "r", "t1", "t2", "jhat")

    def __init__(self, rp: int, rpp: int):
        if rp < 0 or rpp < 0:
            raise ValueError("r' and r'' must be nonnegative")
        if (rp - rpp) % 2:
            raise ValueError(f"r' = {rp} and r'' = {rpp} must have equal parity")
        self.rp = rp
        self.rpp = rpp
        self.R = max(rp, rpp)
        self.r = min(rp, rpp)
        self.t1 = (self.R + self.r) // 2
        self.t2 = (self.R - self.r) // 2
        self.jhat = tuple(j for j in range(2, self.R - self.r + 1, 2))

    @property
    def low_slots(self) -> range:
        """Residue-valued slots 1..R-r."""
        return range(1, self.R - self.r + 1)

    @property
    def high_slots(self) -> range:
        """Square-class-valued slots R-r+1..R."""
        return range(self.R - self.r + 1, self.R + 1)

    @property
    def b_switch(self) -> int:
        """0 when r' >= r'', 1 otherwise."""
        return 0 if self.rp >= self.rpp else 1

    def __eq__(self, other):
        return isinstance(other, SplitShape) and (self.rp, self.rpp) == (other.rp, other.rpp)

    def __hash__(self):
        return hash((self.rp, self.rpp))

    def __repr__(self):
        return f"SplitShape(rp={self.rp}, rpp={self.rpp})"


class GammaVector:
    """An assignment vector: residues on the low slots, signs on the high slots."""

    __slots__ = ("low", "high")

    def __init__(self, low: tuple[int, ...], high: tuple[int, ...]):
        self.low = tuple(low)
        self.high = tuple(high)
        if any(s not in (1, -1) for s in self.high):
            raise ValueError("high entries must be +-1")

    def sgn_slot(self, j: int, rp_field: ResidueParam) -> int:
        """Square-class sign of the entry at slot j (1-based)."""
        if j <= len(self.low):
            return legendre(self.low[j - 1], rp_field)
        return self.high[j - len(self.low) - 1]

    def sign_product(self, rp_field: ResidueParam) -> int:
        out = 1
        for v in self.low:
            out *= legendre(v, rp_field)
        for s in self.high:
            out *= s
        return out

    def __eq__(self, other):
        return isinstance(other, GammaVector) and (self.low, self.high) == (other.low, other.high)

    def __hash__(self):
        return hash((self.low, self.high))

    def __repr__(self):
        return f"GammaVector(low={self.low}, high={self.high})"

    def to_json(self):
        return {"low": list(self.low), "high": list(self.high)}


class EVector:
    """A sign vector e = (e_1, ..., e_R)."""

    __slots__ = ("signs",)

    def __init__(self, signs: tuple[int, ...]):
        if any(s not in (1, -1) for s in signs):
            raise ValueError("entries must be +-1")
        self.signs = tuple(signs)

    def at(self, j: int) -> int:
        return self.signs[j - 1]

    def in_distinguished_subgroup(self, shape: SplitShape) -> bool:
        """e_{j-1} = e_j for every even pair slot j strictly below R."""
        return all(self.at(j - 1) == self.at(j) for j in shape.jhat if j < shape.R)

    def __repr__(self):
        return f"EVector({self.signs})"


class UVector:
    """A vector in (Z/2)^t with a two-block split (K', K'') of the index set."""

    __slots__ = ("u", "k_first", "k_second")

    def __init__(self, u: tuple[int, ...], k_split: tuple[tuple[int, ...], tuple[int, ...]]):
        if any(x not in (0, 1) for x in u):
            raise ValueError("entries must be 0 or 1")
        k1, k2 = tuple(k_split[0]), tuple(k_split[1])
        if sorted(k1 + k2) != list(range(1, len(u) + 1)):
            raise ValueError("K' and K'' must partition {1..t}")
        self.u = tuple(u)
        self.k_first = k1
        self.k_second = k2

    def __repr__(self):
        return f"UVector(u={self.u}, K''={self.k_second})"


class LPair:
    """A transversal pairing: one slot of each even pair goes to L1, the other to L2."""

    __slots__ = ("l1", "l2")

    def __init__(self, l1: tuple[int, ...], l2: tuple[int, ...]):
        self.l1 = tuple(l1)
        self.l2 = tuple(l2)
        for j, (a, b) in enumerate(zip(self.l1, self.l2), start=1):
            if {a, b} != {2 * j - 1, 2 * j}:
                raise ValueError(f"pair {j} must split {{{2*j-1}, {2*j}}}, got ({a}, {b})")

    @property
    def set1(self) -> frozenset[int]:
        return frozenset(self.l1)

    @property
    def set2(self) -> frozenset[int]:
        return frozenset(self.l2)

    def __eq__(self, other):
        return isinstance(other, LPair) and self.l1 == other.l1

    def __hash__(self):
        return hash(self.l1)

    def __repr__(self):
        return f"LPair(l1={self.l1}, l2={self.l2})"

    def to_json(self):
        return {"L1": sorted(self.set1), "L2": sorted(self.set2)}


def enumerate_L(shape: SplitShape) -> list[LPair]:
    """All transversal pairings; the last pair is pinned when r = 0 < R."""
    t2 = shape.t2
    if t2 == 0:
        return [LPair((), ())]
    choices = []
    for j in range(1, t2 + 1):
        if shape.r == 0 and j == t2:
            choices.append(((2 * j, 2 * j - 1),))  # l2 pinned to the odd slot
        else:
            choices.append(((2 * j - 1, 2 * j), (2 * j, 2 * j - 1)))
    out = []
    for combo in itertools.product(*choices):
        out.append(LPair(tuple(c[0] for c in combo), tuple(c[1] for c in combo)))
    return out


def enumerate_gamma(shape: SplitShape, rp_field: ResidueParam, eta: SquareClass,
                    w1: WeylClassB, w2: WeylClassB) -> list[GammaVector]:
    """All admissible assignment vectors for (shape, eta, w', w'').

    Admissibility: on every even pair slot j the residues at j-1 and j
    differ, and the unit sign of eta times the product of all entry signs
    equals sgn_cd(w') * sgn_cd(w'').
    """
    if eta.val_parity != shape.rpp % 2:
        raise ValueError(
            f"val(eta) = {eta.val_parity} must match r'' = {shape.rpp} mod 2")
    target = sgn_cd(w1) * sgn_cd(w2) * eta.unit_sign
    nlow = shape.R - shape.r
    units = list(rp_field.units())
    out = []
    for low in itertools.product(units, repeat=nlow):
        if any(low[j - 2] == low[j - 1] for j in shape.jhat):
            continue
        low_sign = 1
        for v in low:
            low_sign *= legendre(v, rp_field)
        for high in itertools.product((1, -1), repeat=shape.r):
            hs = 1
            for s in high:
                hs *= s
            if low_sign * hs == target:
                out.append(GammaVector(low, high))
    return out


def gamma_weight(gamma: GammaVector, shape: SplitShape, rp_field: ResidueParam) -> ExactValue:
    """The weight sigma(gamma).

    Product over even pair slots j of (q - 2 + sgn(g_{j-1} g_j)) times
    sgn(g_{j-1} g_j (g_{j-1} - g_j)), times sgn(-g_j) over odd high slots.
    """
    q = rp_field.q
    value = 1
    for j in shape.jhat:
        a, b = gamma.low[j - 2], gamma.low[j - 1]
        s_ab = legendre(a * b, rp_field)
        value *= (q - 2 + s_ab) * legendre(a * b * (a - b), rp_field)
    m = sgn_minus_one(rp_field)
    for j in shape.high_slots:
        if j % 2:
            value *= m * gamma.sgn_slot(j, rp_field)
    return ExactValue(value, q=q)


def kappa_u(u: UVector) -> int:
    """(-1)^(sum of u over the second block K'')."""
    return -1 if sum(u.u[k - 1] for k in u.k_second) % 2 else 1


def kappa_zero(e: EVector, shape: SplitShape) -> int:
    """Product of e_{j-1} over even pair slots; defined on the distinguished subgroup."""
    if not e.in_distinguished_subgroup(shape):
        raise ValueError("kappa_zero is only defined on the distinguished subgroup")
    out = 1
    for j in shape.jhat:
        out *= e.at(j - 1)
    return out


def kappa_l2(e: EVector, pair: LPair) -> int:
    """Product of e over the L2 slots."""
    out = 1
    for slot in pair.l2:
        out *= e.at(slot)
    return out


def transversal_character_sum(e: EVector, shape: SplitShape) -> int:
    """Sum of kappa_l2(e) over all transversal pairings.

    Vanishes off the distinguished subgroup and equals |pairings| times
    kappa_zero(e) on it.
    """
    return sum(kappa_l2(e, pair) for pair in enumerate_L(shape))


def enumerate_e(shape: SplitShape) -> list[EVector]:
    """All sign vectors of length R."""
    return [EVector(signs) for signs in itertools.product((1, -1), repeat=shape.R)]


class ComponentGamma:
    """A component vector produced by a transversal split.

    Entries drawn from low slots keep their residue lift ('res', v); entries
    drawn from high slots are bare signs ('sign', s).  All weight formulas
    consume entries only through their square-class sign, but the lifts are
    needed to reassemble the parent vector.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)
        for tag, _ in self.entries:
            if tag not in ("res", "sign"):
                raise ValueError(f"unknown entry tag {tag!r}")

    def __len__(self):
        return len(self.entries)

    def sgn(self, i: int, rp_field: ResidueParam) -> int:
        tag, v = self.entries[i - 1]
        return legendre(v, rp_field) if tag == "res" else v

    def sign_product(self, rp_field: ResidueParam) -> int:
        out = 1
        for i in range(1, len(self.entries) + 1):
            out *= self.sgn(i, rp_field)
        return out

    def weight(self, rp_field: ResidueParam) -> ExactValue:
        """sigma for an all-high shape: product of sgn(-entry) over odd positions."""
        m = sgn_minus_one(rp_field)
        value = 1
        for i in range(1, len(self.entries) + 1, 2):
            value *= m * self.sgn(i, rp_field)
        return ExactValue(value, q=rp_field.q)

    def __eq__(self, other):
        return isinstance(other, ComponentGamma) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ComponentGamma({self.entries})"


def gamma_L_split(gamma: GammaVector, pair: LPair,
                  shape: SplitShape) -> tuple[ComponentGamma, ComponentGamma]:
    """Split gamma along (L1, L2) into components of lengths t1 and t2."""
    t1, t2 = shape.t1, shape.t2
    first = []
    for j in range(1, t2 + 1):
        first.append(("res", gamma.low[pair.l1[j - 1] - 1]))
    for j in range(t2 + 1, t1 + 1):
        first.append(("sign", gamma.high[j - t2 - 1]))
    second = [("res", gamma.low[pair.l2[j - 1] - 1]) for j in range(1, t2 + 1)]
    return ComponentGamma(first), ComponentGamma(second)


def eta_of_L2(gamma: GammaVector, pair: LPair, shape: SplitShape,
              w2: WeylClassB, rp_field: ResidueParam) -> SquareClass:
    """The square class eta[L2, gamma].

    Characterized by: valuation parity t2, and unit sign times the product
    of the L2-component signs equal to sgn_cd(w'').
    """
    comp2 = gamma_L_split(gamma, pair, shape)[1]
    unit = sgn_cd(w2) * comp2.sign_product(rp_field)
    return SquareClass(shape.t2 % 2, unit)


def eta_of_L1(gamma: GammaVector, pair: LPair, shape: SplitShape, w2: WeylClassB,
              eta: SquareClass, rp_field: ResidueParam) -> SquareClass:
    """The complementary class: eta[L1, gamma] * eta[L2, gamma] = eta."""
    return eta * eta_of_L2(gamma, pair, shape, w2, rp_field)


class TransversalFamily:
    """Per pair slot, disjoint two-element square/non-square transversals.

    slots[j-1] = (G1, G2) where each of G1, G2 is (square element,
    non-square element) and the four residues are pairwise distinct.
    """

    __slots__ = ("slots",)

    def __init__(self, slots):
        self.slots = tuple(slots)

    def __eq__(self, other):
        return isinstance(other, TransversalFamily) and self.slots == other.slots

    def __hash__(self):
        return hash(self.slots)

    def __repr__(self):
        return f"TransversalFamily({self.slots})"


def _slot_choices(rp_field: ResidueParam) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    squares = sorted(rp_field.squares())
    nonsquares = sorted(set(rp_field.units()) - set(squares))
    out = []
    for g1 in itertools.product(squares, nonsquares):
        for g2 in itertools.product(squares, nonsquares):
            if g1[0] != g2[0] and g1[1] != g2[1]:
                out.append((g1, g2))
    return out


def enumerate_transversal_families(shape: SplitShape,
                                   rp_field: ResidueParam) -> list[TransversalFamily]:
    """All families of disjoint transversal pairs over the pair slots."""
    choices = _slot_choices(rp_field)
    return [TransversalFamily(slots)
            for slots in itertools.product(choices, repeat=shape.t2)]


def count_transversal_families(shape: SplitShape, rp_field: ResidueParam) -> int:
    """|families| by per-slot enumeration (slots are independent by construction)."""
    return len(_slot_choices(rp_field)) ** shape.t2


def transversal_family_count_formula(shape: SplitShape, rp_field: ResidueParam) -> Fraction:
    """Closed form 2^(-4 t2) (q-1)^(2 t2) (q-3)^(2 t2)."""
    q = rp_field.q
    t2 = shape.t2
    return Fraction((q - 1) ** (2 * t2) * (q - 3) ** (2 * t2), 2 ** (4 * t2))


def family_selections(family: TransversalFamily, index: int, shape: SplitShape,
                      rp_field: ResidueParam, eta_j: SquareClass,
                      w_j: WeylClassB) -> list[ComponentGamma]:
    """Selections gamma_j from the family's side `index` (1 or 2).

    Side 1 draws from the G1 transversals on the pair slots plus free signs
    on the top slots; side 2 from the G2 transversals.  A selection is kept
    when unit(eta_j) times its sign product equals sgn_cd(w_j).
    """
    if index not in (1, 2):
        raise ValueError("index must be 1 or 2")
    per_slot = []
    for g1, g2 in family.slots:
        per_slot.append([("res", v) for v in (g1 if index == 1 else g2)])
    if index == 1:
        per_slot.extend([("sign", 1), ("sign", -1)] for _ in range(shape.t1 - shape.t2))
    target = sgn_cd(w_j)
    out = []
    for entries in itertools.product(*per_slot):
        comp = ComponentGamma(entries)
        if eta_j.unit_sign * comp.sign_product(rp_field) == target:
            out.append(comp)
    return out


def reassemble(comp1: ComponentGamma, comp2: ComponentGamma, pair: LPair,
               shape: SplitShape) -> GammaVector:
    """The reassembly map: component vectors and a pairing back to a full vector."""
    if len(comp1) != shape.t1 or len(comp2) != shape.t2:
        raise ValueError("component lengths do not match the shape")
    low = [0] * (shape.R - shape.r)
    high = []
    for j in range(1, shape.t2 + 1):
        tag1, v1 = comp1.entries[j - 1]
        tag2, v2 = comp2.entries[j - 1]
        if tag1 != "res" or tag2 != "res":
            raise ValueError("pair-slot entries must carry residue lifts")
        low[pair.l1[j - 1] - 1] = v1
        low[pair.l2[j - 1] - 1] = v2
    for j in range(shape.t2 + 1, shape.t1 + 1):
        tag, v = comp1.entries[j - 1]
        if tag != "sign":
            raise ValueError("top entries must be signs")
        high.append(v)
    return GammaVector(tuple(low), tuple(high))


def fiber_size_prediction(gamma: GammaVector, shape: SplitShape,
                          rp_field: ResidueParam) -> ExactValue:
    """Predicted fiber size: ((q-3)/4)^t2 * prod over even pair slots (q-2+sgn)."""
    q = rp_field.q
    value = Fraction(q - 3, 4) ** shape.t2
    for j in shape.jhat:
        value *= q - 2 + legendre(gamma.low[j - 2] * gamma.low[j - 1], rp_field)
    return ExactValue(value, q=q)


class FiberCheck:
    """Observed vs predicted fiber cardinality over one assignment vector."""

    __slots__ = ("observed", "predicted", "in_image")

    def __init__(self, observed: int, predicted: ExactValue, in_image: bool):
        self.observed = observed
        self.predicted = predicted
        self.in_image = in_image

    @property
    def ok(self) -> bool:
        return (self.in_image and self.predicted == ExactValue(self.observed)) or \
            (not self.in_image and self.observed == 0)

    def to_json(self):
        return {"observed": self.observed, "predicted": self.predicted.to_json(),
                "in_image": self.in_image}


def fiber_count_check(gamma: GammaVector, shape: SplitShape, rp_field: ResidueParam,
                      pair: LPair, eta: SquareClass, w2: WeylClassB,
                      eta1: SquareClass, eta2: SquareClass) -> FiberCheck:
    """Count reassembly preimages of gamma against the closed-form prediction.

    gamma lies in the image exactly when eta[L2, gamma] = eta2 (and then
    automatically eta[L1, gamma] = eta1).  The observed count multiplies,
    over pair slots, the number of transversal pairs containing the slot's
    residues, each counted by exhaustive enumeration.
    """
    in_image = (eta_of_L2(gamma, pair, shape, w2, rp_field) == eta2
                and eta * eta2 == eta1)
    if not in_image:
        return FiberCheck(0, fiber_size_prediction(gamma, shape, rp_field), False)
    choices = _slot_choices(rp_field)
    observed = 1
    for j in range(1, shape.t2 + 1):
        x = gamma.low[pair.l1[j - 1] - 1]
        y = gamma.low[pair.l2[j - 1] - 1]
        observed *= sum(1 for g1, g2 in choices if x in g1 and y in g2)
    return FiberCheck(observed, fiber_size_prediction(gamma, shape, rp_field), True)
