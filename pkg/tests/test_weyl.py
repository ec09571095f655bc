from math import factorial

import pytest

from endosign.errors import ResourceLimitError
from endosign.partitions import Partition, enumerate_partitions
from endosign.weyl import (WeylClassA, WeylClassB, brute_class_sizes,
                           brute_class_sizes_a, class_size_a, class_size_b,
                           conjugation_orbit_sizes, cuspidal_classes_b, order_b,
                           sgn_cd, u_cuspidal_classes_a)


def bclass(alpha, beta):
    return WeylClassB(Partition(alpha), Partition(beta))


def test_class_size_b_frozen_small_values():
    # derived by brute-force enumeration of the 8 signed permutations of {1,2}
    assert class_size_b(bclass([1], [1])) == 2
    assert class_size_b(bclass([], [2])) == 2
    assert class_size_b(bclass([1, 1, 1], [])) == 1  # identity element


def test_class_size_b_matches_brute_force():
    for N in range(5):
        brute = brute_class_sizes(N)
        for c, size in brute.items():
            assert class_size_b(c) == size
        assert sum(brute.values()) == order_b(N)
        # every labeled class occurs
        all_pairs = {(tuple(a), tuple(b))
                     for k in range(N + 1)
                     for a in enumerate_partitions(k)
                     for b in enumerate_partitions(N - k)}
        assert {(c.alpha.parts, c.beta.parts) for c in brute} == all_pairs


def test_class_sizes_by_conjugation_orbits():
    for N in range(4):
        assert conjugation_orbit_sizes(N) == brute_class_sizes(N)


def test_class_size_formula_total_beyond_oracle():
    # at N = 6 the formula must still resolve the full group order
    N = 6
    total = 0
    for k in range(N + 1):
        for a in enumerate_partitions(k):
            for b in enumerate_partitions(N - k):
                total += class_size_b(WeylClassB(a, b, N))
    assert total == order_b(N)


def test_class_size_a_values():
    assert class_size_a(WeylClassA(Partition([1, 1, 1]))) == 1
    assert class_size_a(WeylClassA(Partition([3]))) == 2
    assert class_size_a(WeylClassA(Partition([2, 1]))) == 3


def test_class_size_a_matches_brute_force():
    for d in range(7):
        brute = brute_class_sizes_a(d)
        for c, size in brute.items():
            assert class_size_a(c) == size
        assert sum(brute.values()) == factorial(d)


def test_sgn_cd():
    assert sgn_cd(bclass([2], [])) == 1
    assert sgn_cd(bclass([], [2, 1])) == 1
    assert sgn_cd(bclass([1], [3])) == -1


def test_sgn_cd_multiplicative_under_splits():
    # splitting beta into plus/minus sectors and f-scaled all-odd blocks
    # multiplies the sign character by (-1)^(block total)
    import itertools
    for total in range(0, 9):
        for beta in enumerate_partitions(total):
            for fs in ((), (1,), (2,)):
                nbins = 2 + len(fs)
                for assign in itertools.product(range(nbins), repeat=beta.length()):
                    bins = [[] for _ in range(nbins)]
                    for part, where in zip(beta.parts, assign):
                        bins[where].append(part)
                    inner_total = 0
                    ok = True
                    for f, raw in zip(fs, bins[2:]):
                        if any(p % f or (p // f) % 2 == 0 for p in raw):
                            ok = False
                            break
                        inner_total += sum(p // f for p in raw)
                    if not ok:
                        continue
                    lhs = sgn_cd(WeylClassB(Partition(), beta))
                    rhs = sgn_cd(WeylClassB(Partition(), Partition(bins[0]))) \
                        * sgn_cd(WeylClassB(Partition(), Partition(bins[1]))) \
                        * (-1) ** (inner_total % 2)
                    assert lhs == rhs


def test_cuspidal_classes():
    assert [c.to_json() for c in cuspidal_classes_b(0)] == [{"alpha": [], "beta": []}]
    assert [c.beta.to_json() for c in cuspidal_classes_b(2)] == [[2], [1, 1]]
    assert len(cuspidal_classes_b(3)) == 3
    with pytest.raises(ResourceLimitError):
        cuspidal_classes_b(21)


def test_u_cuspidal_classes():
    assert [c.pi.to_json() for c in u_cuspidal_classes_a(1)] == [[1]]
    assert [c.pi.to_json() for c in u_cuspidal_classes_a(3)] == [[3], [1, 1, 1]]
    assert [c.pi.to_json() for c in u_cuspidal_classes_a(4)] == [[3, 1], [1, 1, 1, 1]]


def test_class_validation():
    with pytest.raises(ValueError):
        WeylClassB(Partition([1]), Partition([1]), 3)
    with pytest.raises(ValueError):
        WeylClassA(Partition([2]), 3)
