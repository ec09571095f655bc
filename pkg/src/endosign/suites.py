"""Batch verification sweeps and enumeration reports.

Each suite sweeps one family of identities exhaustively over a desk-scale
window and returns a VerificationReport; the CLI exposes them as
subcommands.  Suites re-exported from the constants module live there
because they are themselves operations on the named constants.
"""

from __future__ import annotations

import itertools
import time
from math import factorial

from . import descent as dsc
from . import families as fam
from . import params as par
from .constants import (QuadrupleGamma, W_MINUS, W_PLUS, factorwise_transfer_check,
                        split_sizes, verify_aux_identities, verify_product_identity,
                        verify_sign_chain, verify_split)
from .errors import ResourceLimitError
from .exact import ExactValue
from .localfield import ResidueParam, SquareClass
from .partitions import Partition, enumerate_partitions, enumerate_symplectic
from .report import VerificationReport
from .weyl import (WeylClassA, WeylClassB, brute_class_sizes, brute_class_sizes_a,
                   class_size_a, class_size_b, conjugation_orbit_sizes, order_b)

__all__ = [
    "verify_aux_identities", "verify_split", "verify_kappa_sums", "verify_counting",
    "verify_product_identity", "verify_sign_chain", "verify_transfer_factorization",
    "verify_weyl_classes", "verify_descent", "verify_params",
    "enumerate_params_report", "enumerate_descent_report",
]

KAPPA_RR_CAP = 10
COUNTING_T2_CAP = 3
TRANSFER_RR_CAP = 6
WEYL_N_CAP = 5
ENUM_N_CAP = 8


def _sign_witness(s: int) -> WeylClassB:
    return W_PLUS if s == 1 else W_MINUS


def verify_kappa_sums(max_rr: int = 6) -> VerificationReport:
    """Transversal character sums against the distinguished-subgroup law.

    For every shape with R - r up to max_rr (both the r = 0 and r > 0
    regimes) and every sign vector e: the sum over pairings of kappa_l2(e)
    is 0 off the distinguished subgroup and |pairings| * kappa_zero(e) on it.
    """
    if max_rr > KAPPA_RR_CAP:
        raise ResourceLimitError(f"max_rr capped at {KAPPA_RR_CAP}")
    start = time.monotonic()
    report = VerificationReport("kappasum", {"max_rr": max_rr})
    for rr in range(0, max_rr + 1, 2):
        for r in (0, 1, 2):
            shape = fam.SplitShape(rr + r, r)
            pairs = fam.enumerate_L(shape)
            for e in fam.enumerate_e(shape):
                report.points_checked += 1
                total = fam.transversal_character_sum(e, shape)
                if e.in_distinguished_subgroup(shape):
                    expected = len(pairs) * fam.kappa_zero(e, shape)
                else:
                    expected = 0
                if total != expected:
                    report.record_failure(rr=rr, r=r, e=list(e.signs),
                                          lhs=total, rhs=expected)
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def _counting_shapes(t2: int, q: int):
    shapes = [(2 * t2, 0), (2 * t2 + 1, 1)]
    if q == 5 and t2 >= 1:
        shapes += [(0, 2 * t2), (1, 2 * t2 + 1)]
    return [s for s in shapes if s != (0, 0) or t2 == 0]


def verify_counting(qs=(5, 7, 13), t2max: int = 2) -> VerificationReport:
    """Fiber sizes and family counts of the transversal reassembly map.

    Checks, per field and shape: (a) the family count against its closed
    form, slot choices enumerated exhaustively; (b) the reassembly tally
    over all families and admissible selections lands exactly on the
    predicted image, with every fiber of the predicted size, agreeing with
    the per-vector counting operation.  Includes the worked small values
    (family count 4 at q = 5 with one pair slot; fibers of sizes 2 and 1).
    """
    if t2max > COUNTING_T2_CAP:
        raise ResourceLimitError(f"t2max capped at {COUNTING_T2_CAP}")
    start = time.monotonic()
    report = VerificationReport("counting", {"q": list(qs), "t2max": t2max})
    worked_family_count = None
    worked_fiber_sizes: set[int] = set()
    for q in qs:
        field = ResidueParam(q)
        fiber_cap = 1 if q == 13 else t2max
        for t2 in range(t2max + 1):
            shape0 = fam.SplitShape(2 * t2, 0)
            counted = fam.count_transversal_families(shape0, field)
            formula = fam.transversal_family_count_formula(shape0, field)
            report.points_checked += 1
            if counted != formula:
                report.record_failure(q=q, t2=t2, identity="family_count",
                                      lhs=counted, rhs=str(formula))
            if q == 5 and t2 == 1:
                worked_family_count = counted
            if t2 > fiber_cap:
                continue
            for rp, rpp in _counting_shapes(t2, q):
                shape = fam.SplitShape(rp, rpp)
                families = fam.enumerate_transversal_families(shape, field)
                # selections keyed by their sign product; a selection for
                # (eta_j, w_j) is the bucket at sgn_cd(w_j) * unit(eta_j)
                tables = []
                for family in families:
                    per_side = []
                    for idx in (1, 2):
                        trivial = SquareClass((shape.t1 if idx == 1 else shape.t2) % 2, 1)
                        per_side.append({
                            1: fam.family_selections(family, idx, shape, field,
                                                     trivial, W_PLUS),
                            -1: fam.family_selections(family, idx, shape, field,
                                                      trivial, W_MINUS),
                        })
                    tables.append(per_side)
                for s1, s2, ue, ue2 in itertools.product((1, -1), repeat=4):
                    w1, w2 = _sign_witness(s1), _sign_witness(s2)
                    eta = SquareClass(rpp % 2, ue)
                    eta2 = SquareClass(t2 % 2, ue2)
                    eta1 = eta * eta2
                    gammas = fam.enumerate_gamma(shape, field, eta, w1, w2)
                    for pair in fam.enumerate_L(shape):
                        expected = {g for g in gammas
                                    if fam.eta_of_L2(g, pair, shape, w2, field) == eta2}
                        tally: dict[fam.GammaVector, int] = {}
                        tau1 = s1 * eta1.unit_sign
                        tau2 = s2 * eta2.unit_sign
                        for fi in range(len(families)):
                            for c1 in tables[fi][0][tau1]:
                                for c2 in tables[fi][1][tau2]:
                                    gv = fam.reassemble(c1, c2, pair, shape)
                                    tally[gv] = tally.get(gv, 0) + 1
                        report.points_checked += 1
                        if set(tally) != expected:
                            report.record_failure(q=q, rp=rp, rpp=rpp, scd1=s1, scd2=s2,
                                                  eta=eta.name(), eta2=eta2.name(),
                                                  identity="image",
                                                  extra=len(set(tally) - expected),
                                                  missing=len(expected - set(tally)))
                            continue
                        for g in gammas:
                            check = fam.fiber_count_check(g, shape, field, pair,
                                                          eta, w2, eta1, eta2)
                            observed = tally.get(g, 0)
                            if check.observed != observed or \
                                    (g in expected and not check.ok) or \
                                    (g in expected and
                                     ExactValue(observed) != check.predicted):
                                report.record_failure(
                                    q=q, rp=rp, rpp=rpp, eta=eta.name(),
                                    eta2=eta2.name(), gamma=g.to_json(),
                                    identity="fiber", observed=observed,
                                    slotwise=check.observed,
                                    predicted=check.predicted.to_json())
                            elif q == 5 and t2 == 1 and g in expected:
                                worked_fiber_sizes.add(observed)
    if 5 in qs and t2max >= 1:
        report.points_checked += 1
        if worked_family_count != 4:
            report.record_failure(identity="worked_family_count",
                                  lhs=worked_family_count, rhs=4)
        report.points_checked += 1
        if worked_fiber_sizes != {1, 2}:
            report.record_failure(identity="worked_fibers",
                                  lhs=sorted(worked_fiber_sizes), rhs=[1, 2])
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def _transfer_shapes(rrmax: int, q: int):
    for rr in range(0, rrmax + 1, 2):
        rs = (0, 1, 2) if rr <= 2 else ((0, 1) if q == 5 else (0,))
        for r in rs:
            yield rr + r, r
            if rr:
                yield r, rr + r


def verify_transfer_factorization(qs=(5, 7), rrmax: int = 4) -> VerificationReport:
    """Per-factor versus closed-form evaluation of the descent transfer factor.

    Exhaustive over admissible assignment vectors, all sign vectors, all
    block vectors for small two-block class data, and all pairings, in both
    branch-switch regimes.
    """
    if rrmax > TRANSFER_RR_CAP:
        raise ResourceLimitError(f"rrmax capped at {TRANSFER_RR_CAP}")
    start = time.monotonic()
    report = VerificationReport("transfer", {"q": list(qs), "rrmax": rrmax})
    beta_options = [Partition(), Partition([1])]
    for q in qs:
        field = ResidueParam(q)
        for rp, rpp in _transfer_shapes(rrmax, q):
            shape = fam.SplitShape(rp, rpp)
            pairs = fam.enumerate_L(shape)
            evecs = fam.enumerate_e(shape)
            for beta1, beta2 in itertools.product(beta_options, repeat=2):
                w1 = WeylClassB(Partition(), beta1)
                w2 = WeylClassB(Partition(), beta2)
                t = beta1.length() + beta2.length()
                k_split = (tuple(range(1, beta1.length() + 1)),
                           tuple(range(beta1.length() + 1, t + 1)))
                uvecs = [fam.UVector(u, k_split)
                         for u in itertools.product((0, 1), repeat=t)]
                for ue in (1, -1):
                    eta = SquareClass(rpp % 2, ue)
                    for gamma in fam.enumerate_gamma(shape, field, eta, w1, w2):
                        for pair in pairs:
                            for e in evecs:
                                for u in uvecs:
                                    report.points_checked += 1
                                    fw, cl = factorwise_transfer_check(
                                        shape, gamma, e, u, pair, w1, w2, eta, field)
                                    if fw != cl:
                                        report.record_failure(
                                            q=q, rp=rp, rpp=rpp,
                                            gamma=gamma.to_json(), e=list(e.signs),
                                            u=list(u.u), pair=pair.to_json(),
                                            lhs=fw, rhs=cl)
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def verify_weyl_classes(nmax: int = 4) -> VerificationReport:
    """Class sizes against the brute-force signed-permutation oracle.

    Checks the centralizer-order formula classwise against full group
    enumeration for N up to nmax, the total-order sum, the independent
    conjugation-orbit oracle at N <= 3, and the symmetric-group analogue.
    """
    if nmax > WEYL_N_CAP:
        raise ResourceLimitError(f"nmax capped at {WEYL_N_CAP}")
    start = time.monotonic()
    report = VerificationReport("weyl", {"nmax": nmax})
    for N in range(nmax + 1):
        brute = brute_class_sizes(N)
        total = 0
        for c, size in sorted(brute.items(), key=lambda kv: repr(kv[0])):
            report.points_checked += 1
            formula = class_size_b(c)
            total += size
            if formula != size:
                report.record_failure(N=N, cls=c.to_json(), lhs=formula, rhs=size)
        report.points_checked += 1
        if total != order_b(N):
            report.record_failure(N=N, identity="total", lhs=total, rhs=order_b(N))
        if N <= 3:
            orbit = conjugation_orbit_sizes(N)
            report.points_checked += 1
            if orbit != brute:
                report.record_failure(N=N, identity="orbit_oracle")
    for d in range(7):
        brute_a = brute_class_sizes_a(d)
        for c, size in sorted(brute_a.items(), key=lambda kv: repr(kv[0])):
            report.points_checked += 1
            if class_size_a(c) != size:
                report.record_failure(d=d, cls=c.to_json(),
                                      lhs=class_size_a(c), rhs=size)
        report.points_checked += 1
        total_a = sum(class_size_a(WeylClassA(p, d)) for p in enumerate_partitions(d))
        if total_a != factorial(d):
            report.record_failure(d=d, identity="total_a", lhs=total_a,
                                  rhs=factorial(d))
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def _all_class_splits(beta: Partition, fs: tuple[int, ...]):
    """All splittings of beta into (plus, minus, per-degree blocks), any sizes.

    Block entries must be divisible by their degree with odd quotient.
    Yields (beta_plus, beta_minus, inner_partitions) deduplicated as multisets.
    """
    nbins = 2 + len(fs)
    seen = set()
    for assign in itertools.product(range(nbins), repeat=beta.length()):
        bins = [[] for _ in range(nbins)]
        for part, where in zip(beta.parts, assign):
            bins[where].append(part)
        key = tuple(tuple(sorted(b)) for b in bins)
        if key in seen:
            continue
        seen.add(key)
        ok = True
        inners = []
        for f, raw in zip(fs, bins[2:]):
            if any(p % f or (p // f) % 2 == 0 for p in raw):
                ok = False
                break
            inners.append(Partition(p // f for p in raw))
        if ok:
            yield Partition(bins[0]), Partition(bins[1]), tuple(inners)


def verify_descent(beta_max: int = 8) -> VerificationReport:
    """Descent splitting checks.

    (a) the sign-character relation on every class splitting with inner
    all-odd blocks, exhaustively for |beta| <= beta_max; (b) the unique
    size split selected by an assignment against a full scan; (c) sector
    sums of the size relations reproduce the quadruple splitting sizes.
    """
    start = time.monotonic()
    report = VerificationReport("descent", {"beta_max": beta_max})

    for total in range(beta_max + 1):
        for beta in enumerate_partitions(total):
            for fs in ((), (1,), (2,), (1, 2)):
                for bplus, bminus, inners in _all_class_splits(beta, fs):
                    report.points_checked += 1
                    lhs = (-1) ** (beta.length() % 2)
                    rhs = (-1) ** ((bplus.length() + bminus.length()
                                    + sum(p.size() for p in inners)) % 2)
                    if lhs != rhs:
                        report.record_failure(beta=beta.to_json(), fs=list(fs),
                                              identity="class_sign", lhs=lhs, rhs=rhs)

    blocks_options = [(), ((1, 1),), ((1, 2),), ((2, 1),), ((1, 1), (1, 1))]
    for rp, rpp in itertools.product(range(3), repeat=2):
        r_plus, r_minus = dsc.r_plus_minus(rp, rpp)
        for blocks in blocks_options:
            bw = sum(d * f for d, f in blocks)
            d = sum(b[0] for b in blocks)
            for Np, Npp in itertools.product(range(3), repeat=2):
                if bw > Np + Npp:
                    continue
                g = QuadrupleGamma(rp, rpp, Np, Npp)
                for N_plus in range(Np + Npp - bw + 1):
                    N_minus = Np + Npp - bw - N_plus
                    n_plus = N_plus + (r_plus ** 2 + rpp ** 2 - 1) // 2
                    n_minus = N_minus + (r_minus ** 2 + rpp ** 2) // 2
                    eta_minus = SquareClass(rpp % 2, 1)
                    eta_plus = SquareClass(rpp % 2, (-1) ** (d % 2))
                    try:
                        dd = dsc.DescentDatum(n_plus, eta_plus, n_minus, eta_minus,
                                              blocks, n_plus + n_minus + bw)
                    except ValueError:
                        continue
                    feas = dsc.descent_feasibility(dd, g)
                    report.points_checked += 1
                    if not feas.holds or (feas.N_plus, feas.N_minus) != (N_plus, N_minus):
                        report.record_failure(g=g.to_json(), identity="feasibility")
                        continue
                    splits = dsc.enumerate_size_splits(dd, g, N_plus, N_minus)
                    expected_sizes = split_sizes(rp, rpp, Np, Npp)
                    for split in splits:
                        report.points_checked += 1
                        if dsc.sector_size_sum(g, split, dd.blocks) != expected_sizes:
                            report.record_failure(g=g.to_json(),
                                                  split=split.to_json(),
                                                  identity="sector_sum")
                        sizes = dsc.assignment_sizes(g, split)
                        eta1_minus = SquareClass(((r_minus + rpp) // 2) % 2, 1)
                        eta2_minus = eta_minus * eta1_minus
                        assignment = dsc.SplitAssignment(
                            dd, sizes[0], sizes[1], sizes[2], eta1_minus,
                            sizes[3], eta2_minus, split.pairs)
                        got = dsc.solve_split_family(dd, g, assignment)
                        matches = [s for s in splits
                                   if dsc.assignment_sizes(g, s) == sizes
                                   and s.pairs == split.pairs]
                        report.points_checked += 1
                        if got != split or matches != [split]:
                            report.record_failure(g=g.to_json(),
                                                  split=split.to_json(),
                                                  identity="unique_split")
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


def _unip_quad_params(n: int):
    for a in range(n + 1):
        for lp in enumerate_symplectic(2 * a):
            for lm in enumerate_symplectic(2 * (n - a)):
                yield par.UnipQuadParam(lp, lm)


def verify_params(nmax: int = 3) -> VerificationReport:
    """Parameter-algebra checks.

    Term counts of the virtual combination, double-swap identity, and
    character bilinearity on component-group images with up to three even
    blocks per side.
    """
    start = time.monotonic()
    report = VerificationReport("params", {"nmax": nmax})
    for n in range(nmax + 1):
        for n1, n2 in par.endoscopic_pairs(n):
            for t1 in _unip_quad_params(n1):
                for t2 in _unip_quad_params(n2):
                    triple = par.assemble_triple(t1, t2, (n1, n2))
                    report.points_checked += 1
                    s = triple.s_split()
                    expect = 2 ** (len(s.part_plus.jord_bp) + len(s.part_minus.jord_bp))
                    if len(par.virtual_rep(triple)) != expect:
                        report.record_failure(n=n, identity="term_count",
                                              triple=triple.to_json())
                    if par.involution_swap(par.involution_swap(triple)) != triple:
                        report.record_failure(n=n, identity="swap_involution",
                                              triple=triple.to_json())
                    back1, back2 = triple.restrict(par.PLUS), triple.restrict(par.MINUS)
                    if (back1[0] != t1.lam_plus or back1[1] != t1.lam_minus
                            or back2[0] != t2.lam_plus or back2[1] != t2.lam_minus):
                        report.record_failure(n=n, identity="restriction",
                                              triple=triple.to_json())

    # bilinearity of the character pairing on images
    for blocks_plus in ((), (2,), (4, 2), (6, 4, 2)):
        for blocks_minus in ((), (2,)):
            lam_plus = Partition([b for b in blocks_plus])
            lam_minus = Partition([b for b in blocks_minus])
            sp = par.SymplecticPartition(lam_plus)
            sm = par.SymplecticPartition(lam_minus)
            keys = [(par.PLUS, k) for k in sp.jord_bp] + [(par.MINUS, k) for k in sm.jord_bp]
            if len(keys) > 4:
                continue
            for eps_bits in itertools.product((1, -1), repeat=len(keys)):
                eps_plus = {k: e for (side, k), e in zip(keys, eps_bits) if side == par.PLUS}
                eps_minus = {k: e for (side, k), e in zip(keys, eps_bits) if side == par.MINUS}
                param = par.UnipQuadParam(sp, sm, eps_plus, eps_minus)
                images = [dict(zip(keys, bits))
                          for bits in itertools.product((1, -1), repeat=len(keys))]
                for im1 in images:
                    for im2 in images:
                        report.points_checked += 1
                        prod = {k: im1[k] * im2[k] for k in keys}
                        lhs = par.eval_character_on_image(param, prod)
                        rhs = par.eval_character_on_image(param, im1) * \
                            par.eval_character_on_image(param, im2)
                        if lhs != rhs:
                            report.record_failure(identity="bilinearity",
                                                  blocks=[list(blocks_plus),
                                                          list(blocks_minus)])
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    return report


# ---------------------------------------------------------------------------
# Enumeration reports.
# ---------------------------------------------------------------------------

def enumerate_params_report(n: int) -> dict:
    """Endoscopic pairs, symplectic partitions and parameters for one size."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUM_N_CAP:
        raise ResourceLimitError(f"parameter enumeration capped at n = {ENUM_N_CAP}")
    partitions = [{"partition": sp.to_json(),
                   "even_blocks": list(sp.jord_bp),
                   "component_group_order": 2 ** len(sp.jord_bp)}
                  for sp in enumerate_symplectic(2 * n)]
    parameters = []
    for t in _unip_quad_params(n):
        chars = 2 ** (len(t.lam_plus.jord_bp) + len(t.lam_minus.jord_bp))
        parameters.append({"lam_plus": t.lam_plus.to_json(),
                           "lam_minus": t.lam_minus.to_json(),
                           "characters": chars})
    counts = {}
    for k in range(n + 1):
        counts[k] = sum(1 for _ in _unip_quad_params(k))
    assembled = [{"pair": [n1, n2], "combinations": counts[n1] * counts[n2]}
                 for n1, n2 in par.endoscopic_pairs(n)]
    return {
        "n": n,
        "pairs": [[a, b] for a, b in par.endoscopic_pairs(n)],
        "symplectic_partitions": partitions,
        "parameters": parameters,
        "parameter_count": len(parameters),
        "assembled": assembled,
    }


def _block_multisets(k: int, floor=(1, 1)):
    if k == 0:
        yield ()
        return
    for dd in range(1, k + 1):
        for f in range(1, k // dd + 1):
            if dd * f <= k and (dd, f) >= floor:
                for rest in _block_multisets(k - dd * f, (dd, f)):
                    yield ((dd, f),) + rest


def enumerate_descent_report(n: int) -> dict:
    """All feasible descent-datum invariant tuples for one size."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUM_N_CAP:
        raise ResourceLimitError(f"descent enumeration capped at n = {ENUM_N_CAP}")
    rows = []
    for n_plus in range(n + 1):
        for n_minus in range(n - n_plus + 1):
            k = n - n_plus - n_minus
            for blocks in _block_multisets(k):
                d = sum(b[0] for b in blocks)
                for val in (0, 1):
                    for u_minus in (1, -1):
                        u_plus = u_minus * (-1) ** (d % 2)
                        try:
                            dd = dsc.DescentDatum(
                                n_plus, SquareClass(val, u_plus),
                                n_minus, SquareClass(val, u_minus), blocks, n)
                        except ValueError:
                            continue
                        rows.append(dd.to_json())
    return {"n": n, "count": len(rows), "data": rows}
