"""Property suites run by ``qpskew verify`` and the acceptance tests.

Every check returns ``(passed, count, counterexample)``; the counterexample
is a short string or None.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .group import idempotent, restrict_character, subgroup_generated
from .quiver import canonical_potential, cyc, format_path, shuffle, PathElement


def workers():
    """Thread cap from QPSKEW_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("QPSKEW_THREADS", "1")))
    except ValueError:
        return 1


def check_corners(T):
    """Arrow multiplicities of Q_G against oracle corner dimensions, and the
    two corner bases (distinguished arrows, arrows into R) being bases."""
    A, qg = T.algebra, T.qg
    count = 0
    for v in qg.vertices:
        for w in qg.vertices:
            count += 1
            n = sum(1 for _ in qg.arrows_between(v, w))
            dim = A.corner_dimension(v.rep, v.rho, w.rep, w.rho)
            basis = A.corner_basis(v.rep, v.rho, w.rep, w.rho)
            if n != dim or len(basis) != dim:
                return False, count, f"corner {v} -> {w}: {n} arrows, oracle dimension {dim}"
    return True, count, None


def check_iota(T, max_len=3):
    """iota(pq) = iota(p) iota(q) and e iota e = iota on paths of length <= max_len."""
    A, Q = T.algebra, T.act.quiver
    e = A.ebar()
    paths = [p for n in range(max_len + 1) for p in Q.paths_of_length(n)]
    iota = {p: A.iota(p) for p in paths}
    count = 0
    for p in paths:
        count += 1
        if e * iota[p] * e != iota[p]:
            return False, count, f"e iota e != iota at {format_path(Q, p)}"
        for q in paths:
            if p.source != q.target or len(p) + len(q) > max_len:
                continue
            count += 1
            pq = Q.path(p.arrows + q.arrows) if p.arrows and q.arrows else (p if q.is_stationary else q)
            if iota[pq] != iota[p] * iota[q]:
                return False, count, f"iota(pq) != iota(p)iota(q) at p={format_path(Q, p)}, q={format_path(Q, q)}"
    return True, count, None


def check_transport(T, max_path=3, max_cycle=4):
    """Closed formulas against phi^-1 iota computed by row reduction."""
    Q = T.act.quiver
    count = 0
    for b in Q.arrows:
        count += 1
        if T.transport_arrow(b) != T.oracle_arrow(b):
            return False, count, f"transport_arrow({b})"
    for n in range(2, max_path + 1):
        for p in Q.paths_of_length(n):
            count += 1
            if T.transport_path(p) != T.oracle_path(p):
                return False, count, f"transport_path({format_path(Q, p)})"
    for c in Q.cycles_up_to(max_cycle):
        count += 1
        if T.transport_cycle(c) != T.oracle_cycle(c):
            return False, count, f"transport_cycle({format_path(Q, c)})"
    return True, count, None


def check_s_commutes(T, max_cycle=4):
    """s phi^-1 iota (c) = cyc phi^-1 iota s(c) for cycles c."""
    Q = T.act.quiver
    count = 0
    for c in Q.cycles_up_to(max_cycle):
        count += 1
        x = PathElement.of(Q, c)
        lhs = shuffle(canonical_potential(cyc(T.phi_inv(T.algebra.iota(c)))))
        rhs = cyc(T.phi_inv(T.algebra.iota(shuffle(x))))
        if lhs != rhs:
            return False, count, f"s does not commute at {format_path(Q, c)}"
    return True, count, None


def check_counting(T):
    """|R_ij| = |G||G_ij|/(|G_i||G_j|) = |R_ji|, and e_rho e_{rho|H} = e_rho."""
    act, ch, G = T.act, T.choices, T.group
    count = 0
    for i0 in ch.I_tilde:
        for j0 in ch.I_tilde:
            count += 1
            Gi, Gj = act.stabilizer(i0), act.stabilizer(j0)
            Gij = Gi.intersect(Gj)
            expected = Fraction(len(G) * len(Gij), len(Gi) * len(Gj))
            r, rt = len(ch.R[(i0, j0)]), len(ch.R[(j0, i0)])
            if r != expected or r != rt:
                return False, count, f"|R[{i0},{j0}]| = {r}, expected {expected}, reverse {rt}"
    ok, n, bad = check_idempotents(G)
    return ok, count + n, bad


def check_idempotents(G):
    subs = {}
    for g in G.elements:
        for h in G.elements:
            H = subgroup_generated(G, [g, h])
            subs.setdefault(H.element_set, H)
    subs = list(subs.values())
    count = 0
    for K in subs:
        for H in subs:
            if not H <= K:
                continue
            for rho in K.characters:
                count += 1
                e = idempotent(rho)
                if e * idempotent(restrict_character(rho, H)) != e:
                    return False, count, f"e_rho e_(rho|H) != e_rho for {rho} on {H}"
    return True, count, None


def run_suite(T, W, W_G, max_len=None, negative_control=False):
    """All checks; returns a dict name -> result dict, always in the same order.

    The checks are independent and run on up to ``workers()`` threads.
    """
    from .ginzburg import Phi, perturb, verify_dg_iso

    def dg():
        target = perturb(W_G) if negative_control else W_G
        rep = verify_dg_iso(Phi(T, W, target, max_len=max_len))
        bad = None
        if rep.failures:
            name, detail = rep.failures[0]
            bad = f"check ({name}) at {detail[0]}: {detail[1]} != {detail[2]}"
        return rep.passed, sum(c["count"] for c in rep.checks.values()), bad

    suite = [
        ("corners", lambda: check_corners(T)),
        ("iota", lambda: check_iota(T)),
        ("transport", lambda: check_transport(T)),
        ("s_commutes", lambda: check_s_commutes(T)),
        ("counting", lambda: check_counting(T)),
        ("dg_iso", dg),
    ]

    def timed(fn):
        t0 = time.perf_counter()
        ok, count, bad = fn()
        return {"passed": bool(ok), "count": count, "counterexample": bad,
                "seconds": round(time.perf_counter() - t0, 4)}

    n = workers()
    if n == 1:
        return {name: timed(fn) for name, fn in suite}
    with ThreadPoolExecutor(max_workers=n) as pool:
        futures = [(name, pool.submit(timed, fn)) for name, fn in suite]
        return {name: f.result() for name, f in futures}
