"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time

from conftest import ACCEPTANCE, all_params
from sswkit.cluster import gj_bad_series
from sswkit.core import SswParams, brute_force_counts
from sswkit.matrixfsm import count_fsm
from sswkit.noisy import Channel, ba_sec_capacity, bound_sweep, mgl_lower
from sswkit.properties import (convergence_gap, power_chain, rate_above_capacity,
                               rate_capacity_tight, rate_scaling, submultiplicative,
                               submultiplicative_tight, supermultiplicative,
                               supermultiplicative_tight)
from sswkit.reduced import build_reduced, count_reduced, refined_gj_series
from sswkit.spectral import capacity, finite_rate


def record(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches, instances = [], 0
    for L, J, W in all_params(8):
        p = SswParams(L, J, W)
        k_max = (20 - L) // J
        truth = brute_force_counts(p, 20)
        series = [count_fsm(p, k_max)]
        if p.aligned:
            series += [gj_bad_series(p, k_max), count_reduced(p, k_max),
                       refined_gj_series(p, k_max)]
        instances += 1
        for s in series:
            if dict(s.items()) != truth:
                mismatches.append((p, s.method))
    dt = time.perf_counter() - t0
    record(1, not mismatches and dt < 60,
           f"{len(mismatches)} mismatches over {instances} instances, n <= 20, {dt:.1f}s (< 60s)")


def test_criterion_2_rate_remark():
    p = SswParams(10, 5, 9)
    r20, r25 = finite_rate(p, 20).rate, finite_rate(p, 25).rate
    ok = abs(r20 - 0.3292) <= 5e-5 and abs(r25 - 0.3293) <= 5e-5 and r25 > r20
    record(2, ok, f"rate(20) = {r20:.6f}, rate(25) = {r25:.6f}, rate(25) > rate(20)")


def test_criterion_3_capacity_ordering():
    t0 = time.perf_counter()
    c77 = capacity(SswParams(8, 7, 7)).value
    c87 = capacity(SswParams(8, 8, 7)).value
    dt = time.perf_counter() - t0
    ok = c77 > c87 and abs(c87 - math.log2(9) / 8) <= 1e-9 and dt < 1.0
    record(3, ok, f"C(8,7,7) = {c77:.9f} > C(8,8,7) = {c87:.9f} = log2(9)/8, {dt:.3f}s (< 1s)")


def test_criterion_4_exact_capacity():
    c = capacity(SswParams(4, 2, 3)).value
    record(4, abs(c - 0.5) <= 1e-9, f"C(4,2,3) = {c:.12f}")


def test_criterion_5_inequality_suite():
    violations = []
    checked = 0
    for L, J, W in all_params(8, aligned=True):
        p = SswParams(L, J, W)
        cap = capacity(p).value
        for h in range(p.ell, 7):
            for k in range(p.ell, 7):
                a, b = submultiplicative(p, h, k), supermultiplicative(p, h, k)
                checked += 2
                if not a.holds or a.equal != submultiplicative_tight(p):
                    violations.append(("submultiplicative", p, h, k))
                if not b.holds or b.equal != supermultiplicative_tight(p):
                    violations.append(("supermultiplicative", p, h, k))
            for k in range(1, 7):
                for c in power_chain(p, h, k) + rate_scaling(p, h, k):
                    checked += 1
                    if not c.holds:
                        violations.append((c.label, p, h, k))
        for k in range(0, 13):
            r = rate_above_capacity(p, k, cap)
            checked += 1
            strict = L > J and 0 < W < L
            if not r.holds or (strict and r.equal) or r.equal != rate_capacity_tight(p):
                violations.append(("rate-capacity", p, k))
        if 2 <= p.num_states <= 16:
            for k in range(1, 41):
                checked += 1
                if not convergence_gap(p, k, cap).holds:
                    violations.append(("convergence", p, k))
    record(5, not violations,
           f"{len(violations)} violations over {checked} checks (aligned L <= 8, h, k <= 6)")


def _sandwich(kind):
    p = SswParams(3, 1, 2)
    cap = capacity(p).value
    reports = bound_sweep(p, kind, 50, restarts=8, seed=0)
    worst = max(max(r.lower_mgl, r.lower_zw) - r.upper for r in reports)
    at0 = reports[0]
    zero_gap = max(abs(x - cap) for x in (at0.lower_mgl, at0.lower_zw, at0.upper))
    if kind == "bsc":
        pair = min(r.lower_zw - r.lower_mgl for r in reports)
        pair_ok = pair >= -1e-9
    else:
        pair = max(abs(r.lower_zw - r.lower_mgl) for r in reports)
        pair_ok = pair <= 1e-4
    return worst <= 1e-9 and zero_gap <= 1e-6 and pair_ok, worst, zero_gap, pair


def test_criterion_6_noisy_sandwich():
    t0 = time.perf_counter()
    ok_b, w_b, z_b, pair_b = _sandwich("bsc")
    ok_e, w_e, z_e, pair_e = _sandwich("bec")
    dt = time.perf_counter() - t0
    record(6, ok_b and ok_e and dt < 300,
           f"(3,1,2) BSC: max(lower - upper) = {w_b:.1e}, |bounds - C| at p=0 <= {z_b:.1e}, "
           f"min(zw - mgl) = {pair_b:.1e}; BEC: max(lower - upper) = {w_e:.1e}, "
           f"|bounds - C| at 0 <= {z_e:.1e}, max|zw - mgl| = {pair_e:.1e}; {dt:.1f}s (< 300s)")


def test_criterion_7_ssw_beats_sec():
    ch = Channel("bsc", 0.001)
    ssw = mgl_lower(SswParams(8, 7, 7), ch)
    sec = ba_sec_capacity(8, 7, ch)
    record(7, ssw > sec, f"MGL(8,7,7) = {ssw:.6f} > SEC(8,7) = {sec:.6f} at BSC p = 0.001")


def test_criterion_8_scale():
    t0 = time.perf_counter()
    r = build_reduced(SswParams(40, 20, 20))
    c = capacity(SswParams(40, 20, 20), "reduced")
    dt = time.perf_counter() - t0
    record(8, len(r.states) <= 21 and dt < 1.0,
           f"(40,20,20) reduced FSM has {len(r.states)} states, capacity {c.value:.9f}, "
           f"{dt:.3f}s (< 1s)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
