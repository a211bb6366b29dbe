"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings on the console.
"""

import itertools
import json
import math
import os
import time

import oracles as O
from qorbit import (
    QuadPoly,
    SubsetSpec,
    Verdict,
    k_star,
    new_field,
    orbit_shape,
    parse_scaling_csv,
    primes_in_range,
    run_census,
    scaling_table,
    stability_oracle,
    stability_test,
    triple_charsum,
    tset_size,
    weil_sum,
    wset_size,
)

ARTIFACT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "artifacts")


def _stable_set(primes, per_prime):
    """Monic stable polynomials collected by scanning (b, c) per prime."""
    found = []
    for p in primes:
        ctx = new_field(p)
        n = 0
        for b in range(p):
            for c in range(p):
                f = QuadPoly(ctx, 1, b, c)
                if stability_test(f).status is Verdict.STABLE:
                    found.append(f)
                    n += 1
                    if n >= per_prime:
                        break
            if n >= per_prime:
                break
    return found


def test_criterion_1_orbit_oracle_equivalence():
    started = time.perf_counter()
    checked = 0
    for p in (3, 5, 7, 11, 13):
        ctx = new_field(p)
        for a in range(1, p):
            for b in range(p):
                for c in range(p):
                    sh = orbit_shape(QuadPoly(ctx, a, b, c))
                    naive = O.rho_of_critical_sequence(p, a, b, c)
                    assert (sh.mu, sh.lam, sh.s, sh.t_f, sh.orbit_size) == naive, (p, a, b, c)
                    checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"orbit oracle equivalence took {elapsed:.1f}s"
    print(f"criterion 1 (orbit oracle equivalence): PASS, {checked} quadratics in {elapsed:.2f}s")


def test_criterion_2_stability_soundness_monic():
    started = time.perf_counter()
    indeterminate = []
    violations = []
    checked = 0
    for p in (3, 5, 7, 11):
        ctx = new_field(p)
        for b in range(p):
            for c in range(p):
                f = QuadPoly(ctx, 1, b, c)
                v = stability_test(f)
                checked += 1
                if v.status is Verdict.INDETERMINATE:
                    indeterminate.append((p, 1, b, c))
                    continue
                if v.status is Verdict.STABLE:
                    if not stability_oracle(f, 5).all_irreducible:
                        violations.append((p, (1, b, c), "Stable", v.witness_index))
                else:
                    depth = min(v.witness_index + 1, 5)
                    if stability_oracle(f, depth).reducible_at is None:
                        violations.append((p, (1, b, c), "NotStable", v.witness_index))
    elapsed = time.perf_counter() - started
    assert not violations, f"soundness violations: {violations}"
    assert elapsed < 60.0, f"stability soundness took {elapsed:.1f}s"
    print(
        f"criterion 2 (stability soundness, monic): PASS, {checked} polynomials, "
        f"{len(indeterminate)} indeterminate (excluded: {indeterminate}), {elapsed:.2f}s"
    )


def test_criterion_3_identity_and_orbit_length_inequality():
    started = time.perf_counter()
    stable = _stable_set((13, 61, 101, 257, 499), per_prime=12)
    assert len(stable) >= 50, f"only found {len(stable)} stable polynomials"
    checked = 0
    for f in stable:
        p = f.ctx.p
        t_f = orbit_shape(f).t_f
        for K in range(1, min(4, k_star(p)) + 1):
            rep = tset_size(f, K)
            assert rep.zero_terms == 0, (p, f.a, f.b, f.c, K)
            assert rep.identity_count == rep.direct_count, (p, f.a, f.b, f.c, K)
            assert t_f - 1 <= rep.direct_count, (p, f.a, f.b, f.c, K)
            checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"identity/inequality checks took {elapsed:.1f}s"
    print(
        f"criterion 3 (product identity + t_f-1 <= #T): PASS, {len(stable)} stable "
        f"polynomials, {checked} (f, K) pairs in {elapsed:.2f}s"
    )


def test_criterion_4_weil_inequality():
    started = time.perf_counter()
    stable = _stable_set((13, 61, 101, 257, 499), per_prime=12)
    assert len(stable) >= 50
    checked = 0
    for f in stable:
        p = f.ctx.p
        for nu in range(1, 5):
            for ks in itertools.combinations((1, 2, 3, 4), nu):
                rep = weil_sum(f, SubsetSpec(ks))
                # exact squared-integer form of |sum| <= (D-1) sqrt(p)
                assert rep.sum * rep.sum <= (rep.degree - 1) ** 2 * p, (p, f.a, f.b, f.c, ks)
                assert rep.bound_holds
                checked += 1
    elapsed = time.perf_counter() - started
    print(f"criterion 4 (Weil inequality): PASS, {checked} sums over {len(stable)} stable "
          f"polynomials in {elapsed:.2f}s")


def test_criterion_5_scaling_experiment():
    started = time.perf_counter()
    primes = primes_in_range(3, 199)
    assert len(primes) == 45
    table = scaling_table(primes, ratio_34_bound=10.0)
    elapsed = time.perf_counter() - started
    assert table.violations == [], f"max_tf > 10 p^(3/4) at primes {table.violations}"
    for r in table.rows:
        assert r.max_tf**4 <= 10**4 * r.p**3  # exact form of ratio_34 <= 10
    os.makedirs(ARTIFACT_DIR, exist_ok=True)
    dest = os.path.join(ARTIFACT_DIR, "scaling_3_199.csv")
    text = table.csv_text()
    with open(dest, "w") as fh:
        fh.write(text)
    assert parse_scaling_csv(text) == table.rows  # lossless round trip
    assert elapsed < 600.0, f"scaling experiment took {elapsed:.1f}s"
    print(
        f"criterion 5 (scaling over 3..199): PASS, max ratio_34 = "
        f"{max(r.ratio_34 for r in table.rows):.3f}, max ratio_12 = {table.max_ratio_12:.3f}, "
        f"CSV at {dest}, {elapsed:.1f}s"
    )


def test_criterion_6_triple_space_evidence():
    started = time.perf_counter()
    ratios = []
    for p in (3, 5, 7):
        ctx = new_field(p)
        s_p = run_census(ctx).stable_count
        for K in (1, 2, 3):
            assert s_p <= wset_size(ctx, K), (p, K)
        for nu in range(1, 4):
            for ks in itertools.combinations((1, 2, 3), nu):
                rep = triple_charsum(ctx, SubsetSpec(ks))
                assert math.isfinite(rep.ratio_q52)
                ratios.append((p, ks, rep.sum, rep.ratio_q52))
    elapsed = time.perf_counter() - started
    print(f"criterion 6 (S_p <= #W_p(K), triple-sum ratios): PASS, "
          f"{len(ratios)} ratios recorded in {elapsed:.2f}s; ratios: {ratios}")


def test_criterion_7_single_test_cost_near_2_31():
    p = 2147483659  # 2^31 + 11
    ctx = new_field(p)
    f = QuadPoly(ctx, 1, 0, 1)
    started = time.perf_counter()
    v = stability_test(f)
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"stability test took {elapsed:.1f}s"
    shape = orbit_shape(f)
    assert v.scanned <= shape.t_f
    print(
        f"criterion 7 (single test at p = 2^31 + 11): PASS, verdict {v.status.value}, "
        f"scanned {v.scanned} <= t_f = {shape.t_f}, {elapsed * 1000:.1f}ms"
    )


def test_criterion_8_census_determinism():
    ctx = new_field(31)
    docs = []
    for workers in (1, 2, 7):
        rep = run_census(ctx, workers=workers)
        docs.append(json.dumps(rep.to_json_dict(include_timing=False), indent=2))
    assert docs[0] == docs[1] == docs[2]
    print("criterion 8 (worker-count determinism at p = 31): PASS, byte-identical JSON")
