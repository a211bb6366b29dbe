import itertools
import math

import pytest

import oracles as O
from qorbit import (
    DomainTooLarge,
    NotStableInput,
    QuadPoly,
    SubsetSpec,
    Verdict,
    WindowTooLarge,
    k_star,
    new_field,
    orbit_shape,
    stability_test,
    triple_charsum,
    triple_domain_size,
    tset_size,
    verify_tf_bound,
    weil_sum,
    wset_size,
)

# frozen by the definition-level oracle scans (tests/oracles.py)
WSET_FIXTURES = {
    (3, 1): 6, (3, 2): 4, (3, 3): 4,
    (5, 1): 40, (5, 2): 22, (5, 3): 20,
    (7, 1): 126, (7, 2): 66, (7, 3): 54,
}
TRIPLE_SUM_FIXTURES = {
    (3, (1,)): 0, (3, (2,)): 0, (3, (1, 2)): 6, (3, (1, 2, 3)): 0,
    (5, (1,)): 0, (5, (1, 2)): 20, (5, (2, 3)): 20,
    (7, (1,)): 0, (7, (1, 3)): 84,
}
STABLE_COUNT_FIXTURES = {3: 1, 5: 12, 7: 12}


def stable_polys(p, limit=None):
    ctx = new_field(p)
    out = []
    for a in range(1, p):
        for b in range(p):
            for c in range(p):
                f = QuadPoly(ctx, a, b, c)
                if stability_test(f).status is Verdict.STABLE:
                    out.append(f)
                    if limit and len(out) >= limit:
                        return out
    return out


class TestSubsetSpec:
    def test_parse(self):
        assert SubsetSpec.parse("1,3,4").indices == (1, 3, 4)

    def test_degree(self):
        assert SubsetSpec((1, 3, 4)).degree == 2 + 8 + 16

    def test_invalid(self):
        for bad in [(), (0,), (2, 2), (3, 1)]:
            with pytest.raises(WindowTooLarge):
                SubsetSpec(bad)
        with pytest.raises(WindowTooLarge):
            SubsetSpec.parse("1,x")


class TestTsetSize:
    def test_example_f3_k1(self):
        rep = tset_size(QuadPoly(new_field(3), 1, 0, 1), 1)
        assert rep.direct_count == 2  # chi(f(x)) over x=0,1,2 is 1,-1,-1

    def test_example_f3_k2(self):
        rep = tset_size(QuadPoly(new_field(3), 1, 0, 1), 2)
        assert rep.direct_count == 2

    def test_example_f7_k1(self):
        rep = tset_size(QuadPoly(new_field(7), 1, 0, 1), 1)
        assert rep.direct_count == 4  # x in {2,3,4,5}

    def test_window_validation(self):
        f = QuadPoly(new_field(7), 1, 0, 1)
        for bad in (0, -1, 31):
            with pytest.raises(WindowTooLarge):
                tset_size(f, bad)

    @pytest.mark.parametrize("p", [3, 5, 7, 13])
    def test_matches_definition_scan(self, p):
        ctx = new_field(p)
        for a, b, c in [(1, 0, 1), (1, 2, 2), (2, 1, 0), (p - 1, 0, 1)]:
            f = QuadPoly(ctx, a, b, c)
            for K in range(1, 5):
                rep = tset_size(f, K)
                assert rep.direct_count == len(O.tset_members(p, a, b, c, K))
                assert rep.identity_numerator == O.tset_identity_numerator(p, a, b, c, K)

    def test_identity_exact_for_stable(self):
        for p in (3, 5, 7, 13, 31):
            for f in stable_polys(p, limit=4):
                for K in range(1, 5):
                    rep = tset_size(f, K)
                    assert rep.zero_terms == 0
                    assert rep.identity_count == rep.direct_count

    def test_monotone_in_k(self):
        f = QuadPoly(new_field(101), 1, 0, 3)
        counts = [tset_size(f, K).direct_count for K in range(1, 7)]
        assert all(x >= y for x, y in zip(counts, counts[1:]))

    def test_rational_and_budget_fields(self):
        rep = tset_size(QuadPoly(new_field(31), 1, 0, 1), 2)
        assert str(rep.q_over_2k) == "31/4"
        assert rep.weil_error_budget == pytest.approx(9 * math.sqrt(31) / 4, rel=1e-12)

    def test_workers_partition_independence(self):
        f = QuadPoly(new_field(499), 1, 0, 3)
        a = tset_size(f, 3, workers=1)
        b = tset_size(f, 3, workers=3)
        assert a == b


class TestWeilSum:
    def test_examples_f3(self):
        f = QuadPoly(new_field(3), 1, 0, 1)
        assert weil_sum(f, SubsetSpec((1,))).sum == -1
        assert weil_sum(f, SubsetSpec((2,))).sum == -3
        assert weil_sum(f, SubsetSpec((1, 2))).sum == 1

    def test_degree_and_budget(self):
        f = QuadPoly(new_field(3), 1, 0, 1)
        rep = weil_sum(f, SubsetSpec((1, 2)))
        assert rep.degree == 6
        assert rep.weil_budget >= 5 * math.sqrt(3)

    def test_degree_cap(self):
        f = QuadPoly(new_field(7), 1, 0, 1)
        with pytest.raises(WindowTooLarge):
            weil_sum(f, SubsetSpec((29, 30)))

    @pytest.mark.parametrize("p", [3, 5, 13])
    def test_matches_definition_scan(self, p):
        ctx = new_field(p)
        for a, b, c in [(1, 0, 1), (2, 1, 2)]:
            f = QuadPoly(ctx, a, b, c)
            for ks in [(1,), (2,), (1, 2), (1, 3), (2, 4), (1, 2, 3)]:
                assert weil_sum(f, SubsetSpec(ks)).sum == O.weil_sum(p, a, b, c, ks)

    def test_weil_inequality_for_stable(self):
        for p in (3, 5, 7, 13, 31):
            for f in stable_polys(p, limit=3):
                for nu in range(1, 4):
                    for ks in itertools.combinations(range(1, 5), nu):
                        rep = weil_sum(f, SubsetSpec(ks))
                        assert rep.bound_holds, (p, f.a, f.b, f.c, ks, rep.sum)
                        # exact check equals the reported budget comparison
                        assert rep.sum * rep.sum <= (rep.degree - 1) ** 2 * p

    def test_inclusion_exclusion_recovers_direct_count(self):
        # expanding prod (1 - chi) subset by subset must reproduce #T exactly
        for p in (5, 13):
            for f in stable_polys(p, limit=2):
                for K in (1, 2, 3, 4):
                    total = p  # the trivial all-ones term
                    for nu in range(1, K + 1):
                        for ks in itertools.combinations(range(1, K + 1), nu):
                            total += (-1) ** nu * weil_sum(f, SubsetSpec(ks)).sum
                    assert total % (1 << K) == 0
                    assert total // (1 << K) == tset_size(f, K).direct_count

    def test_workers_partition_independence(self):
        f = QuadPoly(new_field(499), 1, 0, 3)
        assert weil_sum(f, SubsetSpec((1, 3)), workers=3) == weil_sum(f, SubsetSpec((1, 3)))


class TestKStar:
    def test_values(self):
        assert k_star(3) == 1
        assert k_star(15) == 1
        assert k_star(16) == 1
        assert k_star(199) == 1
        assert k_star(255) == 1
        assert k_star(256) == 2  # 2^2 = 4 = 256^(1/4)
        assert k_star(257) == 2  # 2^2 = 4 <= 257^(1/4) < 8
        assert k_star(65535) == 3
        assert k_star(65536) == 4

    def test_defining_inequality(self):
        for p in (17, 101, 4099, 10**6 + 3):
            k = k_star(p)
            assert 2 ** (4 * k) <= p or k == 1
            assert 2 ** (4 * (k + 1)) > p


class TestVerifyTfBound:
    def test_example_f3(self):
        rep = verify_tf_bound(QuadPoly(new_field(3), 1, 0, 1))
        assert rep.t_f == 3 and rep.k_star == 1 and rep.tset_count == 2
        assert rep.inequality_holds  # 2 <= 2
        assert rep.membership_ok

    def test_rejects_unstable(self):
        with pytest.raises(NotStableInput):
            verify_tf_bound(QuadPoly(new_field(5), 1, 0, 0))

    def test_bound_and_membership_for_stable_sample(self):
        for p in (5, 7, 13, 31, 101):
            for f in stable_polys(p, limit=3):
                rep = verify_tf_bound(f)
                assert rep.inequality_holds
                assert rep.membership_ok
                assert rep.first_violation is None

    def test_eq2_for_all_k_up_to_kstar(self):
        for p in (13, 101):
            for f in stable_polys(p, limit=3):
                t_f = orbit_shape(f).t_f
                for K in range(1, k_star(p) + 1):
                    assert t_f - 1 <= tset_size(f, K).direct_count


class TestWset:
    def test_frozen_fixtures(self):
        for (p, K), expected in WSET_FIXTURES.items():
            assert wset_size(new_field(p), K) == expected, (p, K)

    def test_matches_definition_scan(self):
        for p in (3, 5):
            for K in (1, 2, 3):
                assert wset_size(new_field(p), K) == O.wset_size(p, K)

    def test_window_validation(self):
        with pytest.raises(WindowTooLarge):
            wset_size(new_field(3), 0)

    def test_domain_cap(self):
        with pytest.raises(DomainTooLarge):
            wset_size(new_field(211), 1)

    def test_stable_counts_are_dominated(self):
        for p, s_p in STABLE_COUNT_FIXTURES.items():
            for K in (1, 2, 3):
                assert s_p <= wset_size(new_field(p), K)

    def test_offset_is_honoured(self):
        # offset o conditions on f^(k+o)(gamma); cross-check both variants
        for p in (5, 7):
            for off in (0, 2):
                assert wset_size(new_field(p), 2, offset=off) == O.wset_size(p, 2, offset=off)

    def test_workers_partition_independence(self):
        ctx = new_field(7)
        assert wset_size(ctx, 2, workers=3) == wset_size(ctx, 2)


class TestTripleCharsum:
    def test_frozen_fixtures(self):
        for (p, ks), expected in TRIPLE_SUM_FIXTURES.items():
            rep = triple_charsum(new_field(p), SubsetSpec(ks))
            assert rep.sum == expected, (p, ks)

    def test_trivial_sum_is_domain_size(self):
        assert triple_domain_size(new_field(3)) == 18
        assert triple_domain_size(new_field(5)) == 100

    def test_ratio_recorded(self):
        rep = triple_charsum(new_field(5), SubsetSpec((1, 2)))
        assert rep.ratio_q52 == pytest.approx(abs(rep.sum) / 5**2.5)
        assert math.isfinite(rep.ratio_q52)

    def test_matches_definition_scan(self):
        for p in (3, 5):
            for ks in [(1,), (2,), (1, 2), (1, 2, 3)]:
                rep = triple_charsum(new_field(p), SubsetSpec(ks))
                assert rep.sum == O.triple_charsum(p, ks)

    def test_domain_cap(self):
        with pytest.raises(DomainTooLarge):
            triple_charsum(new_field(211), SubsetSpec((1,)))

    def test_workers_partition_independence(self):
        ctx = new_field(7)
        s = SubsetSpec((1, 2))
        assert triple_charsum(ctx, s, workers=3) == triple_charsum(ctx, s)
