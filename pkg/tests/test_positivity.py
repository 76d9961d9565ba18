import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from delpezzo.lattice import (
    PicardClass,
    RankError,
    adjoint,
    canonical_class,
    degree,
    intersect,
    line,
    point_class,
    type_pattern,
    zero_class,
)
from delpezzo.enumeration import surface_context
from delpezzo.positivity import (
    EXCEPTION_MINUS_K1K_S8,
    EXCEPTION_MINUS_KK_S8,
    EXCEPTION_MINUS_K_S7_K1,
    EXCEPTION_NONE,
    adjoint_kva_check,
    degree_bound_check,
    f1_class,
    f1_coords,
    f1_is_k_very_ample,
    fiber_class,
    generate_inequality_families,
    is_big,
    is_effective,
    is_k_very_ample,
    is_nef,
    is_spanned,
    minimum_pairing,
    minimum_family_value_bulk,
    minimum_pairing_bulk,
)

coeff = st.integers(-12, 12)


def classes(r):
    return st.builds(PicardClass, coeff, st.tuples(*[coeff] * r))


ranked_classes = st.integers(1, 8).flatmap(classes)


class TestNef:
    def test_anticanonical_is_nef_everywhere(self, ctx):
        assert is_nef(-ctx.canonical, ctx)

    def test_failing_pair_inequality(self):
        assert not is_nef(PicardClass(3, (2, 2)), surface_context(2))

    def test_pencil_class_is_nef(self):
        for r in range(1, 9):
            assert is_nef(PicardClass(1, (1,) + (0,) * (r - 1)), surface_context(r))

    def test_rank_one_needs_the_fiber_inequality(self):
        ctx1 = surface_context(1)
        # (2;5) pairs fine with e_1 but not with l - e_1
        assert intersect(PicardClass(2, (5,)), point_class(1, 1)) >= 0
        assert not is_nef(PicardClass(2, (5,)), ctx1)

    @given(ranked_classes)
    def test_spanned_coincides_with_nef(self, L):
        ctx = surface_context(L.r)
        assert is_spanned(L, ctx) == is_nef(L, ctx)

    def test_big_examples(self, ctx):
        assert is_big(-ctx.canonical, ctx)
        fib = PicardClass(1, (1,) + (0,) * (ctx.r - 1))
        assert not is_big(fib, ctx)  # nef of square zero
        if ctx.r == 2:
            assert not is_big(PicardClass(3, (2, 2)), ctx)  # not even nef


class TestEffectivity:
    def test_point_classes_are_effective(self, ctx):
        for i in range(1, ctx.r + 1):
            ok, cert = is_effective(point_class(ctx.r, i), ctx)
            assert ok and cert.replay() == point_class(ctx.r, i)

    def test_anticanonical_of_degree_one_surface(self):
        ctx8 = surface_context(8)
        ok, cert = is_effective(-canonical_class(8), ctx8)
        assert ok and cert.terminal == -canonical_class(8)

    def test_negative_line_multiple_is_not_effective(self):
        ctx8 = surface_context(8)
        assert is_effective(PicardClass(-1, (0,) * 8), ctx8) == (False, None)

    def test_general_position_constraints(self):
        # three points not on a line, six not on a conic
        assert not is_effective(PicardClass(1, (1, 1, 1)), surface_context(3))[0]
        assert not is_effective(PicardClass(2, (1,) * 6), surface_context(6))[0]
        assert not is_effective(PicardClass(0, (-1, 1)), surface_context(2))[0]

    def test_rank_one_monoid_rule(self):
        ctx1 = surface_context(1)
        for a in range(-5, 9):
            for b in range(-8, 9):
                ok, cert = is_effective(PicardClass(a, (b,)), ctx1)
                assert ok == (a >= 0 and a >= b)
                if ok:
                    assert cert.replay() == PicardClass(a, (b,))
                    assert is_nef(cert.terminal, ctx1)

    def test_sufficiency_bound(self):
        # a >= -2 and degree >= K.L forces effectivity
        for r in (1, 2):
            ctx = surface_context(r)
            K = canonical_class(r)
            for a in range(-2, 9):
                for b in itertools.product(range(-6, 7), repeat=r):
                    L = PicardClass(a, b)
                    if degree(L) >= intersect(K, L):
                        assert is_effective(L, ctx)[0], L

    @given(st.integers(2, 8).flatmap(classes))
    @settings(max_examples=200)
    def test_certificate_replays_and_terminal_is_nef(self, L):
        ctx = surface_context(L.r)
        ok, cert = is_effective(L, ctx)
        if ok:
            assert cert.replay() == L
            assert cert.terminal.is_zero() or is_nef(cert.terminal, ctx)
            for cls, mult in cert.subtracted:
                assert cls in ctx.exceptional_index and mult >= 1

    def test_zero_class_is_effective(self, ctx):
        ok, cert = is_effective(zero_class(ctx.r), ctx)
        assert ok and cert.subtracted == () and cert.terminal.is_zero()

    def test_nef_implies_effective(self, ctx):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = int(rng.integers(0, 10))
            b = tuple(int(x) for x in rng.integers(0, a + 1, ctx.r))
            L = PicardClass(a, b)
            if is_nef(L, ctx):
                assert is_effective(L, ctx)[0]

    @pytest.mark.parametrize("r", [2, 3])
    def test_negative_verdicts_have_separating_nef_class(self, r):
        # a nef class pairs >= 0 with every effective class, so finding a
        # nef N with L.N < 0 certifies non-effectivity independently of
        # the reduction; every negative verdict in the box must admit one
        ctx = surface_context(r)
        nef_box = []
        for a in range(0, 13):
            for b in itertools.product(range(0, a + 1), repeat=r):
                N = PicardClass(a, b)
                if is_nef(N, ctx):
                    nef_box.append(N)
        for a in range(-3, 7):
            for b in itertools.product(range(-4, 5), repeat=r):
                L = PicardClass(a, b)
                if not is_effective(L, ctx)[0]:
                    assert any(intersect(L, N) < 0 for N in nef_box), (
                        f"no separating nef class found for {L}"
                    )


class TestKVeryAmple:
    def test_rank_one_boundary_family(self):
        ctx1 = surface_context(1)
        for k in range(0, 5):
            assert is_k_very_ample(PicardClass(2 * k, (k,)), k, ctx1).k_very_ample

    def test_exception_classes(self):
        ctx8 = surface_context(8)
        ctx7 = surface_context(7)
        K8, K7 = canonical_class(8), canonical_class(7)
        for k in range(1, 6):
            rep = is_k_very_ample(-k * K8, k, ctx8)
            assert not rep.k_very_ample
            assert rep.exception_flag == EXCEPTION_MINUS_KK_S8
            assert minimum_pairing(-k * K8, ctx8) >= k  # inequalities do hold
            rep = is_k_very_ample(-(k + 1) * K8, k, ctx8)
            assert not rep.k_very_ample
            assert rep.exception_flag == EXCEPTION_MINUS_K1K_S8
        rep = is_k_very_ample(-K7, 1, ctx7)
        assert not rep.k_very_ample and rep.exception_flag == EXCEPTION_MINUS_K_S7_K1
        rep = is_k_very_ample(-K7, 0, ctx7)
        assert rep.k_very_ample and rep.exception_flag == EXCEPTION_NONE

    def test_zero_level_flags_at_rank_8(self):
        ctx8 = surface_context(8)
        assert is_k_very_ample(zero_class(8), 0, ctx8).exception_flag == EXCEPTION_MINUS_KK_S8
        assert is_k_very_ample(-canonical_class(8), 0, ctx8).exception_flag == EXCEPTION_MINUS_K1K_S8

    def test_anticanonical_on_cubic_surface_is_very_ample(self):
        ctx6 = surface_context(6)
        assert is_k_very_ample(-canonical_class(6), 1, ctx6).k_very_ample

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            is_k_very_ample(line(2), -1, surface_context(2))

    @given(st.integers(1, 8).flatmap(classes), st.integers(1, 3))
    @settings(max_examples=300)
    def test_monotone_in_k(self, L, k):
        ctx = surface_context(L.r)
        if is_k_very_ample(L, k, ctx).k_very_ample:
            assert is_k_very_ample(L, k - 1, ctx).k_very_ample

    @given(st.integers(1, 8).flatmap(classes), st.integers(1, 3))
    @settings(max_examples=300)
    def test_kva_implies_nef_and_big(self, L, k):
        ctx = surface_context(L.r)
        rep = is_k_very_ample(L, k, ctx)
        if rep.k_very_ample:
            assert rep.nef and rep.big and rep.spanned and rep.effective

    def test_report_fields_and_stable_schema(self):
        rep = is_k_very_ample(PicardClass(3, (2, 2)), 1, surface_context(2))
        payload = rep.as_dict()
        assert list(payload) == [
            "subject", "r", "k", "degree", "genus", "verdicts",
            "violations", "exception_flag", "certificate",
        ]
        assert list(payload["verdicts"]) == ["effective", "nef", "big", "spanned", "k_very_ample"]
        assert payload["violations"][0]["family"] == "a >= b_i + b_j"
        json.dumps(payload)  # must be serializable as-is

    def test_intersection_with_low_degree_effectives(self):
        # a k-very-ample class meets every effective class at least k times;
        # checked against all effectives of anticanonical degree <= 6 (rank 2)
        ctx = surface_context(2)
        effectives = []
        for d in range(1, 7):
            for alpha in range(0, 6 * d + 1):
                for b1 in range(-d, alpha + 1):
                    b2 = 3 * alpha - d - b1
                    if -d <= b2 <= alpha:
                        D = PicardClass(alpha, (b1, b2))
                        if is_effective(D, ctx)[0]:
                            effectives.append(D)
        for L in (PicardClass(3, (1, 1)), PicardClass(5, (2, 1)), PicardClass(6, (2, 2))):
            for k in range(0, 3):
                if is_k_very_ample(L, k, ctx).k_very_ample:
                    assert all(intersect(L, C) >= k for C in effectives)


class TestInequalityFamilies:
    def test_family_counts_per_rank(self):
        assert len(generate_inequality_families(1)) == 2
        assert len(generate_inequality_families(2)) == 2
        assert len(generate_inequality_families(4)) == 2
        assert len(generate_inequality_families(5)) == 3
        assert len(generate_inequality_families(6)) == 3
        assert len(generate_inequality_families(7)) == 4
        assert len(generate_inequality_families(8)) == 7

    def test_labels(self):
        assert [f.label() for f in generate_inequality_families(1)] == [
            "b_1 >= k",
            "a >= b_1 + k",
        ]
        assert [f.label() for f in generate_inequality_families(8)] == [
            "b_i >= k",
            "a >= b_i + b_j + k",
            "2a >= sum_5 b + k",
            "3a >= 2b_i + sum_6 b + k",
            "4a >= 2 sum_3 b + sum_5 b + k",
            "5a >= 2 sum_6 b + b_i + b_j + k",
            "6a >= 3b_i + 2 sum_7 b + k",
        ]
        assert generate_inequality_families(2)[1].label(with_k=False) == "a >= b_i + b_j"

    @given(st.integers(1, 8).flatmap(classes))
    @settings(max_examples=200)
    def test_family_value_is_orbit_minimum(self, L):
        ctx = surface_context(L.r)
        orbit_min = {}
        for xi in ctx.exceptional_set:
            pat = type_pattern(xi)
            v = intersect(L, xi)
            orbit_min[pat] = min(v, orbit_min.get(pat, v))
        if L.r == 1:
            orbit_min[type_pattern(fiber_class())] = intersect(L, fiber_class())
        for fam in generate_inequality_families(L.r):
            assert fam.evaluate(L) == orbit_min[fam.source_type]

    @given(st.integers(1, 8).flatmap(classes), st.integers(0, 3))
    @settings(max_examples=200)
    def test_families_reproduce_the_direct_test(self, L, k):
        ctx = surface_context(L.r)
        fams = generate_inequality_families(L.r)
        assert all(f.satisfied(L, k) for f in fams) == (minimum_pairing(L, ctx) >= k)

    def test_bulk_evaluators_match_scalar(self):
        rng = np.random.default_rng(11)
        for r in (1, 3, 8):
            ctx = surface_context(r)
            rows = np.column_stack(
                [rng.integers(-5, 16, 400), rng.integers(-4, 16, (400, r))]
            ).astype(np.int64)
            direct = minimum_pairing_bulk(rows, ctx)
            folded = minimum_family_value_bulk(rows, r)
            for i in range(len(rows)):
                L = PicardClass(int(rows[i, 0]), tuple(int(x) for x in rows[i, 1:]))
                assert direct[i] == minimum_pairing(L, ctx)
            np.testing.assert_array_equal(direct, folded)


class TestAdjoint:
    def test_examples(self):
        ctx2 = surface_context(2)
        for k in (1, 2, 3):
            L = PicardClass(3 * k, (k, k))
            assert adjoint_kva_check(L, k, ctx2)
        ctx1 = surface_context(1)
        assert not adjoint_kva_check(PicardClass(3, (2,)), 1, ctx1)  # a = b1 + k
        assert adjoint_kva_check(PicardClass(4, (2,)), 1, ctx1)  # a = b1 + k + 1

    def test_rank_one_rule(self):
        ctx1 = surface_context(1)
        for b1 in range(0, 6):
            for k in range(1, 4):
                for a in range(b1 + k, b1 + k + 4):
                    L = PicardClass(a, (b1,))
                    if b1 < k:
                        continue  # not k-very ample, precondition fails
                    assert adjoint_kva_check(L, k, ctx1) == (a >= b1 + k + 1)

    def test_always_true_at_rank_two_plus_except_one_class(self):
        # the adjoint of a k-very-ample class stays (k-1)-very ample for
        # r >= 2, except that -2K on the degree-2 surface adjoins to -K,
        # which is exactly the flagged very-ampleness exception
        rng = np.random.default_rng(5)
        for r in range(2, 9):
            ctx = surface_context(r)
            checked = 0
            for _ in range(400):
                k = int(rng.integers(1, 4))
                a = int(rng.integers(0, 16))
                b = tuple(int(x) for x in rng.integers(0, 8, r))
                L = PicardClass(a, b)
                if not is_k_very_ample(L, k, ctx).k_very_ample:
                    continue
                checked += 1
                expected = not (r == 7 and k == 2 and L == -2 * canonical_class(7))
                assert adjoint_kva_check(L, k, ctx) == expected
            assert checked > 0
        ctx7 = surface_context(7)
        assert is_k_very_ample(-2 * canonical_class(7), 2, ctx7).k_very_ample
        assert not adjoint_kva_check(-2 * canonical_class(7), 2, ctx7)
        rep = is_k_very_ample(adjoint(-2 * canonical_class(7)), 1, ctx7)
        assert rep.exception_flag == EXCEPTION_MINUS_K_S7_K1

    def test_precondition_errors(self):
        ctx2 = surface_context(2)
        with pytest.raises(ValueError):
            adjoint_kva_check(PicardClass(3, (2, 2)), 1, ctx2)  # not 1-very ample
        with pytest.raises(ValueError):
            adjoint_kva_check(PicardClass(6, (2, 2)), 0, ctx2)  # k must be >= 1


class TestDegreeBound:
    def test_bound_values(self):
        assert 2 * 2 + 3 * 2 + 2 == 12
        assert 3 * 3 + 3 * 3 + 2 == 20

    def test_holds_on_examples(self):
        ctx2 = surface_context(2)
        for k in (2, 3):
            L = PicardClass(3 * k + 1, (k, k))
            assert degree_bound_check(L, k, ctx2)

    def test_exhaustive_minimum_small_ranks(self):
        # minimum degree of a 2-very-ample class, excluding -2K, over a <= 12
        for r in (1, 2, 3):
            ctx = surface_context(r)
            K = canonical_class(r)
            best = None
            for a in range(0, 13):
                for b in itertools.product(range(0, a + 1), repeat=r):
                    L = PicardClass(a, b)
                    if L == -2 * K or not is_k_very_ample(L, 2, ctx).k_very_ample:
                        continue
                    d = degree(L)
                    best = d if best is None else min(best, d)
            assert best is not None and best >= 12

    def test_precondition_errors(self):
        ctx2 = surface_context(2)
        with pytest.raises(ValueError):
            degree_bound_check(PicardClass(6, (2, 2)), 1, ctx2)  # k too small
        with pytest.raises(ValueError):
            degree_bound_check(-2 * canonical_class(2), 2, ctx2)  # excluded class
        with pytest.raises(ValueError):
            degree_bound_check(PicardClass(3, (2, 2)), 2, ctx2)  # not 2-very ample


class TestF1Coordinates:
    def test_round_trip(self):
        for a0 in range(-20, 21):
            for b in range(-20, 21):
                assert f1_coords(f1_class(a0, b)) == (a0, b)
        for a in range(-20, 21):
            for b1 in range(-20, 21):
                L = PicardClass(a, (b1,))
                assert f1_class(*f1_coords(L)) == L

    def test_examples(self):
        for k in range(0, 4):
            assert f1_class(k, 2 * k) == PicardClass(2 * k, (k,))
        assert f1_class(1, 0) == point_class(1, 1)
        assert f1_class(0, 1) == fiber_class()
        assert f1_coords(point_class(1, 1)) == (1, 0)
        assert f1_coords(fiber_class()) == (0, 1)

    def test_criterion_agrees_with_lattice_test(self):
        ctx1 = surface_context(1)
        for a0 in range(-8, 9):
            for b in range(-8, 9):
                for k in range(0, 4):
                    direct = is_k_very_ample(f1_class(a0, b), k, ctx1).k_very_ample
                    assert f1_is_k_very_ample(a0, b, k) == direct

    def test_rank_errors(self):
        with pytest.raises(RankError):
            f1_coords(line(2))
