import itertools
import math
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logvgit import cm
from logvgit.engine import PairState, limit_pair
from logvgit.errors import DomainError
from logvgit.one_param import generate_candidates, normalize, weight_f, weight_h
from logvgit.poly import SparsePolynomial, monomials_of_degree, parse_polynomial

from conftest import a2_f, random_pair

betas = st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(999, 1000), max_denominator=1000)
ND = [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)]
LAM_STAR = (1, 1, 0, -2)


def subgroups(n, d, limit=30):
    """A deterministic spread of normalized 1-PS; small boxes stand in for costly candidate sets."""
    if n <= 2:
        return sorted(generate_candidates(n, d))[:limit]
    box = {normalize(v) for v in itertools.product(range(-3, 4), repeat=n + 2) if any(v) and sum(v) == 0}
    return sorted(box)[:: max(1, len(box) // limit)][:limit]


def chi_hypersurface(n, d, m):
    """Oracle: h^0 of O(m) on a degree-d hypersurface in P^{n+1}."""
    return comb(m + n + 1, n + 1) - (comb(m - d + n + 1, n + 1) if m >= d else 0)


def closed_form_weights(n, d, w_f, w_h, m):
    """Oracle for (w, w_tilde) in degree m when the weights sum to zero.

    Degree-m monomials have total weight zero, so only the shifted copies
    removed by f and h contribute.
    """
    def N(k):
        return comb(k + n + 1, n + 1) if k >= 0 else 0

    w = -w_f * N(m - d)
    w_tilde = -w_f * (N(m - d) - N(m - d - 1)) - w_h * (N(m - 1) - N(m - d - 1))
    return w, w_tilde


class TestCoefficients:
    def test_cubic_surface_values(self):
        b = Fraction(9, 10)
        assert cm.a_beta(2, 3, b) == Fraction(81, 10)
        assert cm.b_beta(2, 3, b) == Fraction(9, 10)
        assert cm.t_of_beta(2, 3, b) == Fraction(1, 9)
        assert cm.a_beta(2, 3, 1) == 8
        assert cm.b_beta(2, 3, 1) == 0

    def test_quartic_threefold_values(self):
        assert cm.a_beta(3, 4, Fraction(1, 2)) == Fraction(31, 2)
        assert cm.b_beta(3, 4, Fraction(1, 2)) == 8

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_bracket_simplifies_when_d_is_n_plus_one(self, n):
        # oracle: with r = 1 the bracket collapses to (n+1)^2 - beta
        for beta in (Fraction(1, 3), Fraction(7, 9)):
            assert cm.a_beta(n, n + 1, beta) == (n + 1) ** 2 - beta

    @given(betas)
    def test_t_times_a_is_b(self, beta):
        for n, d in ND:
            assert cm.t_of_beta(n, d, beta) * cm.a_beta(n, d, beta) == cm.b_beta(n, d, beta)

    @given(betas)
    def test_closed_form_and_round_trip(self, beta):
        for n in (1, 2, 3):
            d = n + 1
            t = cm.t_of_beta(n, d, beta)
            assert t == Fraction(d * d) * (1 - beta) / (d * d - beta)
            assert cm.beta_of_t(d, t) == beta

    def test_positivity_grid(self):
        for n, d in ND:
            for k in range(1, 100):
                beta = Fraction(k, 100)
                assert cm.a_beta(n, d, beta) > 0 and cm.b_beta(n, d, beta) > 0

    def test_float_path(self):
        beta0 = math.sqrt(3) / 2
        assert cm.t_of_beta_float(2, 3, beta0) == pytest.approx(3 / 107 * (33 - 16 * math.sqrt(3)), abs=1e-12)
        assert cm.t_of_beta_float(2, 3, 0.9) == pytest.approx(1 / 9, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            cm.a_beta(2, 4, Fraction(1, 2))
        with pytest.raises(DomainError):
            cm.b_beta(2, 3, 0)
        with pytest.raises(TypeError):
            cm.a_beta(2, 3, 0.5)


class TestHilbert:
    @pytest.mark.parametrize("n,d", ND)
    def test_against_euler_characteristic(self, n, d):
        r = n + 2 - d
        a0, a1, a0t = cm.hilbert_coefficients(n, d)
        # chi(O(r k)) is a polynomial in k of degree n; fit it exactly
        samples = [(k, Fraction(chi_hypersurface(n, d, r * k))) for k in range(d + 1, d + n + 4)]
        coeffs = cm.fit_polynomial(samples, n)
        assert (coeffs[0], coeffs[1]) == (a0, a1)
        divisor = [(k, Fraction(chi_hypersurface(n - 1, d, r * k))) for k in range(d + 1, d + n + 3)]
        assert cm.fit_polynomial(divisor, n - 1)[0] == a0t

    def test_cubic_surface(self):
        assert cm.hilbert_coefficients(2, 3) == (Fraction(3, 2), Fraction(3, 2), 3)
        assert cm.hilbert_coefficients(3, 4) == (Fraction(2, 3), 1, 2)
        for n in (1, 2, 3, 4):
            assert cm.hilbert_coefficients(n, n + 1)[0] == Fraction(n + 1, math.factorial(n))


class TestSeries:
    def test_trivial_action_gives_hilbert_function(self):
        f0 = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3", 4)
        samples = cm.equivariant_weights(f0, parse_polynomial("x0", 4), (0, 0, 0, 0), range(1, 9))
        for s in samples:
            assert s.w == 0 and s.w_tilde == 0
            assert 2 * s.dim == 3 * s.k * s.k + 3 * s.k + 2
            assert s.dim_tilde == 3 * s.k

    @pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (2, 3), (3, 3), (3, 4)])
    def test_weights_match_closed_form(self, n, d):
        rng = random.Random(n * 10 + d)
        for lam in subgroups(n, d, 25):
            pair = random_pair(rng, n, d, terms=3)
            f0, h0, ok = limit_pair(pair, lam)
            if not ok:
                continue
            wf, wh = weight_f(f0, lam), weight_h(h0, lam)
            for s in cm.equivariant_weights(f0, h0, lam, range(0, d + 4)):
                assert (s.w, s.w_tilde) == closed_form_weights(n, d, wf, wh, s.k)
                assert s.dim == chi_hypersurface(n, d, s.k)

    def test_rejects_non_homogeneous_and_degenerate(self):
        with pytest.raises(DomainError):
            cm.equivariant_weights(parse_polynomial("x0^3 + x3^3", 4), parse_polynomial("x2", 4), LAM_STAR, [3])
        with pytest.raises(DomainError):
            cm.equivariant_weights(parse_polynomial("x0*x1*x2", 4), parse_polynomial("x2", 4), LAM_STAR, [3])


class TestFit:
    def test_pure_power(self):
        assert cm.fit_weight_polynomial([(k, Fraction(k**3)) for k in range(4, 9)], 3) == (1, 0)

    def test_synthetic(self):
        assert cm.fit_weight_polynomial([(k, Fraction(2 * k**3 - 5 * k**2 + k)) for k in range(4, 9)], 3) == (2, -5)

    def test_verification_sample(self):
        samples = [(k, Fraction(k**3)) for k in range(4, 8)] + [(8, Fraction(8**3 + 1))]
        with pytest.raises(DomainError):
            cm.fit_weight_polynomial(samples, 3)

    def test_needs_extra_sample(self):
        with pytest.raises(DomainError):
            cm.fit_weight_polynomial([(k, Fraction(k)) for k in range(4)], 3)


class TestDonaldsonFutaki:
    def test_synthetic_data(self):
        data = cm.HilbertWeightData(Fraction(3, 2), Fraction(3, 2), 3, 1, 0, 0)
        assert cm.df_from_coefficients(data, Fraction(1, 2)) == 1
        zero = cm.HilbertWeightData(Fraction(3, 2), Fraction(3, 2), 3, 0, 0, 0)
        assert cm.df_from_coefficients(zero, Fraction(1, 3)) == 0

    def test_proportional_data(self):
        a0, a1, a0t = Fraction(3, 2), Fraction(3, 2), Fraction(3)
        data = cm.HilbertWeightData(a0, a1, a0t, 2 * a0, 2 * a1, 2 * a0t)
        for beta in (Fraction(1, 5), Fraction(4, 5)):
            assert cm.df_from_coefficients(data, beta) == 0

    def test_three_a2_pair_vanishes(self):
        pair = PairState(2, 3, parse_polynomial("x0*x1*x3 + x2^3", 4), parse_polynomial("x2", 4))
        for beta in (Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)):
            assert cm.df_of_one_ps(pair, LAM_STAR, beta) == 0

    def test_a2_unstable_pair_has_negative_df(self, rng):
        pair = PairState(2, 3, a2_f(rng), parse_polynomial("x0", 4))
        assert cm.df_of_one_ps(pair, LAM_STAR, Fraction(9, 10)) < 0

    def test_generic_pair_has_positive_df(self, cands23):
        f = SparsePolynomial(4, {m: 1 for m in monomials_of_degree(4, 3)})
        # h avoids x3 so the limit hyperplane never divides the limit x3^3
        pair = PairState(2, 3, f, parse_polynomial("x0 + x1 + x2", 4))
        seen = 0
        for lam in cands23:
            if limit_pair(pair, lam)[2]:
                assert cm.df_of_one_ps(pair, lam, Fraction(9, 10)) > 0
                seen += 1
        assert seen > 10

    def test_degenerate_limit_raises(self):
        pair = PairState(2, 3, parse_polynomial("x0*x1*x2", 4), parse_polynomial("x2", 4))
        with pytest.raises(DomainError):
            cm.df_of_one_ps(pair, LAM_STAR, Fraction(1, 2))

    @pytest.mark.parametrize("n,d", [(1, 2), (2, 3), (3, 4)])
    def test_dictionary_at_anticanonical_degree(self, n, d):
        """(n+1)! DF = -(a w_f + b w_h) with the printed a(beta) when d = n+1."""
        rng = random.Random(7 * n + d)
        checked = 0
        for lam in subgroups(n, d, 30):
            pair = random_pair(rng, n, d, terms=min(4, len(monomials_of_degree(n + 2, d))))
            if not limit_pair(pair, lam)[2]:
                continue
            for beta in (Fraction(1, 2), Fraction(9, 10)):
                lhs = math.factorial(n + 1) * cm.df_of_one_ps(pair, lam, beta)
                hm = cm.a_beta(n, d, beta) * weight_f(pair.f, lam) + cm.b_beta(n, d, beta) * weight_h(pair.h, lam)
                assert lhs == -hm
                checked += 1
        assert checked > 0

    @pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (3, 3)])
    def test_dictionary_below_anticanonical_degree(self, n, d):
        """For d < n+1 the weights match the slope-corrected a(beta), not the printed one."""
        rng = random.Random(11 * n + d)
        mismatch = False
        for lam in subgroups(n, d, 40):
            pair = random_pair(rng, n, d, terms=4)
            if not limit_pair(pair, lam)[2]:
                continue
            wf, wh = weight_f(pair.f, lam), weight_h(pair.h, lam)
            for beta in (Fraction(1, 2), Fraction(9, 10)):
                lhs = math.factorial(n + 1) * cm.df_of_one_ps(pair, lam, beta)
                corrected = cm.a_beta_slope_corrected(n, d, beta) * wf + cm.b_beta(n, d, beta) * wh
                assert lhs == -corrected
                printed = cm.a_beta(n, d, beta) * wf + cm.b_beta(n, d, beta) * wh
                mismatch |= lhs != -printed
        assert mismatch

    def test_slope_corrected_agrees_at_anticanonical_degree(self):
        for n in (1, 2, 3):
            for beta in (Fraction(1, 4), Fraction(2, 3)):
                assert cm.a_beta_slope_corrected(n, n + 1, beta) == cm.a_beta(n, n + 1, beta)


class TestIntersections:
    def test_boundary(self):
        assert cm.cm_degree_from_intersections(2, 1, 1, -8, 8, -5, 1) == 2 * -8 + 3 * 8

    @pytest.mark.parametrize("n,d", ND)
    def test_pencils_reproduce_coefficients(self, n, d):
        for beta in (Fraction(9, 10), Fraction(1, 3)):
            assert cm.cm_degree_from_intersections(n, *cm.fixed_hyperplane_pencil(n, d), beta) == cm.a_beta(n, d, beta)
            assert cm.cm_degree_from_intersections(n, *cm.fixed_surface_pencil(n, d), beta) == cm.b_beta(n, d, beta)

    def test_cubic_surface_pencil_values(self):
        assert cm.fixed_hyperplane_pencil(2, 3) == (1, 1, -8, 8, -5)
        assert cm.cm_degree_from_intersections(2, *cm.fixed_hyperplane_pencil(2, 3), Fraction(9, 10)) == Fraction(81, 10)
        assert cm.cm_degree_from_intersections(2, *cm.fixed_surface_pencil(2, 3), Fraction(9, 10)) == Fraction(9, 10)

    def test_pencil_numbers_from_bidegree_intersection(self):
        """Oracle: expand (r H2 - H1)^n (H1 + d H2) on P^1 x P^{n+1} by hand-rolled binomials."""
        for n, d in ND:
            r = n + 2 - d
            # only H1 * H2^{n+1} survives; coefficient extraction
            I1 = r ** (n + 1) - (n + 1) * r**n * d
            I3 = r**n - n * r ** (n - 1) * d
            _, _, got1, got2, got3 = cm.fixed_hyperplane_pencil(n, d)
            assert (got1, got2, got3) == (I1, -I1, I3)
