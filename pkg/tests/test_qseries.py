import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcadjoint.qseries import (
    CharacterMod4,
    FormMeta,
    QSeries,
    apply_D,
    bernoulli_number,
    make_eisenstein,
    make_eta_product,
    make_theta,
    series_add,
    series_mul,
    zero_series,
)

from oracles import (
    bernoulli_oracle,
    delta_4_6_oracle,
    delta_oracle,
    naive_mul,
    two_squares_count,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
small_series = st.lists(rationals, min_size=1, max_size=12).map(QSeries)


def ints(series):
    return [int(c) for c in series.coeffs]


class TestSeriesAdd:
    def test_self_cancellation(self):
        a = QSeries([1, 2, 3, Fraction(5, 7)])
        assert series_add(a, a, 1, -1).is_zero()

    def test_add_zero(self):
        a = QSeries([1, 2, 3])
        assert series_add(a, zero_series(3), 0, 1).is_zero()
        assert series_add(a, zero_series(3), 1, 1).coeffs == a.coeffs

    def test_theta_doubling(self):
        theta = make_theta(6)
        doubled = series_add(theta, theta, 1, 1)
        assert ints(doubled) == [2, 4, 0, 0, 4, 0]

    def test_precision_is_min(self):
        a = QSeries([1, 2, 3, 4])
        b = QSeries([1, 1])
        assert series_add(a, b).precision == 2

    def test_meta_kept_when_compatible(self):
        t = make_theta(5)
        s = series_add(t, t)
        assert s.meta is not None and s.meta.twice_weight == 1
        assert not s.meta.is_cusp_at_infinity

    def test_meta_dropped_on_mismatch(self):
        t = make_theta(5)
        e = make_eisenstein(4, 5)
        assert series_add(t, e).meta is None


class TestSeriesMul:
    def test_one_plus_q_times_one_minus_q(self):
        a = QSeries([1, 1, 0])
        b = QSeries([1, -1, 0])
        assert series_mul(a, b).coeffs == (1, 0, -1)

    def test_theta_squared_counts_lattice_points(self):
        theta = make_theta(50)
        sq = series_mul(theta, theta)
        for n in range(50):
            assert sq.coeff(n) == two_squares_count(n)

    def test_multiplicative_identity(self):
        delta = make_eta_product([(1, 24)], 5)
        one = QSeries([1, 0, 0, 0, 0])
        assert series_mul(delta, one).coeffs == delta.coeffs

    def test_meta_combination(self):
        t = make_theta(8)
        e = make_eisenstein(4, 8)
        prod = series_mul(t, e)
        assert prod.meta.twice_weight == 9
        assert prod.meta.level == 4
        assert prod.meta.character is CharacterMod4.TRIVIAL

    def test_chi_minus4_squares_to_trivial(self):
        meta = FormMeta(1, 4, CharacterMod4.CHI_MINUS4, False)
        t = make_theta(5).with_meta(meta)
        assert series_mul(t, t).meta.character is CharacterMod4.TRIVIAL

    def test_dense_matches_naive_oracle(self):
        # force the dense integer route: no zero coefficients at all
        a = QSeries([Fraction(i * i + 1) for i in range(80)])
        b = QSeries([Fraction(3 * i - 40) for i in range(80)])
        assert list(series_mul(a, b).coeffs) == naive_mul(a.coeffs, b.coeffs, 80)

    def test_dense_rational_route(self):
        a = QSeries([Fraction(1, i + 2) for i in range(70)])
        b = QSeries([Fraction(i, 3) + 1 for i in range(70)])
        assert list(series_mul(a, b).coeffs) == naive_mul(a.coeffs, b.coeffs, 70)

    @settings(max_examples=60, deadline=None)
    @given(small_series, small_series)
    def test_commutative(self, a, b):
        assert series_mul(a, b).coeffs == series_mul(b, a).coeffs

    @settings(max_examples=40, deadline=None)
    @given(small_series, small_series, small_series)
    def test_associative(self, a, b, c):
        left = series_mul(series_mul(a, b), c)
        right = series_mul(a, series_mul(b, c))
        prec = min(left.precision, right.precision)
        assert left.coeffs[:prec] == right.coeffs[:prec]


class TestApplyD:
    def test_order_zero_is_identity(self):
        a = QSeries([5, Fraction(1, 3), 2])
        assert apply_D(a, 0).coeffs == a.coeffs

    def test_single_derivative(self):
        a = QSeries([0, 1, 1])
        assert apply_D(a, 1).coeffs == (0, 1, 2)

    def test_on_theta(self):
        theta = make_theta(10)
        d2 = apply_D(theta, 2)
        assert ints(d2) == [0, 2, 0, 0, 32, 0, 0, 0, 0, 162]

    def test_meta_dropped(self):
        assert apply_D(make_theta(5), 1).meta is None

    @settings(max_examples=50, deadline=None)
    @given(small_series, st.integers(0, 3), st.integers(0, 3))
    def test_composition(self, a, r, s):
        assert apply_D(a, r + s).coeffs == apply_D(apply_D(a, r), s).coeffs

    @settings(max_examples=50, deadline=None)
    @given(small_series, small_series)
    def test_leibniz_rule(self, a, b):
        lhs = apply_D(series_mul(a, b), 1)
        rhs = series_add(
            series_mul(apply_D(a, 1), b), series_mul(a, apply_D(b, 1))
        )
        assert lhs.coeffs == rhs.coeffs


class TestTheta:
    def test_first_ten(self):
        assert ints(make_theta(10)) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]

    def test_precision_one(self):
        assert ints(make_theta(1)) == [1]

    def test_q25(self):
        assert make_theta(26).coeff(25) == 2

    def test_meta(self):
        meta = make_theta(3).meta
        assert meta.twice_weight == 1
        assert meta.level == 4
        assert not meta.is_cusp_at_infinity

    def test_rejects_zero_precision(self):
        with pytest.raises(ValueError):
            make_theta(0)


class TestEtaProduct:
    def test_delta_against_oracle(self):
        delta = make_eta_product([(1, 24)], 51)
        assert list(delta.coeffs) == delta_oracle(51)
        assert ints(delta)[1:5] == [1, -24, 252, -1472]

    def test_eta2z_12_against_oracle(self):
        d46 = make_eta_product([(2, 12)], 50)
        assert list(d46.coeffs) == delta_4_6_oracle(50)
        assert d46.coeff(1) == 1

    def test_fractional_order_rejected(self):
        with pytest.raises(ValueError, match="non-integral order"):
            make_eta_product([(1, 1)], 10)

    def test_negative_exponent_inverse(self):
        # eta(z)^24 * eta(z)^-24 has trivial total order and equals 1
        prod = make_eta_product([(1, 24), (1, -24)], 20)
        assert ints(prod) == [1] + [0] * 19

    def test_shift_beyond_precision(self):
        assert make_eta_product([(1, 24)], 1).is_zero()


class TestEisenstein:
    def test_e4(self):
        assert ints(make_eisenstein(4, 3)) == [1, 240, 2160]

    def test_e6(self):
        assert ints(make_eisenstein(6, 3)) == [1, -504, -16632]

    def test_weight_two_rejected(self):
        with pytest.raises(ValueError):
            make_eisenstein(2, 10)

    def test_odd_weight_rejected(self):
        with pytest.raises(ValueError):
            make_eisenstein(5, 10)

    def test_bernoulli_against_oracle(self):
        for n in (4, 6, 8, 10, 12):
            assert bernoulli_number(n) == bernoulli_oracle(n)
        assert bernoulli_number(4) == Fraction(-1, 30)
        assert bernoulli_number(6) == Fraction(1, 42)


class TestJsonFormat:
    def test_round_trip(self):
        t = make_theta(7)
        again = QSeries.from_json_dict(json.loads(json.dumps(t.to_json_dict())))
        assert again.coeffs == t.coeffs
        assert again.meta.twice_weight == t.meta.twice_weight
        assert again.meta.character is t.meta.character

    def test_coeff_strings_are_lowest_terms(self):
        d = QSeries([Fraction(2, 4)]).to_json_dict()
        assert d["coeffs"] == ["1/2"]

    def test_meta_free_series(self):
        d = QSeries([1, 2]).to_json_dict()
        assert d["twice_weight"] is None
        assert QSeries.from_json_dict(d).meta is None


class TestFormMeta:
    def test_half_integral_weight_needs_level_4(self):
        with pytest.raises(ValueError):
            FormMeta(1, 1, CharacterMod4.TRIVIAL, False)

    def test_immutability(self):
        t = make_theta(3)
        with pytest.raises(AttributeError):
            t.coeffs = ()

    def test_chi_minus4_values(self):
        chi = CharacterMod4.CHI_MINUS4
        assert [chi.value_at(d) for d in range(1, 6)] == [1, 0, -1, 0, 1]
