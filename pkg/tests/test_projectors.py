import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from flatproj import (
    DeltaFamily,
    DomainError,
    FlatteningParams,
    GaussOrientation,
    PointProjectorSeries,
    SwitchingSpec,
    TransientZoneError,
    delta_seq,
    fourier_modulation,
    kappa,
    make_switching_function,
    point_projector_apply,
    theta_flat,
    zeta_derivative,
    zeta_flat,
)

LORENTZ = DeltaFamily.LORENTZ
GAUSS = DeltaFamily.GAUSS

depths = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False)
positions = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)
families = st.sampled_from([LORENTZ, GAUSS])


class TestDeltaSeq:
    def test_lorentz_peak(self):
        assert delta_seq(0.0, FlatteningParams(1.0)) == pytest.approx(1.0 / math.pi, abs=1e-12)

    def test_gauss_peak(self):
        p = FlatteningParams(1.0, family=GAUSS)
        assert delta_seq(0.0, p) == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-12)

    def test_unit_mass_quadrature_oracle(self):
        # adaptive quadrature over [-400, 400]; the Lorentz tail ~ a/(pi*400)
        # per side accounts for the 2e-3 budget
        p = FlatteningParams(1.0)
        mass, err = quad(lambda x: delta_seq(x, p), -400.0, 400.0, limit=200)
        assert err < 1e-7
        assert mass == pytest.approx(1.0, abs=2e-3)

    @given(x=positions, a=depths, family=families)
    @settings(max_examples=100, deadline=None)
    def test_positive_and_even(self, x, a, family):
        p = FlatteningParams(a, family=family)
        v = delta_seq(x, p)
        assert v >= 0.0
        if family is LORENTZ or abs(x / a) < 25.0:  # Gauss underflows beyond
            assert v > 0.0
        assert delta_seq(-x, p) == pytest.approx(v, rel=1e-13)

    def test_rejects_bad_input(self):
        with pytest.raises(DomainError):
            delta_seq(np.nan, FlatteningParams(1.0))
        with pytest.raises(DomainError):
            delta_seq(0.0, FlatteningParams(0.0))
        with pytest.raises(DomainError):
            FlatteningParams(-1.0)


class TestThetaFlat:
    def test_quarter_at_origin_any_depth(self):
        for a in (0.01, 0.1, 0.5, 1.0):
            assert theta_flat(0.0, FlatteningParams(a)) == pytest.approx(0.25, abs=1e-12)

    def test_gauss_half_at_depth(self):
        p = FlatteningParams(0.3, family=GAUSS)
        assert theta_flat(0.3, p) == pytest.approx(0.5, abs=1e-14)
        assert theta_flat(0.3, p, GaussOrientation.DECREASING) == pytest.approx(0.5, abs=1e-14)

    def test_value_matches_delta_integral_oracle(self):
        # independent oracle: integrate the delta sequence from a to infinity
        x, a = 10.0, 0.1
        p = FlatteningParams(a)
        oracle, err = quad(lambda xi: delta_seq(x - xi, p), a, np.inf, limit=400)
        assert err < 1e-7
        got = theta_flat(x, p)
        assert got == pytest.approx(oracle, abs=1e-8)
        assert got == pytest.approx(0.5 + math.atan(99.0) / math.pi, abs=1e-14)
        # frozen quadrature-oracle value
        assert got == pytest.approx(0.9967848579688466, abs=1e-9)

    def test_sharp_branch(self):
        p = FlatteningParams(0.0, 0.0)
        assert theta_flat(0.0, p) == 0.0  # open-interval convention
        assert theta_flat(1e-300, p) == 1.0
        assert theta_flat(-1e-300, p) == 0.0

    def test_negative_depth_rejected(self):
        with pytest.raises(DomainError):
            FlatteningParams(-0.1, 0.1)

    @given(x=positions, a=depths, family=families)
    @settings(max_examples=150, deadline=None)
    def test_range(self, x, a, family):
        v = theta_flat(x, FlatteningParams(a, family=family))
        assert 0.0 <= v <= 1.0

    def test_lorentz_strictly_increasing(self):
        x = np.linspace(-30.0, 30.0, 10_000)
        p = FlatteningParams(0.7)
        assert np.all(delta_seq(x - 0.7, p) > 0.0)  # closed-form derivative
        assert np.all(np.diff(theta_flat(x, p)) > 0.0)

    @pytest.mark.parametrize("family", [LORENTZ, GAUSS])
    def test_derivative_identity_vs_finite_differences(self, family):
        # d/dx theta(x|a) = delta(x - a | a); central differences, h = 1e-5
        a, h = 0.5, 1e-5
        p = FlatteningParams(a, family=family)
        x = np.linspace(-10.0, 10.0, 801)
        fd = (theta_flat(x + h, p) - theta_flat(x - h, p)) / (2.0 * h)
        analytic = delta_seq(x - a, p)
        # relative where the 1e-7 band exceeds the FD round-off (~eps/h);
        # the Gauss tails underflow and only admit an absolute comparison
        big = analytic > 1e-4
        assert np.max(np.abs(fd[big] - analytic[big]) / analytic[big]) < 1e-7
        assert np.max(np.abs(fd[~big] - analytic[~big]), initial=0.0) < 1e-10

    @staticmethod
    def _log_derivative_fd(x, p, h):
        # five-point central stencil keeps the round-off of ln theta below
        # the 1e-9 comparison floor
        lt = lambda xx: np.log(theta_flat(xx, p))
        return (-lt(x + 2 * h) + 8 * lt(x + h) - 8 * lt(x - h) + lt(x - 2 * h)) / (12 * h)

    def test_log_derivative_identity(self):
        # d/dx ln theta = delta(x - a | a)/theta wherever theta > 1e-6; the
        # 1e-9 band is widened by the finite-difference conditioning term
        # eps/(theta*h), which dominates the oracle noise for tiny theta
        a, h = 0.5, 1e-4
        for family in (LORENTZ, GAUSS):
            p = FlatteningParams(a, family=family)
            x = np.linspace(-40.0, 10.0, 501)
            th = theta_flat(x, p)
            keep = th > 1e-6
            x, th = x[keep], th[keep]
            fd = self._log_derivative_fd(x, p, h)
            analytic = delta_seq(x - a, p) / theta_flat(x, p)
            allowance = 1e-9 * (1.0 + np.abs(analytic)) + 3e-12 / th
            assert np.all(np.abs(fd - analytic) < allowance)
            resolvable = th > 1e-2
            rel = np.abs(fd - analytic) / (1.0 + np.abs(analytic))
            assert np.max(rel[resolvable]) < 1e-9

    def test_sharp_limit_bound(self):
        a = 1e-3
        p = FlatteningParams(a)
        x = np.concatenate([np.linspace(0.1, 50.0, 20_000),
                            -np.linspace(0.1, 50.0, 20_000)])
        sharp = np.where(x > 0, 1.0, 0.0)
        sup = np.max(np.abs(theta_flat(x, p) - sharp))
        assert sup <= a / (math.pi * (0.1 - a)) + 1e-4
        assert sup < 0.01

    def test_idempotency_ladder(self):
        # |theta^2 - theta| decreases monotonically as the depth shrinks
        for x in (-1.0, -0.5, 0.5, 1.0, 2.0):
            defects = []
            for a in (1e-1, 1e-2, 1e-3):
                t = theta_flat(x, FlatteningParams(a))
                defects.append(abs(t * t - t))
            assert defects[0] > defects[1] > defects[2]


class TestZetaFlat:
    def test_half_at_origin_symmetric(self):
        for a in (0.01, 0.1, 1.0):
            assert zeta_flat(0.0, FlatteningParams(a, a)) == pytest.approx(0.5, abs=1e-12)

    def test_sharp_point_projector(self):
        p = FlatteningParams(0.0, 0.0)
        assert zeta_flat(0.0, p) == 1.0
        assert zeta_flat(0.3, p) == 0.0
        with pytest.raises(DomainError):
            zeta_flat(0.0, FlatteningParams(0.0, 1.0))

    def test_partition_exact(self):
        x, a, b = 2.7, 0.4, 0.9
        up = theta_flat(x, FlatteningParams(a, a))
        down = theta_flat(-x, FlatteningParams(b, b))
        bump = zeta_flat(x, FlatteningParams(a, b))
        assert abs(up + bump + down - 1.0) < 1e-14

    @given(x=positions, a=depths, b=depths, family=families)
    @settings(max_examples=150, deadline=None)
    def test_partition_property(self, x, a, b, family):
        up = theta_flat(x, FlatteningParams(a, family=family))
        down = theta_flat(-x, FlatteningParams(b, family=family))
        bump = zeta_flat(x, FlatteningParams(a, b, family))
        assert abs(up + bump + down - 1.0) < 1e-13

    @given(x=positions, a=depths, family=families)
    @settings(max_examples=100, deadline=None)
    def test_range_symmetric_depths(self, x, a, family):
        # the [0, 1] range is a symmetric-depth property; for a != b the bump
        # can dip slightly negative far from the boundary
        v = zeta_flat(x, FlatteningParams(a, a, family))
        assert -1e-15 <= v <= 1.0

    def test_even_for_symmetric_depths(self):
        x = np.linspace(-5, 5, 101)
        p = FlatteningParams(0.6, 0.6)
        assert np.allclose(zeta_flat(x, p), zeta_flat(-x, p), atol=1e-15)

    def test_vanishes_at_infinity(self):
        p = FlatteningParams(0.5, 0.5)
        assert abs(zeta_flat(1e6, p)) < 1e-9
        assert abs(zeta_flat(-1e6, p)) < 1e-9


class TestKappa:
    def test_zero_at_origin_symmetric(self):
        assert kappa(0.0, FlatteningParams(0.5, 0.5)) == pytest.approx(0.0, abs=1e-14)

    def test_finite_difference_oracle(self):
        # central difference of ln zeta with step 1e-6
        p = FlatteningParams(0.5, 0.5)
        z, h = 0.2, 1e-6
        fd = (math.log(zeta_flat(z + h, p)) - math.log(zeta_flat(z - h, p))) / (2 * h)
        assert kappa(z, p) == pytest.approx(fd, rel=1e-6)

    def test_odd_for_symmetric_depths(self):
        p = FlatteningParams(0.5, 0.5)
        assert kappa(0.2, p) == pytest.approx(-kappa(-0.2, p), abs=1e-13)

    def test_outside_zone_raises(self):
        p = FlatteningParams(0.2, 0.2, GAUSS)
        with pytest.raises(TransientZoneError):
            kappa(4.0, p)

    def test_derivative_closed_form(self):
        p = FlatteningParams(0.4, 0.9)
        z = 0.3
        expected = delta_seq(z + 0.9, FlatteningParams(0.9)) - delta_seq(z - 0.4, FlatteningParams(0.4))
        assert zeta_derivative(z, p) == pytest.approx(expected, rel=1e-13)


class TestFourierModulation:
    def test_unity_at_zero(self):
        for family in (LORENTZ, GAUSS):
            for a in (0.0, 0.3, 2.0):
                v = fourier_modulation(0.0, FlatteningParams(a, family=family))
                assert v == pytest.approx(1.0 + 0.0j, abs=1e-15)

    def test_lorentz_point_value(self):
        v = fourier_modulation(2.0, FlatteningParams(0.5))
        assert v == pytest.approx(np.exp(1j * 1.0 - 1.0), abs=1e-14)
        assert abs(v) == pytest.approx(math.exp(-1.0), abs=1e-12)

    @given(k=st.floats(min_value=-30, max_value=30), a=depths, family=families)
    @settings(max_examples=100, deadline=None)
    def test_magnitude_bounded(self, k, a, family):
        assert abs(fourier_modulation(k, FlatteningParams(a, family=family))) <= 1.0 + 1e-12

    def test_fft_oracle_short(self):
        # coarse version of the spectral check: transform of the shifted
        # delta sequence carries exactly the conjugate modulation factor
        from flatproj import Grid, SampledFunction, discrete_fourier

        a = 0.5
        p = FlatteningParams(a)
        grid = Grid.from_span(-800.0, 800.0, 32001)
        sf = SampledFunction(grid, delta_seq(grid.points - a, p))
        spec = discrete_fourier(sf, -1)
        k = spec.grid.points
        keep = np.abs(k) <= 10.0
        expected = np.conj(fourier_modulation(k[keep], p))
        rel = np.abs(spec.values[keep] - expected) / np.abs(expected)
        assert rel.max() < 1e-3


class TestPointProjector:
    def test_pure_delta(self):
        assert point_projector_apply([1.0], PointProjectorSeries((1.0,))) == 1.0

    def test_delta_prime(self):
        assert point_projector_apply([0.0, 3.0], PointProjectorSeries((0.0, 2.0))) == -6.0

    def test_exponential_pairing(self):
        series = PointProjectorSeries((1.0, 0.5, 0.25))
        got = point_projector_apply([1.0, 1.0, 1.0], series)
        assert got == pytest.approx(0.75, abs=1e-15)

    def test_exponential_pairing_smoothed_oracle(self):
        # pair the series against Gauss-smoothed deltas and extrapolate the
        # depth to zero (Richardson in a^2); must land on the exact pairing
        series = PointProjectorSeries((1.0, 0.5, 0.25))
        exact = point_projector_apply([1.0, 1.0, 1.0], series)

        def smoothed(a):
            p = FlatteningParams(a, family=GAUSS)
            total = 0.0
            for n, c in enumerate(series.coefficients):
                pairing, _ = quad(lambda x: delta_seq(x, p) * math.exp(x), -12, 12,
                                  limit=200)
                total += c * (-1.0) ** n * pairing
            return total

        v1, v2 = smoothed(0.1), smoothed(0.05)
        extrapolated = (4.0 * v2 - v1) / 3.0
        assert extrapolated == pytest.approx(exact, abs=1e-4)

    def test_default_series_is_pure_delta(self):
        assert PointProjectorSeries().coefficients == (1.0,)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            point_projector_apply([1.0], PointProjectorSeries((1.0, 2.0)))


class TestSwitchingFunction:
    def test_origin_value(self):
        g = make_switching_function(SwitchingSpec(gamma=2.0))
        v = g([0.0, 0.0, 0.0, 0.0])
        assert 0.0 < v <= 1.0

    def test_evenness(self):
        rng = np.random.default_rng(42)
        x = rng.normal(scale=3.0, size=(100, 4))
        g = make_switching_function(SwitchingSpec(gamma=0.7))
        assert np.max(np.abs(g(x) - g(-x))) < 1e-14

    def test_range_random(self):
        rng = np.random.default_rng(7)
        x = rng.normal(scale=100.0, size=(1000, 4))
        g = make_switching_function(SwitchingSpec(gamma=1.3))
        v = g(x)
        assert np.all(v >= 0.0) and np.all(v <= 1.0)

    def test_decay(self):
        gamma = 0.5
        g = make_switching_function(SwitchingSpec(gamma=gamma))
        far = 1e4 / gamma
        assert g([far, 0.0, 0.0, 0.0]) < 1e-2
        assert g([-far, 0.0, 0.0, 0.0]) < 1e-2

    def test_boosted_axis(self):
        chi = 0.8
        n = (math.cosh(chi), math.sinh(chi), 0.0, 0.0)
        g = make_switching_function(SwitchingSpec(gamma=1.0, n_mu=n))
        assert 0.0 < g([0.0, 0.0, 0.0, 0.0]) <= 1.0
        # direction orthogonal to n in the Minkowski sense leaves s = 0
        x = np.array([math.sinh(chi), math.cosh(chi), 0.0, 0.0])
        assert g(x) == pytest.approx(g([0, 0, 0, 0]), abs=1e-14)

    def test_bad_n_mu(self):
        with pytest.raises(DomainError):
            SwitchingSpec(gamma=1.0, n_mu=(1.0, 0.5, 0.0, 0.0))
