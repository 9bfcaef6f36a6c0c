import cmath
import math

import numpy as np
import pytest

from conftest import (
    bisect_boundary,
    concurrence_oracle,
    numeric_c,
    r_eigs_oracle,
    random_complex_state,
    random_nonneg_state,
    random_product_state,
    random_signed_real_state,
)
from intraent import (
    ChannelKind,
    ChannelSpec,
    ComplexStateUnsupported,
    Locality,
    PureState4,
    ad_intra_parts,
    apply_channel,
    build_channel,
    concurrence_ad_inter,
    concurrence_ad_intra,
    concurrence_ad_intra_polar,
    concurrence_dp_intra,
    concurrence_numeric,
    concurrence_pd_intra,
    density_from_pure,
    r_matrix,
    r_spectrum,
    state_from_cartesian,
    to_polar,
    validate_density,
)

AD_INTRA_TOL = 1e-10
OTHER_TOL = 1e-8
INV_SQRT2 = 1 / math.sqrt(2)

BELL = state_from_cartesian(INV_SQRT2, 0, 0, INV_SQRT2)


def evolved(state, kind, locality, p):
    spec = ChannelSpec(kind, locality, p)
    return apply_channel(density_from_pure(state), build_channel(spec))


class TestRMatrix:
    def test_maximally_mixed(self):
        rho = validate_density(np.eye(4) / 4.0)
        assert np.abs(r_matrix(rho) - np.eye(4) / 16.0).max() < 1e-15

    def test_bell_projector_is_fixed_point(self):
        rho = density_from_pure(BELL)
        assert np.abs(r_matrix(rho) - rho.m).max() < 1e-15

    def test_ground_projector_gives_zero(self):
        rho = density_from_pure(state_from_cartesian(1, 0, 0, 0))
        assert np.abs(r_matrix(rho)).max() == 0.0

    def test_trace_is_real(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            rho = evolved(random_complex_state(rng), ChannelKind.DEPOLARIZING,
                          Locality.INTRAPARTICLE, float(rng.uniform()))
            assert abs(np.trace(r_matrix(rho)).imag) < 1e-10


class TestRSpectrum:
    def test_bell(self):
        lam = r_spectrum(density_from_pure(BELL)).lambdas
        assert abs(lam[0] - 1.0) < 1e-12
        assert lam[1] == lam[2] == lam[3] == 0.0

    def test_product_state(self):
        lam = r_spectrum(density_from_pure(state_from_cartesian(1, 0, 0, 0))).lambdas
        assert lam == (0.0, 0.0, 0.0, 0.0)

    def test_ad_intra_output_has_two_nonzero(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            rho = evolved(random_complex_state(rng), ChannelKind.AMPLITUDE_DAMPING,
                          Locality.INTRAPARTICLE, float(rng.uniform(0.05, 0.95)))
            lam = r_spectrum(rho).lambdas
            assert lam[2] < 1e-9 and lam[3] < 1e-9

    def test_matches_general_eigensolver(self):
        rng = np.random.default_rng(33)
        kinds = list(ChannelKind)
        locs = list(Locality)
        for _ in range(200):
            rho = evolved(random_complex_state(rng), kinds[rng.integers(3)],
                          locs[rng.integers(2)], float(rng.uniform()))
            got = np.array(r_spectrum(rho).lambdas)
            want = r_eigs_oracle(rho.m)
            assert np.abs(got - want).max() < 1e-8

    def test_descending_and_nonnegative(self):
        rng = np.random.default_rng(34)
        for _ in range(50):
            rho = evolved(random_complex_state(rng), ChannelKind.PHASE_DAMPING,
                          Locality.INTERPARTICLE, float(rng.uniform()))
            lam = r_spectrum(rho).lambdas
            assert all(x >= 0.0 for x in lam)
            assert all(lam[i] >= lam[i + 1] for i in range(3))


class TestNumeric:
    def test_bell_is_maximal(self):
        assert abs(concurrence_numeric(density_from_pure(BELL)) - 1.0) < 1e-12

    def test_product_states_are_zero(self):
        rng = np.random.default_rng(35)
        for _ in range(25):
            rho = density_from_pure(random_product_state(rng))
            assert concurrence_numeric(rho) < 1e-9

    def test_pure_state_value(self):
        rng = np.random.default_rng(36)
        for _ in range(50):
            s = random_complex_state(rng)
            a, b, c, d = s.amplitudes
            expected = 2.0 * abs(a * d - b * c)
            assert abs(concurrence_numeric(density_from_pure(s)) - expected) < 1e-10

    def test_bounds(self):
        rng = np.random.default_rng(37)
        kinds = list(ChannelKind)
        locs = list(Locality)
        for _ in range(200):
            rho = evolved(random_complex_state(rng), kinds[rng.integers(3)],
                          locs[rng.integers(2)], float(rng.uniform()))
            c = concurrence_numeric(rho)
            assert 0.0 <= c <= 1.0


class TestAdIntraClosedForm:
    def test_no_noise_limit(self):
        rng = np.random.default_rng(38)
        s = random_complex_state(rng)
        a, b, c, d = s.amplitudes
        assert abs(concurrence_ad_intra(s, 0.0) - 2 * abs(a * d - b * c)) < 1e-15

    def test_full_noise_kills_entanglement(self):
        assert concurrence_ad_intra(BELL, 1.0) == 0.0

    def test_uniform_state_half_strength(self):
        s = state_from_cartesian(0.5, 0.5, 0.5, 0.5)
        # frozen from the numeric spectrum path: 2 * (1/4)(1 - 1/sqrt(2)) / sqrt(2)
        expected = 0.10355339059327373
        assert abs(concurrence_ad_intra(s, 0.5) - expected) < 1e-15
        assert abs(concurrence_numeric(evolved(s, ChannelKind.AMPLITUDE_DAMPING,
                                               Locality.INTRAPARTICLE, 0.5)) - expected) < AD_INTRA_TOL

    def test_matches_numeric_on_complex_states(self):
        rng = np.random.default_rng(39)
        for _ in range(300):
            s = random_complex_state(rng)
            p = float(rng.uniform())
            closed = concurrence_ad_intra(s, p)
            numeric = numeric_c(s, ChannelKind.AMPLITUDE_DAMPING, Locality.INTRAPARTICLE, p)
            assert abs(closed - numeric) < AD_INTRA_TOL

    def test_global_phase_invariance(self):
        rng = np.random.default_rng(40)
        s = random_complex_state(rng)
        phase = cmath.exp(0.77j)
        rotated = PureState4(*(phase * z for z in s.amplitudes))
        for p in (0.0, 0.4, 0.9):
            assert abs(concurrence_ad_intra(s, p) - concurrence_ad_intra(rotated, p)) < 1e-12

    def test_rejects_bad_p(self):
        from intraent import ParamOutOfRange

        with pytest.raises(ParamOutOfRange):
            concurrence_ad_intra(BELL, 1.2)


class TestAdIntraParts:
    def test_no_noise(self):
        rng = np.random.default_rng(41)
        s = random_complex_state(rng)
        a, b, c, d = s.amplitudes
        parts = ad_intra_parts(s, 0.0)
        assert abs(parts.s - 4 * abs(a * d - b * c) ** 2) < 1e-12
        assert parts.t == 0.0

    def test_full_noise(self):
        rng = np.random.default_rng(42)
        parts = ad_intra_parts(random_complex_state(rng), 1.0)
        assert abs(parts.s) < 1e-15 and abs(parts.t) < 1e-15

    def test_difference_is_squared_concurrence(self):
        rng = np.random.default_rng(43)
        for _ in range(200):
            s = random_complex_state(rng)
            p = float(rng.uniform())
            parts = ad_intra_parts(s, p)
            assert parts.s >= parts.t >= -1e-10
            c = concurrence_ad_intra(s, p)
            assert abs(math.sqrt(max(parts.s - parts.t, 0.0)) - c) < AD_INTRA_TOL


class TestAdIntraPolar:
    def test_aligned_zero(self):
        # |b||c| sqrt(1-P) = |a||d| with delta_theta = 0 makes the vectors cancel
        s = state_from_cartesian(0.3, math.sqrt(0.71), 0.2, 0.4)
        p_esd = 1.0 - (0.3 * 0.4 / (math.sqrt(0.71) * 0.2)) ** 2
        assert concurrence_ad_intra_polar(to_polar(s), p_esd) < 1e-12

    def test_anti_aligned_maximum(self):
        mags = (0.3, math.sqrt(0.71), 0.2, 0.4)
        from intraent import PolarParams

        pp = PolarParams(*mags, 0.0, 0.0, 0.0, math.pi)
        for p in (0.0, 0.3, 0.7):
            root = math.sqrt(1 - p)
            expected = 2 * (mags[1] * mags[2] * root + mags[0] * mags[3]) * root
            assert abs(concurrence_ad_intra_polar(pp, p) - expected) < 1e-12

    def test_matches_cartesian_form(self):
        rng = np.random.default_rng(44)
        for _ in range(200):
            s = random_complex_state(rng)
            p = float(rng.uniform())
            assert abs(concurrence_ad_intra_polar(to_polar(s), p)
                       - concurrence_ad_intra(s, p)) < 1e-12

    def test_depends_only_on_delta_theta(self):
        from intraent import PolarParams, state_from_polar

        mags = (0.3, math.sqrt(0.71), 0.2, 0.4)
        # two phase assignments per row, identical combination each time
        for phases_a, phases_b in (
            ((0.0, 0.3, 0.2, 0.5), (1.0, 1.3, 0.7, 1.0)),    # delta = 0
            ((0.0, 0.3, 0.0, 0.0), (0.2, 0.4, 0.3, 0.2)),    # delta = 0.3
            ((0.1, 0.0, 0.0, 0.4), (1.1, 1.2, 1.3, 1.9)),    # delta = -0.5
        ):
            va = state_from_polar(PolarParams(*mags, *phases_a))
            vb = state_from_polar(PolarParams(*mags, *phases_b))
            for p in (0.1, 0.6):
                assert abs(concurrence_ad_intra(va, p) - concurrence_ad_intra(vb, p)) < 1e-12


class TestAdInter:
    def test_no_noise_limit(self):
        rng = np.random.default_rng(45)
        s = random_nonneg_state(rng)
        a, b, c, d = (z.real for z in s.amplitudes)
        assert abs(concurrence_ad_inter(s, 0.0) - 2 * abs(a * d - b * c)) < 1e-14

    def test_d_zero_family_decays_linearly(self):
        s = state_from_cartesian(0.25, math.sqrt(7 / 8), 0.25, 0.0)
        c0 = 2 * math.sqrt(7 / 8) * 0.25  # = 0.46770717334674265
        assert abs(concurrence_ad_inter(s, 0.0) - 0.46770717334674265) < 1e-15
        for p in (0.2, 0.5, 0.8):
            assert abs(concurrence_ad_inter(s, p) - c0 * (1 - p)) < 1e-12

    def test_monotone_decay_without_revival(self):
        s = state_from_cartesian(0.25, math.sqrt(1 - 0.125 - 0.16), 0.25, 0.4)
        grid = np.linspace(0.0, 1.0, 201)
        values = [concurrence_ad_inter(s, float(p)) for p in grid]
        assert all(values[i + 1] <= values[i] + 1e-12 for i in range(len(values) - 1))

    def test_matches_numeric_on_real_states(self):
        rng = np.random.default_rng(46)
        for _ in range(300):
            s = random_nonneg_state(rng)
            p = float(rng.uniform())
            closed = concurrence_ad_inter(s, p)
            numeric = numeric_c(s, ChannelKind.AMPLITUDE_DAMPING, Locality.INTERPARTICLE, p)
            assert abs(closed - numeric) < OTHER_TOL

    def test_rejects_complex_and_negative_states(self):
        with pytest.raises(ComplexStateUnsupported):
            concurrence_ad_inter(state_from_cartesian(0.5j, 0.5, 0.5, 0.5), 0.3)
        with pytest.raises(ComplexStateUnsupported):
            concurrence_ad_inter(state_from_cartesian(-0.5, 0.5, 0.5, 0.5), 0.3)


class TestPdIntra:
    def test_no_noise_limit(self):
        rng = np.random.default_rng(47)
        s = random_complex_state(rng)
        a, b, c, d = s.amplitudes
        assert abs(concurrence_pd_intra(s, 0.0) - 2 * abs(a * d - b * c)) < 1e-13

    def test_fully_dephased_is_separable(self):
        rng = np.random.default_rng(48)
        for _ in range(20):
            s = random_complex_state(rng)
            assert concurrence_pd_intra(s, 1.0) < 1e-12
            assert numeric_c(s, ChannelKind.PHASE_DAMPING, Locality.INTRAPARTICLE, 1.0) < 1e-12

    def test_sudden_death_point_of_reference_state(self):
        s = state_from_cartesian(0.6, 0.4, 0.5, math.sqrt(0.23))
        # ad > bc here, so the zero sits at (ad - bc)/ad
        expected = 1.0 - 0.2 / (0.6 * math.sqrt(0.23))

        def f(p):
            return concurrence_pd_intra(s, p)

        assert f(expected - 0.01) > 1e-4
        assert f(min(expected + 0.01, 1.0)) == 0.0
        crossing = bisect_boundary(f, expected - 0.01, expected + 0.01)
        assert abs(crossing - expected) < 1e-6
        assert abs(expected - 0.30495) < 1e-5

    def test_matches_numeric_real_and_complex(self):
        rng = np.random.default_rng(49)
        for draw in range(300):
            s = random_complex_state(rng) if draw % 2 else random_signed_real_state(rng)
            p = float(rng.uniform())
            closed = concurrence_pd_intra(s, p)
            numeric = numeric_c(s, ChannelKind.PHASE_DAMPING, Locality.INTRAPARTICLE, p)
            assert abs(closed - numeric) < OTHER_TOL


class TestDpIntra:
    def test_no_noise_limit(self):
        rng = np.random.default_rng(50)
        s = random_complex_state(rng)
        a, b, c, d = s.amplitudes
        assert abs(concurrence_dp_intra(s, 0.0) - 2 * abs(a * d - b * c)) < 1e-13

    def test_bell_dies_at_two_thirds(self):
        assert concurrence_dp_intra(BELL, 2.0 / 3.0) < 1e-12
        assert concurrence_dp_intra(BELL, 2.0 / 3.0 - 0.02) > 1e-3
        assert concurrence_dp_intra(BELL, 2.0 / 3.0 + 0.02) == 0.0

    def test_full_strength_is_zero(self):
        rng = np.random.default_rng(51)
        assert concurrence_dp_intra(random_complex_state(rng), 1.0) == 0.0

    def test_matches_numeric_real_and_complex(self):
        rng = np.random.default_rng(52)
        for draw in range(300):
            s = random_complex_state(rng) if draw % 2 else random_signed_real_state(rng)
            p = float(rng.uniform())
            closed = concurrence_dp_intra(s, p)
            numeric = numeric_c(s, ChannelKind.DEPOLARIZING, Locality.INTRAPARTICLE, p)
            assert abs(closed - numeric) < OTHER_TOL


def test_batched_numeric_path_matches_scalar_path():
    from intraent.channels import evolve_pure_grid
    from intraent.concurrence import _concurrence_numeric_grid

    rng = np.random.default_rng(54)
    grid = np.linspace(0.0, 1.0, 33)
    for kind in ChannelKind:
        for locality in Locality:
            s = random_complex_state(rng)
            batched = _concurrence_numeric_grid(
                evolve_pure_grid(s.vector, kind, locality, grid)
            )
            for i, p in enumerate(grid):
                assert abs(batched[i] - numeric_c(s, kind, locality, float(p))) < 1e-13


def test_numeric_path_agrees_with_plain_eigensolver_oracle():
    rng = np.random.default_rng(53)
    kinds = list(ChannelKind)
    locs = list(Locality)
    for _ in range(200):
        rho = evolved(random_complex_state(rng), kinds[rng.integers(3)],
                      locs[rng.integers(2)], float(rng.uniform()))
        assert abs(concurrence_numeric(rho) - concurrence_oracle(rho.m)) < 1e-7
