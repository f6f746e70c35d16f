from cmath import exp
from math import (
    pi,
    sqrt,
)

import numpy as np
import pytest
from pydantic import ValidationError

from zakharov.lib.bourgain import (
    BourgainFlavor,
    Estimate,
    MultilinearParams,
    TimeSeq,
    admissible_b_window,
    d_tau_symbol,
    discrete_bourgain_norm,
    embedding_ratio,
    multilinear_ratio,
    norm_equivalence_ratio,
    operator_form_norm,
    projected_product,
    random_sequence,
    transform_form_norm,
)
from zakharov.lib.errors import (
    GridMismatch,
    InvalidExponents,
    ZeroSequence,
)
from zakharov.lib.spectral import (
    Grid,
    Spectrum,
    schrodinger_propagator,
    sobolev_norm,
)

SCHRODINGER, WAVE = BourgainFlavor.SCHRODINGER, BourgainFlavor.WAVE


def direct_norm(coeffs: np.ndarray, tau: float, s: float, b: float, flavor: BourgainFlavor) -> float:
    """Operator-form norm of a one-dimensional sequence by explicit summation over (σ_j, k, n)."""
    length, n = coeffs.shape
    wave_numbers = [k if k < n // 2 else k - n for k in range(n)]
    total = 0.0

    for j in range(length):
        sigma = 2 * pi * j / (length * tau)
        d = (exp(1j * tau * sigma) - 1) / tau

        for index, k in enumerate(wave_numbers):
            phi = k * k if flavor == SCHRODINGER else -abs(k)
            transform = sum(tau * exp(1j * m * tau * (phi - sigma)) * coeffs[m, index] for m in range(length))
            total += (1 + k * k) ** s * (1 + abs(d) ** 2) ** b * abs(transform) ** 2

    return sqrt(total / (length * tau))


def direct_product(v: np.ndarray, w: np.ndarray, retained: list[int], conjugate_v: bool) -> np.ndarray:
    """Grid product of the projected factors through explicit trigonometric sums."""
    n = v.shape[0]
    wave_numbers = [k if k < n // 2 else k - n for k in range(n)]
    points = [2 * pi * j / n for j in range(n)]

    def values(coeffs: np.ndarray) -> list[complex]:
        return [sum(coeffs[i] * exp(1j * k * x) for i, k in enumerate(wave_numbers)) for x in points]

    def coefficients(samples: list[complex]) -> np.ndarray:
        return np.array([sum(f * exp(-1j * k * x) for f, x in zip(samples, points)) / n for k in wave_numbers])

    def projected(coeffs: np.ndarray) -> np.ndarray:
        return np.array([c if k in retained else 0 for c, k in zip(coeffs, wave_numbers)])

    left = v

    if conjugate_v:
        left = coefficients([value.conjugate() for value in values(v)])

    product = [a * b for a, b in zip(values(projected(left)), values(projected(w)))]

    return coefficients(product)


class TestSymbol:
    def test_examples(self):
        tau = 2.0**-4

        assert d_tau_symbol(0.0, tau) == 0
        assert d_tau_symbol(pi / tau, tau) == pytest.approx(-2 / tau)

    def test_periodic(self):
        tau = 0.1
        sigma = np.linspace(-30, 30, 101)

        np.testing.assert_allclose(d_tau_symbol(sigma + 2 * pi / tau, tau), d_tau_symbol(sigma, tau), atol=1e-10)

    def test_taylor_remainder(self):
        tau = 2.0**-3
        sigma = np.linspace(-1, 1, 1000) / tau

        assert np.all(np.abs(d_tau_symbol(sigma, tau) - 1j * sigma) <= tau * sigma**2 / 2 + 1e-12)

    def test_rejects_step(self):
        with pytest.raises(ValueError):
            d_tau_symbol(1.0, 0.0)


class TestNorms:
    @pytest.mark.parametrize("flavor", [SCHRODINGER, WAVE])
    def test_zero_b_is_time_parseval(self, rng, flavor: BourgainFlavor):
        seq = random_sequence(rng, Grid.cube(2, 8), 12, 2.0**-5)
        expected = sqrt(seq.tau * sum(sobolev_norm(entry, 0.75) ** 2 for entry in seq.entries))

        assert discrete_bourgain_norm(seq, 0.75, 0.0, flavor) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("b", [0.0, 0.45, 0.55, 1.0])
    def test_single_entry(self, rng, b: float):
        seq = random_sequence(rng, Grid.cube(1, 8), 1, 0.01)

        assert discrete_bourgain_norm(seq, 0.5, b, WAVE) == pytest.approx(0.1 * sobolev_norm(seq.entries[0], 0.5))

    @pytest.mark.parametrize(("length", "n"), [(8, 8), (16, 4), (16, 8)])
    def test_free_flight(self, random_spectrum, length: int, n: int):
        grid, tau, s = Grid.cube(1, n), 2.0**-4, 0.5
        w = random_spectrum(grid)
        seq = TimeSeq(tau=tau, entries=[schrodinger_propagator(w, step * tau) for step in range(length)])
        expected = sqrt(tau * length) * sobolev_norm(w, s)

        for b in (0.3, 0.55, 0.9):
            assert discrete_bourgain_norm(seq, s, b, SCHRODINGER) == pytest.approx(expected, rel=1e-12)
            assert direct_norm(seq.stack(), tau, s, b, SCHRODINGER) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("flavor", [SCHRODINGER, WAVE])
    def test_direct_summation(self, rng, flavor: BourgainFlavor):
        seq = random_sequence(rng, Grid.cube(1, 8), 16, 2.0**-5)

        assert operator_form_norm(seq, 0.5, 0.45, flavor) == pytest.approx(
            direct_norm(seq.stack(), seq.tau, 0.5, 0.45, flavor), rel=1e-12
        )

    def test_monotone_in_b(self, rng):
        seq = random_sequence(rng, Grid.cube(1, 16), 16, 2.0**-4)
        norms = [discrete_bourgain_norm(seq, 0.0, b, WAVE) for b in np.linspace(0, 1, 11)]

        assert all(a <= b for a, b in zip(norms, norms[1:]))

    @pytest.mark.parametrize("flavor", [SCHRODINGER, WAVE])
    def test_forms_agree_on_resonant_step(self, rng, flavor: BourgainFlavor):
        # with Mτ = 2π the dispersion shifts land on the σ grid, so both forms sum the same weights
        length = 16
        seq = random_sequence(rng, Grid.cube(1, 8), length, 2 * pi / length)

        assert transform_form_norm(seq, 0.5, 0.45, flavor) == pytest.approx(
            operator_form_norm(seq, 0.5, 0.45, flavor), rel=1e-12
        )
        assert norm_equivalence_ratio(seq, 0.5, 0.45, flavor) == pytest.approx(1.0, rel=1e-12)

    def test_time_seq_needs_one_grid(self):
        with pytest.raises(GridMismatch):
            TimeSeq(tau=0.1, entries=[Spectrum.zeros(Grid.cube(1, 8)), Spectrum.zeros(Grid.cube(1, 16))])

        with pytest.raises(ValidationError):
            TimeSeq(tau=0.1, entries=[])


class TestEmbedding:
    def test_single_entry(self, rng):
        tau = 2.0**-6
        seq = random_sequence(rng, Grid.cube(1, 16), 1, tau)

        assert embedding_ratio(seq, 1.0, 0.55, SCHRODINGER) == pytest.approx(tau**-0.5)

    def test_zero_sequence(self):
        seq = TimeSeq(tau=0.1, entries=[Spectrum.zeros(Grid.cube(1, 8))] * 4)

        with pytest.raises(ZeroSequence):
            embedding_ratio(seq, 0.0, 0.55, WAVE)

    def test_rejects_low_b(self, rng):
        with pytest.raises(InvalidExponents):
            embedding_ratio(random_sequence(rng, Grid.cube(1, 8), 4, 0.1), 0.0, 0.5, WAVE)

    def test_stable_under_refinement(self):
        """Max of ratio·τ^{1/2} over random sequences moves by at most a factor 2 when M doubles."""
        grid, tau = Grid.cube(1, 16), 2.0**-5
        maxima = []

        for length in (32, 64):
            rng = np.random.default_rng(length)
            ratios = [
                embedding_ratio(random_sequence(rng, grid, length, tau), 0.5, 0.55, SCHRODINGER)
                for _ in range(100)
            ]
            maxima.append(max(ratios) * sqrt(tau))

        assert 0.5 <= maxima[1] / maxima[0] <= 2


class TestMultilinear:
    PARAMS = MultilinearParams(s0=0.0, s2=0.5, b=0.45, theta=2.0**-4, c=1.0)

    def test_window(self):
        assert admissible_b_window(0.0, 0.5) == (0.375, 0.5)
        assert admissible_b_window(0.5, 2.5) == (0.375, 0.5)
        assert admissible_b_window(0.0, 0.1) == pytest.approx((0.45, 0.5))

    @pytest.mark.parametrize("b", [0.3, 0.5, 0.55])
    def test_rejects_b_outside_window(self, b: float):
        with pytest.raises(InvalidExponents):
            MultilinearParams(s0=0.0, s2=0.5, b=b, theta=0.1).check_window()

    def test_rejects_s2_at_floor(self):
        with pytest.raises(InvalidExponents):
            MultilinearParams(s0=0.5, s2=0.5, b=0.45, theta=0.1).check_window()

    def test_rejects_theta_below_step(self, rng):
        grid = Grid.cube(1, 8)
        v, w = random_sequence(rng, grid, 4, 0.1), random_sequence(rng, grid, 4, 0.1)
        params = self.PARAMS.model_copy(update=dict(theta=0.05))

        with pytest.raises(InvalidExponents):
            multilinear_ratio(v, w, Estimate.M1, params)

    def test_mismatched_sequences(self, rng):
        grid = Grid.cube(1, 8)

        with pytest.raises(GridMismatch):
            multilinear_ratio(
                random_sequence(rng, grid, 4, 2.0**-6),
                random_sequence(rng, grid, 8, 2.0**-6),
                Estimate.M2,
                self.PARAMS,
            )

    @pytest.mark.parametrize("estimate", list(Estimate))
    def test_zero_factor(self, rng, estimate: Estimate):
        grid = Grid.cube(1, 8)
        v = random_sequence(rng, grid, 8, 2.0**-6)
        zero = v.scaled(0)

        assert multilinear_ratio(zero, v, estimate, self.PARAMS) == 0
        assert multilinear_ratio(v, zero, estimate, self.PARAMS) == 0

    @pytest.mark.parametrize("estimate", list(Estimate))
    def test_scaling_invariance(self, rng, estimate: Estimate):
        grid = Grid.cube(1, 16)
        v, w = random_sequence(rng, grid, 8, 2.0**-6), random_sequence(rng, grid, 8, 2.0**-6)
        ratio = multilinear_ratio(v, w, estimate, self.PARAMS)

        assert multilinear_ratio(v.scaled(-3.5j), w, estimate, self.PARAMS) == pytest.approx(ratio, rel=1e-12)
        assert multilinear_ratio(v, w.scaled(1e-3), estimate, self.PARAMS) == pytest.approx(ratio, rel=1e-12)

    def test_projected_product_is_pointwise(self, rng):
        grid = Grid.cube(1, 16)
        v, w = random_sequence(rng, grid, 2, 2.0**-6), random_sequence(rng, grid, 2, 2.0**-6)
        retained = list(range(-4, 4))
        product = projected_product(v, w, 2.0**-4, 1.0, conjugate_v=True)

        np.testing.assert_allclose(
            product.entries[1].coeffs,
            direct_product(v.stack()[1], w.stack()[1], retained, conjugate_v=True),
            atol=1e-12,
        )

    def test_first_estimate_against_direct_summation(self, rng):
        grid, length, tau = Grid.cube(1, 16), 16, 2.0**-6
        v, w = random_sequence(rng, grid, length, tau), random_sequence(rng, grid, length, tau)
        # θ^{1/2} k in [-1, 1) keeps k = -4..3
        retained = list(range(-4, 4))
        s2, b = 0.5, 0.45

        lhs = sum(
            direct_norm(
                np.stack(
                    [
                        direct_product(v.stack()[step], w.stack()[step], retained, conjugate_v)
                        for step in range(length)
                    ]
                ),
                tau,
                s2 + 0.5,
                -b,
                SCHRODINGER,
            )
            for conjugate_v in (False, True)
        )
        rhs = direct_norm(v.stack(), tau, s2, b, WAVE) * direct_norm(w.stack(), tau, s2 + 0.5, b, SCHRODINGER)

        assert multilinear_ratio(v, w, Estimate.M1, self.PARAMS) == pytest.approx(lhs / rhs, rel=1e-10)
