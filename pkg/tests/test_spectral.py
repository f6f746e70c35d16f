from itertools import product
from math import (
    pi,
    sqrt,
)

import numpy as np
import pytest
from numpy.testing import (
    assert_allclose,
    assert_array_equal,
)

from zakharov.lib.errors import (
    GridMismatch,
    InvalidCutoff,
    NegativePowerOnNonzeroMean,
)
from zakharov.lib.spectral import (
    Field,
    Grid,
    Spectrum,
    cutoff_mask,
    dump_spectrum_csv,
    filter_cutoff,
    filter_is_redundant,
    forward_dft,
    fractional_gradient,
    inverse_dft,
    read_spectrum,
    resample,
    schrodinger_propagator,
    sobolev_norm,
    wave_propagator,
    write_spectrum,
)


def naive_forward(values: np.ndarray) -> np.ndarray:
    """O(N^{2d}) evaluation of c_k = N^{-d} Σ_l u(x_l) e^{-i<k,x_l>} in storage order."""
    dim, n = values.ndim, values.shape[0]
    k = np.rint(np.fft.fftfreq(n, d=1.0 / n))
    x = 2 * pi * np.arange(n) / n
    waves = np.array(list(product(k, repeat=dim)))
    points = np.array(list(product(x, repeat=dim)))
    kernel = np.exp(-1j * waves @ points.T)

    return (kernel @ values.reshape(-1) / n**dim).reshape(values.shape)


def naive_inverse(coeffs: np.ndarray) -> np.ndarray:
    dim, n = coeffs.ndim, coeffs.shape[0]
    k = np.rint(np.fft.fftfreq(n, d=1.0 / n))
    x = 2 * pi * np.arange(n) / n
    waves = np.array(list(product(k, repeat=dim)))
    points = np.array(list(product(x, repeat=dim)))
    kernel = np.exp(1j * points @ waves.T)

    return (kernel @ coeffs.reshape(-1)).reshape(coeffs.shape)


class TestGrid:
    def test_storage_order(self):
        assert_array_equal(Grid.cube(1, 8).wave_numbers(), [0, 1, 2, 3, -4, -3, -2, -1])

    @pytest.mark.parametrize("n", [0, 3, 7])
    def test_rejects_odd_or_tiny(self, n: int):
        with pytest.raises(ValueError):
            Grid.cube(1, n)

    def test_rejects_dimension_four(self):
        with pytest.raises(ValueError):
            Grid.cube(4, 8)

    def test_index_of_nyquist(self):
        grid = Grid.cube(2, 8)

        assert grid.index_of((-4, 3)) == (4, 3)

        with pytest.raises(ValueError):
            grid.index_of((4, 0))

    def test_embedding(self):
        assert Grid.cube(2, 8).embeds_in(Grid.cube(2, 16))
        assert not Grid.cube(2, 16).embeds_in(Grid.cube(2, 8))
        assert not Grid.cube(1, 8).embeds_in(Grid.cube(2, 16))


class TestTransforms:
    def test_constant_field(self):
        grid = Grid.cube(1, 4)
        spectrum = forward_dft(Field(grid=grid, values=np.ones(4)))

        assert_allclose(spectrum.coeffs, [1, 0, 0, 0], atol=1e-15)

    def test_single_mode(self):
        grid = Grid.cube(1, 4)
        spectrum = forward_dft(Field.sample(grid, lambda x: np.exp(1j * x)))

        assert_allclose(spectrum.coeffs, [0, 1, 0, 0], atol=1e-15)

    def test_inverse_of_single_mode(self):
        grid = Grid.cube(1, 4)
        field = inverse_dft(Spectrum.modes(grid, {(1,): 1.0}))

        assert_allclose(field.values, [1, 1j, -1, -1j], atol=1e-15)

    def test_inverse_of_zero_mode(self):
        grid = Grid.cube(3, 4)
        field = inverse_dft(Spectrum.modes(grid, {(0, 0, 0): 1.0}))

        assert_allclose(field.values, np.ones(grid.shape), atol=1e-15)

    @pytest.mark.parametrize(("dim", "n"), [(1, 16), (2, 8), (2, 16), (3, 4), (3, 8)])
    def test_matches_brute_force(self, rng: np.random.Generator, dim: int, n: int):
        grid = Grid.cube(dim, n)

        for _ in range(20):
            values = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
            coeffs = (rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)) / sqrt(grid.size)

            forward = forward_dft(Field(grid=grid, values=values))
            inverse = inverse_dft(Spectrum(grid=grid, coeffs=coeffs))

            assert np.max(np.abs(forward.coeffs - naive_forward(values))) < 1e-12
            assert np.max(np.abs(inverse.values - naive_inverse(coeffs))) < 1e-12

    def test_arrays_are_read_only(self, random_spectrum):
        spectrum = random_spectrum(Grid.cube(1, 8))

        with pytest.raises(ValueError):
            spectrum.coeffs[0] = 1


class TestSpectrum:
    def test_real_flag_enforced(self):
        grid = Grid.cube(1, 8)

        with pytest.raises(ValueError):
            Spectrum.modes(grid, {(1,): 1.0}, real_valued=True)

    def test_real_part_is_real_on_grid(self, random_spectrum):
        grid = Grid.cube(2, 8)
        spectrum = random_spectrum(grid)

        assert_allclose(inverse_dft(spectrum.real_part()).values, inverse_dft(spectrum).values.real, atol=1e-14)

    def test_conjugate(self, random_spectrum):
        grid = Grid.cube(2, 8)
        spectrum = random_spectrum(grid)

        assert_allclose(inverse_dft(spectrum.conjugate()).values, np.conj(inverse_dft(spectrum).values), atol=1e-14)

    def test_arithmetic_checks_grid(self):
        with pytest.raises(GridMismatch):
            Spectrum.zeros(Grid.cube(1, 8)) + Spectrum.zeros(Grid.cube(1, 16))

    def test_resample_round_trip(self, random_spectrum):
        coarse, fine = Grid.cube(2, 8), Grid.cube(2, 16)
        spectrum = random_spectrum(coarse, real_valued=True)
        padded = resample(spectrum, fine)

        assert_allclose(sobolev_norm(padded, 0), sobolev_norm(spectrum, 0), rtol=1e-14)
        assert_allclose(sobolev_norm(padded, 1.5), sobolev_norm(spectrum, 1.5), rtol=1e-14)
        assert_allclose(resample(padded, coarse).coeffs, spectrum.coeffs, atol=1e-15)

    def test_padding_keeps_nyquist_coefficient(self):
        spectrum = Spectrum.modes(Grid.cube(1, 8), {(-4,): 1.0, (1,): 0.5, (-1,): 0.5}, real_valued=True)
        padded = resample(spectrum, Grid.cube(1, 16))

        assert padded.coefficient((-4,)) == 1.0
        assert padded.coefficient((4,)) == 0.0
        assert not padded.real_valued
        assert sobolev_norm(padded, 0) == pytest.approx(sobolev_norm(spectrum, 0), rel=1e-15)

    def test_padding_keeps_real_flag_without_nyquist(self):
        spectrum = Spectrum.modes(Grid.cube(1, 8), {(2,): 0.5j, (-2,): -0.5j}, real_valued=True)

        assert resample(spectrum, Grid.cube(1, 16)).real_valued

    def test_resample_truncates_and_resymmetrizes(self):
        fine, coarse = Grid.cube(1, 16), Grid.cube(1, 8)
        spectrum = Spectrum.modes(fine, {(4,): 1.0, (-4,): 1.0, (1,): 0.5, (-1,): 0.5}, real_valued=True)
        truncated = resample(spectrum, coarse)

        assert truncated.is_real_valued()
        # cos 4x aliases onto the single Nyquist mode of the coarse grid
        assert truncated.coefficient((-4,)) == pytest.approx(1.0)
        assert truncated.coefficient((1,)) == pytest.approx(0.5)


class TestOperators:
    def test_propagators_at_zero_are_identity(self, random_spectrum):
        spectrum = random_spectrum(Grid.cube(2, 8))

        assert_array_equal(schrodinger_propagator(spectrum, 0).coeffs, spectrum.coeffs)
        assert_array_equal(wave_propagator(spectrum, 0).coeffs, spectrum.coeffs)

    def test_schrodinger_multiplier(self):
        tau = 2.0**-6
        grid = Grid.cube(1, 8)
        propagated = schrodinger_propagator(Spectrum.modes(grid, {(2,): 1.0}), tau)

        assert propagated.coefficient((2,)) == pytest.approx(np.exp(-4j * tau), abs=1e-15)

    def test_wave_multiplier(self):
        grid = Grid.cube(2, 16)
        propagated = wave_propagator(Spectrum.modes(grid, {(3, 4): 1.0}), 1.0)

        assert propagated.coefficient((3, 4)) == pytest.approx(np.exp(5j), abs=1e-14)

    def test_propagators_are_unitary(self, random_spectrum):
        spectrum = random_spectrum(Grid.cube(3, 8))

        assert_allclose(schrodinger_propagator(spectrum, 0.37).l2_squared(), spectrum.l2_squared(), rtol=1e-13)
        assert_allclose(wave_propagator(spectrum, 0.37).l2_squared(), spectrum.l2_squared(), rtol=1e-13)

    @pytest.mark.parametrize("propagator", [schrodinger_propagator, wave_propagator])
    def test_group_property(self, random_spectrum, propagator):
        spectrum = random_spectrum(Grid.cube(2, 16))
        composed = propagator(propagator(spectrum, 0.31), 1.17)

        assert_allclose(composed.coeffs, propagator(spectrum, 1.48).coeffs, atol=1e-12)

    def test_inverse_gradient_keeps_sine(self):
        grid = Grid.cube(1, 8)
        sine = Spectrum.modes(grid, {(1,): -0.5j, (-1,): 0.5j}, real_valued=True)

        assert_allclose(fractional_gradient(sine, -1).coeffs, sine.coeffs)

    def test_laplacian(self):
        grid = Grid.cube(2, 8)
        mode = Spectrum.modes(grid, {(1, 2): 1.0})

        assert fractional_gradient(mode, 2).coefficient((1, 2)) == pytest.approx(5.0)

    def test_gradient_composition(self, random_spectrum):
        spectrum = random_spectrum(Grid.cube(2, 16), zero_mean=True)
        composed = fractional_gradient(fractional_gradient(spectrum, -1), 1)

        assert_allclose(composed.coeffs, spectrum.coeffs, atol=1e-12)

    def test_negative_power_needs_zero_mean(self):
        grid = Grid.cube(1, 8)

        with pytest.raises(NegativePowerOnNonzeroMean):
            fractional_gradient(Spectrum.modes(grid, {(0,): 1.0}), -1)

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_projector_redundant_under_cfl(self, dim: int):
        grid = Grid.cube(dim, 8)
        theta = 1.0 / dim / 8**2

        assert filter_is_redundant(grid, theta, 1.0)

    def test_projector_half_open(self):
        grid = Grid.cube(1, 8)
        retained = {int(k) for k in grid.wave_numbers()[cutoff_mask(grid, 1.0, 1.0)]}

        assert retained == {-1, 0}

    def test_filter_zeroes_outside(self, random_spectrum):
        grid = Grid.cube(1, 16)
        filtered = filter_cutoff(random_spectrum(grid), 1 / 16, 1.0)
        kept = [k for k in grid.wave_numbers() if filtered.coefficient((int(k),)) != 0]

        assert sorted(int(k) for k in kept) == list(range(-4, 4))

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_filter_is_idempotent(self, random_spectrum, dim: int):
        spectrum = random_spectrum(Grid.cube(dim, 8))
        once = filter_cutoff(spectrum, 0.05, 1.0)

        assert_array_equal(filter_cutoff(once, 0.05, 1.0).coeffs, once.coeffs)

    def test_retained_set_shrinks_as_theta_grows(self):
        grid = Grid.cube(2, 32)
        thetas = [2.0**-12, 2.0**-10, 2.0**-8, 2.0**-6, 2.0**-4]
        masks = [cutoff_mask(grid, theta, 1.5) for theta in thetas]

        for wider, narrower in zip(masks, masks[1:]):
            assert not (narrower & ~wider).any()

    @pytest.mark.parametrize("s", [-1.0, 0.0, 0.5, 2.0])
    def test_filter_never_increases_norm(self, random_spectrum, s: float):
        spectrum = random_spectrum(Grid.cube(2, 16))

        for theta in (2.0**-8, 2.0**-6, 2.0**-4, 1.0):
            assert sobolev_norm(filter_cutoff(spectrum, theta, 1.0), s) <= sobolev_norm(spectrum, s)

    @pytest.mark.parametrize("c", [0.0, 2 * pi, -1.0, 7.0])
    def test_invalid_cutoff(self, c: float):
        with pytest.raises(InvalidCutoff):
            filter_cutoff(Spectrum.zeros(Grid.cube(1, 8)), 0.1, c)

    def test_sobolev_norm_examples(self):
        grid = Grid.cube(1, 8)

        assert sobolev_norm(Spectrum.modes(grid, {(0,): 1.0}), 3.7) == pytest.approx(1.0)
        assert sobolev_norm(Spectrum.modes(grid, {(1,): 1.0}), 1) == pytest.approx(sqrt(2))

    def test_sobolev_norm_nondecreasing_in_s(self, random_spectrum):
        spectrum = random_spectrum(Grid.cube(3, 8))
        norms = [sobolev_norm(spectrum, s) for s in np.linspace(-2, 2, 17)]

        assert all(left <= right for left, right in zip(norms, norms[1:]))

    @pytest.mark.parametrize("s", [-1.0, 0.5])
    def test_sobolev_norm_oracle(self, random_spectrum, s: float):
        grid = Grid.cube(2, 8)
        spectrum = random_spectrum(grid)
        total = 0.0

        for index in np.ndindex(*grid.shape):
            k = [grid.wave_numbers()[i] for i in index]
            total += (1 + sum(component**2 for component in k)) ** s * abs(spectrum.coeffs[index]) ** 2

        assert sobolev_norm(spectrum, s) == pytest.approx(sqrt(total), rel=1e-12)


class TestSerialization:
    def test_binary_round_trip(self, tmp_path, random_spectrum):
        spectrum = random_spectrum(Grid.cube(2, 8), real_valued=True)
        path = write_spectrum(spectrum, tmp_path / "z0.spec")
        restored = read_spectrum(path, real_valued=True)

        assert path.stat().st_size == 8 + 16 * 64
        assert_array_equal(restored.coeffs, spectrum.coeffs)

    def test_ascending_order_on_disk(self, tmp_path):
        grid = Grid.cube(1, 4)
        path = write_spectrum(Spectrum.modes(grid, {(-2,): 1.0, (1,): 2.0}), tmp_path / "E.spec")
        body = np.frombuffer(path.read_bytes()[8:], dtype="<c16")

        assert_array_equal(body, [1, 0, 0, 2])

    def test_csv_dump(self, tmp_path):
        grid = Grid.cube(1, 4)
        path = dump_spectrum_csv(Spectrum.modes(grid, {(1,): 1 + 2j}), tmp_path / "E.csv")
        lines = path.read_text().splitlines()

        assert lines[0] == "k1,re,im"
        assert lines[4] == "1,1.0,2.0"
