"""
Testes da resposta instrumental (convolução gaussiana e normalização).
"""
import numpy as np
import pytest

from app.core.errors import InvalidInputError
from app.models.instrument import InstrumentResponse
from app.models.spectrum import AngularMap, Spectrum
from app.services.instrument_service import gaussian_kernel


def _spectrum(values, step=1e-4, start=0.6):
    values = np.asarray(values, dtype=float)
    return Spectrum(axis=start + step * np.arange(values.size), intensity=values)


class TestConvolveSpectrum:
    """Convolução ao longo de λ."""

    def test_zero_width_is_identity(self, instrument, rng):
        s = _spectrum(rng.random(300))
        out = instrument.convolve_spectrum(s, InstrumentResponse(spectral_fwhm_um=0.0))
        assert np.array_equal(out.intensity, s.intensity)
        assert out.convolved

    def test_delta_spike_becomes_gaussian(self, instrument):
        """Largura de 10 passos: pico ≈ 1/(σ√2π), soma unitária."""
        step = 1e-4
        spike = np.zeros(401)
        spike[200] = 1.0
        out = instrument.convolve_spectrum(
            _spectrum(spike, step), InstrumentResponse(spectral_fwhm_um=10 * step)
        ).intensity
        sigma = 10 / 2.3548
        assert out.max() == pytest.approx(1 / (sigma * np.sqrt(2 * np.pi)), rel=1e-2)
        assert out.sum() == pytest.approx(1.0, rel=1e-9)
        assert int(np.argmax(out)) == 200

    def test_kernel_unit_sum(self):
        kernel = gaussian_kernel(fwhm=3e-4, step=2e-5)
        assert kernel.sum() == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(kernel, kernel[::-1], rtol=0, atol=0)

    def test_linearity(self, instrument, rng):
        a, b = rng.random(500), rng.random(500)
        response = InstrumentResponse(spectral_fwhm_um=7e-4)
        left = instrument.convolve_spectrum(_spectrum(2.0 * a - 3.0 * b), response).intensity
        right = (
            2.0 * instrument.convolve_spectrum(_spectrum(a), response).intensity
            - 3.0 * instrument.convolve_spectrum(_spectrum(b), response).intensity
        )
        np.testing.assert_allclose(left, right, rtol=1e-12, atol=1e-12)

    def test_interior_mass_conserved(self, instrument):
        """Massa fora das bordas de 4σ é conservada."""
        x = np.arange(2000)
        values = np.exp(-0.5 * ((x - 1000) / 60.0) ** 2)
        step = 1e-4
        fwhm = 8 * step
        out = instrument.convolve_spectrum(_spectrum(values, step), InstrumentResponse(spectral_fwhm_um=fwhm)).intensity
        edge = int(np.ceil(4 * fwhm / 2.3548 / step))
        interior = slice(edge, -edge)
        assert out[interior].sum() == pytest.approx(values[interior].sum(), rel=1e-9)

    def test_constant_preserved_at_edges(self, instrument):
        """Renormalização pela sobreposição: sem atenuação nas bordas."""
        out = instrument.convolve_spectrum(_spectrum(np.full(100, 3.0)), InstrumentResponse(spectral_fwhm_um=1e-3))
        np.testing.assert_allclose(out.intensity, 3.0, rtol=1e-12)

    def test_non_uniform_grid_rejected(self, instrument):
        s = Spectrum(axis=np.array([0.6, 0.6001, 0.6003, 0.6004]), intensity=np.ones(4))
        with pytest.raises(InvalidInputError):
            instrument.convolve_spectrum(s, InstrumentResponse())

    def test_argmax_commutes_with_normalize(self, instrument, design1_spectrum):
        convolved = instrument.convolve_spectrum(design1_spectrum, InstrumentResponse())
        normalized = instrument.normalize_max(convolved)
        assert int(np.argmax(normalized.intensity)) == int(np.argmax(convolved.intensity))


class TestConvolveMap:
    """Convolução separável λ e θ."""

    def _map(self, values):
        n_lam, n_theta = values.shape
        theta = np.linspace(-2.0, 2.0, n_theta)
        return AngularMap(
            lambda_axis=0.6 + 1e-4 * np.arange(n_lam),
            theta_axis=0.5 * (theta - theta[::-1]),
            intensity=values,
        )

    def test_zero_widths_identity(self, instrument, rng):
        m = self._map(rng.random((50, 41)))
        out = instrument.convolve_map(m, InstrumentResponse(spectral_fwhm_um=0.0, angular_fwhm_deg=0.0))
        assert np.array_equal(out.intensity, m.intensity)

    def test_symmetry_preserved(self, instrument, rng):
        half = rng.random((60, 21))
        values = np.concatenate([half, half[:, -2::-1]], axis=1)
        m = self._map(values)
        out = instrument.convolve_map(m, InstrumentResponse(spectral_fwhm_um=5e-4, angular_fwhm_deg=0.3))
        np.testing.assert_allclose(out.intensity, out.intensity[:, ::-1], rtol=1e-12, atol=1e-15)

    def test_wide_angular_kernel_washes_out_modulation(self, instrument):
        """Modulação rápida em θ perde máximos locais após a convolução."""
        theta = np.linspace(-2.2, 2.2, 441)
        row = np.exp(-0.5 * theta ** 2) + 0.05 * np.cos(2 * np.pi * theta / 0.08)
        values = np.tile(row, (5, 1))
        m = AngularMap(lambda_axis=0.645 + 1e-4 * np.arange(5), theta_axis=theta, intensity=values)
        out = instrument.convolve_map(m, InstrumentResponse(spectral_fwhm_um=0.0, angular_fwhm_deg=0.3))

        def maxima(row):
            inner = row[1:-1]
            return int(np.sum((inner > row[:-2]) & (inner > row[2:])))

        assert maxima(values[2]) > 10
        assert maxima(out.intensity[2]) == 1

    def test_wide_angular_kernel_washes_out_design_1_edges(self, instrument, interference, design1):
        """Corte do design 1 em 0.645 μm: menos máximos em |θ| ∈ [2°, 2.2°] após 0.3°."""
        lambdas = 0.645 + 1e-4 * np.arange(-2, 3)
        theta = np.linspace(-2.2, 2.2, 441)
        theta = 0.5 * (theta - theta[::-1])
        m = interference.angular_map(design1, lambdas, theta)
        out = instrument.convolve_map(m, InstrumentResponse(spectral_fwhm_um=0.0, angular_fwhm_deg=0.3))

        edge = (np.abs(theta[1:-1]) >= 2.0) & (np.abs(theta[1:-1]) <= 2.2)

        def edge_maxima(row):
            inner = row[1:-1]
            return int(np.sum((inner > row[:-2]) & (inner > row[2:]) & edge))

        before = edge_maxima(m.intensity[2])
        after = edge_maxima(out.intensity[2])
        assert before > 0
        assert after < before


class TestNormalizeMax:
    def test_constant_becomes_ones(self, instrument):
        out = instrument.normalize_max(_spectrum(np.full(10, 4.2)))
        np.testing.assert_allclose(out.intensity, 1.0)

    def test_scale_invariant(self, instrument, rng):
        values = rng.random(100)
        a = instrument.normalize_max(_spectrum(values)).intensity
        b = instrument.normalize_max(_spectrum(7.0 * values)).intensity
        np.testing.assert_allclose(a, b, rtol=1e-14)
        assert int(np.argmax(a)) == int(np.argmax(values))

    def test_zero_spectrum_rejected(self, instrument):
        with pytest.raises(InvalidInputError):
            instrument.normalize_max(_spectrum(np.zeros(10)))
