"""
Testes da análise do pente: picos, espaçamento, envelope, SPCC e canais.
"""
import importlib
from types import SimpleNamespace

import numpy as np
import pytest

from app.core.errors import (
    FitFailureError,
    InsufficientDataError,
    InvalidInputError,
    UndefinedCorrelationError,
)
from app.models.analysis import FWHM_PER_SIGMA, Peak
from app.models.spectrum import Channel, Spectrum
from app.services.analysis_service import _parabolic_vertex, remap_axis
from tests.conftest import cos2_comb, gaussian_spectrum

analysis_module = importlib.import_module("app.services.analysis_service")


def _gaussian_peaks(amplitude=1.0, center=0.647, sigma=0.0129):
    x = np.arange(0.62, 0.6751, 0.005)
    y = amplitude * np.exp(-0.5 * ((x - center) / sigma) ** 2)
    return [Peak(wavelength_um=float(a), height=float(b), prominence=0.0) for a, b in zip(x, y)]


# ==================== PICOS ====================

class TestFindPeaks:
    """Detecção com limiares relativos e refinamento parabólico."""

    def test_cos2_comb_spacing(self, analysis):
        """sin² com período 50: 10 picos, espaçamento exato."""
        peaks = analysis.find_peaks(cos2_comb(periods=10, period=50))
        assert len(peaks) == 10
        assert peaks[0].wavelength_um == pytest.approx(25.0, abs=1e-9)
        assert analysis.mean_peak_spacing(peaks) == pytest.approx(50.0, abs=1e-9)
        assert analysis.median_peak_spacing(peaks) == pytest.approx(50.0, abs=1e-9)
        assert analysis.comb_span(peaks) == pytest.approx(450.0, abs=1e-9)

    def test_heights_are_relative(self, analysis):
        s = cos2_comb()
        scaled = s.with_intensity(1e-20 * s.intensity)
        peaks = analysis.find_peaks(scaled)
        assert all(p.height == pytest.approx(1.0, rel=1e-12) for p in peaks)

    def test_baseline_has_single_peak(self, analysis, baseline_spectrum):
        """Sem gaps: só o lóbulo sinc², lóbulos laterais abaixo de 10%."""
        assert len(analysis.find_peaks(baseline_spectrum)) == 1

    def test_design_1_has_comb(self, analysis, design1_spectrum):
        peaks = analysis.find_peaks(design1_spectrum, min_height=0.5)
        assert len(peaks) >= 6

    def test_thresholds_filter(self, analysis):
        axis = np.arange(9, dtype=float)
        s = Spectrum(axis=axis, intensity=np.array([0, 1.0, 0, 0.3, 0, 0.05, 0, 0.2, 0.18]))
        assert len(analysis.find_peaks(s, min_height=0.1, min_prominence=0.05)) == 2
        assert len(analysis.find_peaks(s, min_height=0.01, min_prominence=0.01)) == 4

    def test_zero_spectrum_has_no_peaks(self, analysis):
        s = Spectrum(axis=np.arange(10, dtype=float), intensity=np.zeros(10))
        assert analysis.find_peaks(s) == []

    def test_too_short_rejected(self, analysis):
        s = Spectrum(axis=np.array([0.6, 0.7]), intensity=np.array([1.0, 2.0]))
        with pytest.raises(InvalidInputError):
            analysis.find_peaks(s)

    def test_parabolic_vertex_exact_on_quadratic(self):
        x = np.array([0.1, 0.25, 0.45])
        y = 2.0 - 3.0 * (x - 0.3) ** 2
        xv, yv = _parabolic_vertex(x, y)
        assert xv == pytest.approx(0.3, abs=1e-12)
        assert yv == pytest.approx(2.0, abs=1e-12)

    def test_parabolic_vertex_flat_returns_center(self):
        xv, yv = _parabolic_vertex(np.array([0.0, 1.0, 2.0]), np.array([1.0, 1.0, 1.0]))
        assert (xv, yv) == (1.0, 1.0)


class TestSpacing:
    def test_requires_two_peaks(self, analysis):
        single = [Peak(wavelength_um=0.647, height=1.0, prominence=1.0)]
        with pytest.raises(InsufficientDataError):
            analysis.mean_peak_spacing(single)
        with pytest.raises(InsufficientDataError):
            analysis.median_peak_spacing(single)
        with pytest.raises(InsufficientDataError):
            analysis.comb_span([])

    def test_order_independent(self, analysis):
        peaks = _gaussian_peaks()
        assert analysis.mean_peak_spacing(peaks[::-1]) == pytest.approx(0.005, rel=1e-9)


# ==================== ENVELOPE ====================

class TestEnvelope:
    """Ajuste gaussiano sem offset."""

    def test_recovers_exact_gaussian(self, analysis):
        fit = analysis.fit_envelope(_gaussian_peaks())
        assert fit.amplitude == pytest.approx(1.0, abs=1e-6)
        assert fit.center_um == pytest.approx(0.647, abs=1e-6)
        assert fit.sigma_um == pytest.approx(0.0129, abs=1e-6)
        assert fit.fwhm_um == pytest.approx(0.0304, abs=1e-4)
        assert fit.residual_rms < 1e-9

    def test_fwhm_constant(self):
        assert FWHM_PER_SIGMA == pytest.approx(2.354820045, rel=1e-9)

    def test_requires_four_peaks(self, analysis):
        with pytest.raises(InsufficientDataError):
            analysis.fit_envelope(_gaussian_peaks()[:3])

    def test_fit_lobe_on_gaussian(self, analysis):
        fit = analysis.fit_lobe(gaussian_spectrum(), min_height=0.1)
        assert fit.center_um == pytest.approx(0.647, abs=1e-6)
        assert fit.sigma_um == pytest.approx(0.0129, rel=1e-6)

    def test_fit_lobe_narrow_rejected(self, analysis):
        s = Spectrum(axis=np.arange(7, dtype=float), intensity=np.array([0, 0, 0.5, 1, 0.5, 0, 0]))
        with pytest.raises(InsufficientDataError):
            analysis.fit_lobe(s, min_height=0.4)

    def test_non_converged_fit_raises(self, analysis, monkeypatch):
        """Status ≤ 0 do otimizador vira FitFailureError com o resíduo."""
        def fake_least_squares(fun, x0, **kwargs):
            return SimpleNamespace(x=np.asarray(x0), fun=fun(x0), status=0, message="max_nfev")

        monkeypatch.setattr(analysis_module, "least_squares", fake_least_squares)
        with pytest.raises(FitFailureError) as exc:
            analysis.fit_envelope(_gaussian_peaks())
        assert exc.value.residual_rms is not None


# ==================== CORRELAÇÃO ====================

class TestSpcc:
    """Correlação de Pearson entre espectros."""

    def test_self_is_one(self, analysis, design1_spectrum):
        assert analysis.spcc(design1_spectrum, design1_spectrum) == pytest.approx(1.0, abs=1e-12)

    def test_affine_invariant(self, analysis, design1_spectrum):
        other = design1_spectrum.with_intensity(2.5 * design1_spectrum.intensity + 0.1)
        assert analysis.spcc(design1_spectrum, other) == pytest.approx(1.0, abs=1e-12)

    def test_negated_is_minus_one(self, analysis, design1_spectrum):
        other = design1_spectrum.with_intensity(-design1_spectrum.intensity)
        assert analysis.spcc(design1_spectrum, other) == pytest.approx(-1.0, abs=1e-12)

    def test_resamples_onto_first_axis(self, analysis):
        a = gaussian_spectrum(n=2001)
        b = gaussian_spectrum(n=777)
        assert analysis.spcc(a, b) == pytest.approx(1.0, abs=1e-4)

    def test_zero_variance_undefined(self, analysis):
        a = gaussian_spectrum()
        flat = a.with_intensity(np.ones_like(a.intensity))
        with pytest.raises(UndefinedCorrelationError):
            analysis.spcc(a, flat)

    def test_small_overlap_rejected(self, analysis):
        a = gaussian_spectrum(center=0.647)
        b = gaussian_spectrum(center=0.8)
        with pytest.raises(InsufficientDataError):
            analysis.spcc(a, b)

    def test_temperature_decorrelates(self, analysis, interference, design1, signal_grid, design1_spectrum):
        """Correlação cai mais com 78 °C de diferença que com 0.5 °C."""
        hot = interference.spectrum(design1, signal_grid, temperature_c=100.0)
        warm = interference.spectrum(design1, signal_grid, temperature_c=22.5)
        assert analysis.spcc(design1_spectrum, hot) < analysis.spcc(design1_spectrum, warm)


# ==================== CANAIS ====================

class TestToIdler:
    """Remapeamento sinal ↔ idler."""

    def test_axis_ascending_and_channel(self, analysis):
        idler = analysis.to_idler(gaussian_spectrum(), 0.532)
        assert idler.channel == Channel.IDLER
        assert np.all(np.diff(idler.axis) > 0)
        assert idler.axis[0] > 2 * 0.532

    def test_involution(self, analysis):
        s = gaussian_spectrum()
        back = analysis.to_idler(analysis.to_idler(s, 0.532), 0.532)
        assert back.channel == Channel.SIGNAL
        np.testing.assert_allclose(back.axis, s.axis, rtol=1e-12)
        assert np.array_equal(back.intensity, s.intensity)

    def test_nominal_point(self):
        assert float(remap_axis(0.647, 0.532)) == pytest.approx(2.9931, abs=1e-4)

    def test_jacobian(self, analysis):
        s = gaussian_spectrum()
        s = s.with_intensity(np.ones_like(s.intensity))
        idler = analysis.to_idler(s, 0.532, apply_jacobian=True)
        expected = (s.axis / remap_axis(s.axis, 0.532)) ** 2
        np.testing.assert_allclose(idler.intensity, expected[::-1], rtol=1e-12)

    def test_wrong_domain_rejected(self, analysis):
        s = Spectrum(axis=np.linspace(0.5, 0.6, 11), intensity=np.ones(11))
        with pytest.raises(InvalidInputError):
            analysis.to_idler(s, 0.532)


# ==================== ESTATÍSTICAS ====================

class TestCombStats:
    """Estatísticas completas por canal."""

    def test_design_1_signal(self, analysis, design1_spectrum):
        stats = analysis.compute_comb_stats(design1_spectrum)
        assert stats.mean_spacing_um == pytest.approx(0.0041, rel=0.1)
        assert stats.envelope is not None
        assert stats.spcc is None
        assert "spcc" not in stats.to_export()

    def test_baseline_envelope_without_spacing(self, analysis, baseline_spectrum):
        stats = analysis.compute_comb_stats(baseline_spectrum)
        assert len(stats.peaks) == 1
        assert stats.mean_spacing_um is None
        assert stats.envelope is not None
        assert "mean_spacing_um" not in stats.to_export()

    def test_scale_invariant(self, analysis, design1_spectrum):
        a = analysis.compute_comb_stats(design1_spectrum)
        b = analysis.compute_comb_stats(design1_spectrum.with_intensity(3.7 * design1_spectrum.intensity))
        assert len(a.peaks) == len(b.peaks)
        assert b.mean_spacing_um == pytest.approx(a.mean_spacing_um, rel=1e-9)
        assert b.envelope.fwhm_um == pytest.approx(a.envelope.fwhm_um, rel=1e-6)

    def test_reference_adds_spcc(self, analysis, design1_spectrum):
        stats = analysis.compute_comb_stats(design1_spectrum, reference=design1_spectrum)
        assert stats.spcc == pytest.approx(1.0, abs=1e-12)

    def test_missing_envelope_is_logged(self, analysis, caplog):
        s = Spectrum(axis=np.arange(7, dtype=float), intensity=np.array([0, 0, 0.5, 1, 0.5, 0, 0]))
        stats = analysis.compute_comb_stats(s, min_height=0.4)
        assert stats.envelope is None
        assert "Envelope ausente" in caplog.text
