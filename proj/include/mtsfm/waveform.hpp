#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mtsfm {

/// Fourier coefficients of the frequency modulation function, in Hz.
///
/// m(t) = a0/2 + sum_l a[l] cos(2 pi l t / T) + b[l] sin(2 pi l t / T)
///
/// a0 is a constant frequency offset; a and b hold the cosine and sine
/// coefficients of harmonics l = 1..L and must have the same length.
struct FourierCoefficients {
    double a0 = 0.0;
    std::vector<double> a;
    std::vector<double> b;

    std::size_t harmonics() const { return b.size(); }

    /// Throws std::invalid_argument on length mismatch, L == 0 or
    /// non-finite entries.
    void validate() const;

    static FourierCoefficients sine_only(std::vector<double> b_coeffs);
    static FourierCoefficients zeros(std::size_t harmonics);
};

/// Dimensionless modulation indices alpha_l = a_l T / l and
/// beta_l = b_l T / l of the instantaneous phase.
struct ModulationIndices {
    std::vector<double> alpha;
    std::vector<double> beta;

    static ModulationIndices from(const FourierCoefficients& coeffs, double duration);
};

/// Complete recipe for one waveform: pulse length T, modulation
/// coefficients, and the grid-density factor used when sampling.
/// The time support is the centered interval [-T/2, T/2].
struct WaveformSpec {
    double duration = 1.0;  // T, seconds
    FourierCoefficients coeffs;
    int oversample = 8;

    void validate() const;

    /// Conservative bandwidth estimate |a0| + 2 sum(|a_l| + |b_l|),
    /// floored at 2L/T so the highest harmonic stays resolved.
    double bandwidth_span() const;

    /// N = ceil(oversample * T * bandwidth_span()).
    std::size_t grid_size() const;
};

/// Unit-energy complex baseband samples on the midpoint grid
/// t_n = -T/2 + (n + 1/2) dt, dt = T/N.
struct SampledWaveform {
    double dt = 0.0;
    std::vector<std::complex<double>> samples;
    double energy = 0.0;  // sum |s_n|^2 dt, 1 within 1e-9 by construction

    std::size_t size() const { return samples.size(); }
    double duration() const { return dt * static_cast<double>(samples.size()); }
    double time_at(std::size_t n) const {
        return -0.5 * duration() + (static_cast<double>(n) + 0.5) * dt;
    }
};

/// Instantaneous frequency m(t) in Hz. Throws std::domain_error when
/// |t| > T/2.
double eval_frequency(const WaveformSpec& spec, double t);

/// Instantaneous phase phi(t) in rad, with m(t) = phi'(t) / (2 pi).
/// Throws std::domain_error when |t| > T/2.
double eval_phase(const WaveformSpec& spec, double t);

/// Sample s(t) = exp(j phi(t)) on the midpoint grid and normalize the
/// discrete energy to one: s_n = exp(j phi(t_n)) / sqrt(N dt).
SampledWaveform synthesize(const WaveformSpec& spec);

/// synthesize() with the sample count pinned by the caller instead of
/// derived from the spec. Used when a family of coefficient sets must be
/// evaluated on one frozen grid.
SampledWaveform synthesize_with_samples(const WaveformSpec& spec, std::size_t n_samples);

}  // namespace mtsfm
