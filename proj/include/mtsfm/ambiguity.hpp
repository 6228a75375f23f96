#pragma once

#include <cstddef>
#include <vector>

#include "mtsfm/waveform.hpp"

namespace mtsfm {

/// |chi(tau, nu)| sampled on a delay/Doppler grid. Requested delays are
/// snapped to integer sample lags; `delays` holds the snapped values.
/// `magnitude` is row-major with one row per Doppler.
struct AfGrid {
    std::vector<double> delays;    // s
    std::vector<double> dopplers;  // Hz
    std::vector<double> magnitude;

    double at(std::size_t doppler_idx, std::size_t delay_idx) const {
        return magnitude[doppler_idx * delays.size() + delay_idx];
    }
};

/// |R(tau)|^2 sampled at tau_k = k dt for k = 0..n-1; the last sample
/// sits at tau = T (zero overlap).
struct AcfCurve {
    double dt = 0.0;
    std::vector<double> power;

    double delay_at(std::size_t k) const { return static_cast<double>(k) * dt; }
};

/// ACF summary: mainlobe null location and sidelobe metrics
/// (dB of squared magnitudes).
struct AcfReport {
    AcfCurve curve;
    double null_delay = 0.0;  // s
    double pslr_db = 0.0;
    double isl_db = 0.0;
};

/// Narrowband ambiguity surface chi(tau, nu) = integral of
/// s(t) s*(t + tau) exp(j 2 pi nu t) dt, evaluated at integer-sample lags.
/// Throws std::domain_error when a requested delay lies outside [-T, T].
AfGrid ambiguity(const SampledWaveform& w, const std::vector<double>& delays,
                 const std::vector<double>& dopplers);

/// Zero-Doppler cut |R(tau)|^2 for tau in [0, T]. Shares the correlation
/// kernel with ambiguity(), so it matches the nu = 0 row bit for bit.
AcfCurve acf(const SampledWaveform& w);

/// Delay of the first local minimum of |R|^2 for tau > 0, refined with a
/// three-point parabolic fit. Throws NoMainlobeNull when |R|^2 decreases
/// monotonically (no interior minimum).
double find_mainlobe_null(const AcfCurve& curve);

/// 10 log10 of the peak sidelobe of |R|^2 over null_delay <= tau <= T.
double pslr_db(const AcfCurve& curve, double null_delay);

/// Sidelobe-to-mainlobe energy ratio of |R|^2 over positive delays,
/// trapezoidal quadrature split at null_delay.
double isl_linear(const AcfCurve& curve, double null_delay);

/// isl_linear() in dB.
double isl_db(const AcfCurve& curve, double null_delay);

/// acf + null detection + PSLR/ISL in one pass.
AcfReport analyze_acf(const SampledWaveform& w);

}  // namespace mtsfm
