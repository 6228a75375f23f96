#include "mtsfm/ambiguity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_engine.hpp"
#include "mtsfm/errors.hpp"

namespace mtsfm {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated (Kahan) accumulator so integral values do not depend on
// how callers batch the work.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

std::vector<long long> snap_to_lags(const std::vector<double>& delays, double dt, double T) {
    std::vector<long long> lags(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i) {
        if (std::abs(delays[i]) > T) {
            throw std::domain_error("ambiguity: delay outside the ACF support [-T, T]");
        }
        lags[i] = std::llround(delays[i] / dt);
    }
    return lags;
}

}  // namespace

AfGrid ambiguity(const SampledWaveform& w, const std::vector<double>& delays,
                 const std::vector<double>& dopplers) {
    if (w.samples.empty()) throw std::invalid_argument("ambiguity: empty waveform");
    const double T = w.duration();
    const auto lags = snap_to_lags(delays, w.dt, T);

    AfGrid grid;
    grid.delays.resize(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        grid.delays[i] = static_cast<double>(lags[i]) * w.dt;
    }
    grid.dopplers = dopplers;
    grid.magnitude.resize(lags.size() * dopplers.size());

    const std::size_t n = w.size();
    std::vector<std::complex<double>> modulated(n);
    for (std::size_t row = 0; row < dopplers.size(); ++row) {
        const double nu = dopplers[row];
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = 2.0 * kPi * nu * w.time_at(i);
            modulated[i] = w.samples[i] * std::complex<double>{std::cos(angle), std::sin(angle)};
        }
        const auto mags = detail::xcorr_magnitudes(modulated, w.samples, w.dt, lags);
        std::copy(mags.begin(), mags.end(), grid.magnitude.begin() + row * lags.size());
    }
    return grid;
}

AcfCurve acf(const SampledWaveform& w) {
    if (w.samples.empty()) throw std::invalid_argument("acf: empty waveform");
    const std::size_t n = w.size();
    std::vector<long long> lags(n + 1);
    for (std::size_t k = 0; k <= n; ++k) lags[k] = static_cast<long long>(k);
    const auto mags = detail::xcorr_magnitudes(w.samples, w.samples, w.dt, lags);

    AcfCurve curve;
    curve.dt = w.dt;
    curve.power.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) curve.power[k] = mags[k] * mags[k];
    return curve;
}

double find_mainlobe_null(const AcfCurve& curve) {
    const auto& p = curve.power;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        if (p[k] < p[k - 1] && p[k] < p[k + 1]) {
            // parabola through the three bracketing samples
            const double denom = p[k - 1] - 2.0 * p[k] + p[k + 1];
            double shift = denom != 0.0 ? 0.5 * (p[k - 1] - p[k + 1]) / denom : 0.0;
            shift = std::clamp(shift, -0.5, 0.5);
            return (static_cast<double>(k) + shift) * curve.dt;
        }
    }
    throw NoMainlobeNull("|R|^2 has no interior local minimum");
}

double pslr_db(const AcfCurve& curve, double null_delay) {
    const auto& p = curve.power;
    double peak = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (curve.delay_at(k) >= null_delay) {
            peak = std::max(peak, p[k]);
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("pslr: no samples beyond the mainlobe null");
    return 10.0 * std::log10(peak);
}

namespace {

// trapezoid over the whole curve
double trapezoid_total(const AcfCurve& curve) {
    const auto& p = curve.power;
    KahanSum acc;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        acc.add(0.5 * (p[k] + p[k + 1]) * curve.dt);
    }
    return acc.sum;
}

// trapezoid from 0 to tau, with a linearly interpolated partial cell so
// mainlobe + sidelobe equals the total exactly
double trapezoid_prefix(const AcfCurve& curve, double tau) {
    const auto& p = curve.power;
    const double x = tau / curve.dt;
    std::size_t k0 = static_cast<std::size_t>(std::max(0.0, std::floor(x)));
    k0 = std::min(k0, p.size() - 2);
    KahanSum acc;
    for (std::size_t k = 0; k < k0; ++k) {
        acc.add(0.5 * (p[k] + p[k + 1]) * curve.dt);
    }
    const double frac = x - static_cast<double>(k0);
    const double p_tau = p[k0] * (1.0 - frac) + p[k0 + 1] * frac;
    acc.add(0.5 * (p[k0] + p_tau) * (tau - static_cast<double>(k0) * curve.dt));
    return acc.sum;
}

}  // namespace

double isl_linear(const AcfCurve& curve, double null_delay) {
    if (curve.power.size() < 2) throw std::invalid_argument("isl: curve too short");
    if (!(null_delay > 0.0) || null_delay >= curve.delay_at(curve.power.size() - 1)) {
        throw std::invalid_argument("isl: null delay outside (0, T)");
    }
    const double total = trapezoid_total(curve);
    const double mainlobe = trapezoid_prefix(curve, null_delay);
    return (total - mainlobe) / mainlobe;
}

double isl_db(const AcfCurve& curve, double null_delay) {
    return 10.0 * std::log10(isl_linear(curve, null_delay));
}

AcfReport analyze_acf(const SampledWaveform& w) {
    AcfReport report;
    report.curve = acf(w);
    report.null_delay = find_mainlobe_null(report.curve);
    report.pslr_db = pslr_db(report.curve, report.null_delay);
    report.isl_db = isl_db(report.curve, report.null_delay);
    return report;
}

}  // namespace mtsfm
