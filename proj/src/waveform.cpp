#include "mtsfm/waveform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mtsfm {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// cos/sin of pi m / N for m in [0, 2N); shared by repeated synthesis on
// one grid so frozen-grid optimization loops do not rebuild it.
struct TrigTable {
    std::size_t n = 0;
    std::vector<double> cos_v;
    std::vector<double> sin_v;

    void build(std::size_t grid_n) {
        if (n == grid_n) return;
        n = grid_n;
        cos_v.resize(2 * n);
        sin_v.resize(2 * n);
        for (std::size_t m = 0; m < 2 * n; ++m) {
            const double angle = kPi * static_cast<double>(m) / static_cast<double>(n);
            cos_v[m] = std::cos(angle);
            sin_v[m] = std::sin(angle);
        }
    }
};

}  // namespace

void FourierCoefficients::validate() const {
    require(a.size() == b.size(), "FourierCoefficients: a and b must have equal length");
    require(!b.empty(), "FourierCoefficients: at least one harmonic required");
    require(std::isfinite(a0) && all_finite(a) && all_finite(b),
            "FourierCoefficients: entries must be finite");
}

FourierCoefficients FourierCoefficients::sine_only(std::vector<double> b_coeffs) {
    FourierCoefficients c;
    c.a.assign(b_coeffs.size(), 0.0);
    c.b = std::move(b_coeffs);
    return c;
}

FourierCoefficients FourierCoefficients::zeros(std::size_t harmonics) {
    FourierCoefficients c;
    c.a.assign(harmonics, 0.0);
    c.b.assign(harmonics, 0.0);
    return c;
}

ModulationIndices ModulationIndices::from(const FourierCoefficients& coeffs, double duration) {
    coeffs.validate();
    require(duration > 0.0, "ModulationIndices: duration must be positive");
    ModulationIndices m;
    const std::size_t L = coeffs.harmonics();
    m.alpha.resize(L);
    m.beta.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        const double l = static_cast<double>(i + 1);
        m.alpha[i] = coeffs.a[i] * duration / l;
        m.beta[i] = coeffs.b[i] * duration / l;
    }
    return m;
}

void WaveformSpec::validate() const {
    require(std::isfinite(duration) && duration > 0.0, "WaveformSpec: duration must be positive");
    require(oversample >= 2, "WaveformSpec: oversample must be >= 2");
    coeffs.validate();
}

double WaveformSpec::bandwidth_span() const {
    double span = std::abs(coeffs.a0);
    for (std::size_t i = 0; i < coeffs.harmonics(); ++i) {
        span += 2.0 * (std::abs(coeffs.a[i]) + std::abs(coeffs.b[i]));
    }
    const double floor = 2.0 * static_cast<double>(coeffs.harmonics()) / duration;
    return std::max(span, floor);
}

std::size_t WaveformSpec::grid_size() const {
    return static_cast<std::size_t>(std::ceil(oversample * duration * bandwidth_span()));
}

namespace {

void check_support(const WaveformSpec& spec, double t) {
    if (std::abs(t) > 0.5 * spec.duration) {
        throw std::domain_error("time outside the waveform support [-T/2, T/2]");
    }
}

}  // namespace

double eval_frequency(const WaveformSpec& spec, double t) {
    spec.validate();
    check_support(spec, t);
    const double T = spec.duration;
    double m = 0.5 * spec.coeffs.a0;
    for (std::size_t i = 0; i < spec.coeffs.harmonics(); ++i) {
        const double w = 2.0 * kPi * static_cast<double>(i + 1) * t / T;
        m += spec.coeffs.a[i] * std::cos(w) + spec.coeffs.b[i] * std::sin(w);
    }
    return m;
}

double eval_phase(const WaveformSpec& spec, double t) {
    spec.validate();
    check_support(spec, t);
    const double T = spec.duration;
    double phase = kPi * spec.coeffs.a0 * t;
    for (std::size_t i = 0; i < spec.coeffs.harmonics(); ++i) {
        const double l = static_cast<double>(i + 1);
        const double w = 2.0 * kPi * l * t / T;
        const double alpha = spec.coeffs.a[i] * T / l;
        const double beta = spec.coeffs.b[i] * T / l;
        phase += alpha * std::sin(w) - beta * std::cos(w);
    }
    return phase;
}

SampledWaveform synthesize_with_samples(const WaveformSpec& spec, std::size_t n_samples) {
    spec.validate();
    require(n_samples >= 1, "synthesize: sample count must be >= 1");

    const std::size_t N = n_samples;
    const double T = spec.duration;
    const double dt = T / static_cast<double>(N);
    const std::size_t L = spec.coeffs.harmonics();

    thread_local TrigTable table;
    table.build(N);

    // phase accumulation: the harmonic angle at t_n is
    //   2 pi l t_n / T = pi * l (2n + 1 - N) / N  (mod 2 pi),
    // an exact integer index into the pi m / N table.
    std::vector<double> phase(N);
    if (spec.coeffs.a0 != 0.0) {
        for (std::size_t n = 0; n < N; ++n) {
            const double t = -0.5 * T + (static_cast<double>(n) + 0.5) * dt;
            phase[n] = kPi * spec.coeffs.a0 * t;
        }
    }
    const long long two_n = 2 * static_cast<long long>(N);
    for (std::size_t i = 0; i < L; ++i) {
        const long long l = static_cast<long long>(i + 1);
        const double alpha = spec.coeffs.a[i] * T / static_cast<double>(l);
        const double beta = spec.coeffs.b[i] * T / static_cast<double>(l);
        if (alpha == 0.0 && beta == 0.0) continue;
        long long m = ((l * (1 - static_cast<long long>(N))) % two_n + two_n) % two_n;
        const long long step = (2 * l) % two_n;
        if (alpha == 0.0) {
            for (std::size_t n = 0; n < N; ++n) {
                phase[n] -= beta * table.cos_v[static_cast<std::size_t>(m)];
                m += step;
                if (m >= two_n) m -= two_n;
            }
        } else {
            for (std::size_t n = 0; n < N; ++n) {
                phase[n] += alpha * table.sin_v[static_cast<std::size_t>(m)] -
                            beta * table.cos_v[static_cast<std::size_t>(m)];
                m += step;
                if (m >= two_n) m -= two_n;
            }
        }
    }

    SampledWaveform w;
    w.dt = dt;
    w.samples.resize(N);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(N) * dt);
    for (std::size_t n = 0; n < N; ++n) {
        w.samples[n] = {amplitude * std::cos(phase[n]), amplitude * std::sin(phase[n])};
    }
    double energy = 0.0;
    for (const auto& s : w.samples) energy += std::norm(s);
    w.energy = energy * dt;
    return w;
}

SampledWaveform synthesize(const WaveformSpec& spec) {
    spec.validate();
    return synthesize_with_samples(spec, spec.grid_size());
}

}  // namespace mtsfm
