#include "mtsfm/design.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mtsfm/errors.hpp"

namespace mtsfm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2Pi = std::numbers::sqrt2 * std::numbers::pi;

double cos_pi_l(std::size_t l) { return (l % 2 == 0) ? 1.0 : -1.0; }

// normalized coupling of a two-coefficient pair on the unit circle:
// rho_norm = sqrt(3/2) (2 c1 - c2) / pi
double rho_norm_of_pair(double c1, double c2) {
    return std::sqrt(1.5) * (2.0 * c1 - c2) / kPi;
}

}  // namespace

void DesignTarget::validate() const {
    if (!(beta_rms > 0.0)) throw std::invalid_argument("DesignTarget: beta_rms must be positive");
    if (!(duration > 0.0)) throw std::invalid_argument("DesignTarget: duration must be positive");
    if (harmonics < 1) throw std::invalid_argument("DesignTarget: harmonics must be >= 1");
}

FourierCoefficients two_coeff_family(const DesignTarget& target, double b1, int branch) {
    target.validate();
    if (target.harmonics != 2) {
        throw std::invalid_argument("two_coeff_family: target must have harmonics == 2");
    }
    if (branch != 1 && branch != -1) {
        throw std::invalid_argument("two_coeff_family: branch must be +1 or -1");
    }
    const double radius_sq = target.beta_rms * target.beta_rms / (2.0 * kPi * kPi);
    const double rem = radius_sq - b1 * b1;
    if (rem < -1e-12 * radius_sq) {
        throw InfeasibleConstraint("two_coeff_family: |b1| exceeds the bandwidth radius");
    }
    const double b2 = static_cast<double>(branch) * std::sqrt(std::max(rem, 0.0));
    return FourierCoefficients::sine_only({b1, b2});
}

FourierCoefficients max_rho_coefficients(const DesignTarget& target) {
    target.validate();
    const std::size_t L = target.harmonics;
    double sum = 0.0;
    for (std::size_t l = 1; l <= L; ++l) {
        const double g = cos_pi_l(l) / (kPi * static_cast<double>(l));
        sum += g * g;
    }
    const double scale = -std::numbers::sqrt2 * target.beta_rms / (2.0 * kPi * std::sqrt(sum));
    std::vector<double> b(L);
    for (std::size_t l = 1; l <= L; ++l) {
        b[l - 1] = scale * cos_pi_l(l) / (kPi * static_cast<double>(l));
    }
    return FourierCoefficients::sine_only(std::move(b));
}

double max_rho_norm_bound(std::size_t harmonics) {
    if (harmonics < 1) throw std::invalid_argument("max_rho_norm_bound: harmonics must be >= 1");
    double sum = 0.0;
    for (std::size_t l = 1; l <= harmonics; ++l) {
        sum += 1.0 / (static_cast<double>(l) * static_cast<double>(l));
    }
    return std::sqrt(6.0) / kPi * std::sqrt(sum);
}

DesignTarget lfm_equivalent_target(double time_bandwidth, double duration,
                                   std::size_t harmonics) {
    if (!(time_bandwidth > 0.0)) {
        throw std::invalid_argument("lfm_equivalent_target: time_bandwidth must be positive");
    }
    if (!(duration > 0.0)) {
        throw std::invalid_argument("lfm_equivalent_target: duration must be positive");
    }
    DesignTarget target;
    target.duration = duration;
    target.harmonics = harmonics;
    const double delta_f = time_bandwidth / duration;
    target.beta_rms = kPi * delta_f / std::sqrt(3.0);
    return target;
}

FourierCoefficients lfm_limit_coefficients(double swept_bandwidth, std::size_t harmonics) {
    if (harmonics < 1) {
        throw std::invalid_argument("lfm_limit_coefficients: harmonics must be >= 1");
    }
    // up-sweep limit m(t) -> delta_f t / T
    std::vector<double> b(harmonics);
    for (std::size_t l = 1; l <= harmonics; ++l) {
        b[l - 1] = -swept_bandwidth * cos_pi_l(l) / (kPi * static_cast<double>(l));
    }
    return FourierCoefficients::sine_only(std::move(b));
}

std::array<FourierCoefficients, 4> table1_seeds(const DesignTarget& target) {
    target.validate();
    if (target.harmonics != 2) {
        throw std::invalid_argument("table1_seeds: target must have harmonics == 2");
    }
    // tabulated four-digit pairs; renormalized to the exact bandwidth
    // constraint before scaling
    constexpr double kPairs[4][2] = {
        {0.8944, -0.4473},
        {0.1292, -0.9916},
        {-0.4472, -0.8944},
        {-0.8944, 0.4473},
    };
    std::array<FourierCoefficients, 4> seeds;
    for (std::size_t row = 0; row < 4; ++row) {
        const double norm = std::hypot(kPairs[row][0], kPairs[row][1]);
        const double scale = target.beta_rms / (kSqrt2Pi * norm);
        seeds[row] = FourierCoefficients::sine_only(
            {kPairs[row][0] * scale, kPairs[row][1] * scale});
    }
    return seeds;
}

std::vector<TwoCoeffSweepPoint> two_coeff_sweep(std::size_t n_points) {
    if (n_points < 2) throw std::invalid_argument("two_coeff_sweep: need at least 2 points");
    std::vector<TwoCoeffSweepPoint> sweep(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double c1 =
            -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double c2 = std::sqrt(std::max(0.0, 1.0 - c1 * c1));
        sweep[i] = {c1, c2, -c2, rho_norm_of_pair(c1, c2), rho_norm_of_pair(c1, -c2)};
    }
    return sweep;
}

}  // namespace mtsfm
