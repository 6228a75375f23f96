#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mtsfm/waveform.hpp"

namespace mtsfm {

/// Target mainlobe shape for coefficient synthesis.
struct DesignTarget {
    double beta_rms = 0.0;  // rad/s
    double duration = 1.0;  // s
    std::size_t harmonics = 2;

    void validate() const;
};

/// Two-coefficient family under the RMS-bandwidth equality constraint:
/// b2 = branch * sqrt(beta_rms^2 / (2 pi^2) - b1^2), branch in {+1, -1}.
/// Throws InfeasibleConstraint when |b1| exceeds the feasible radius.
FourierCoefficients two_coeff_family(const DesignTarget& target, double b1, int branch);

/// Sine coefficients that maximize the normalized range-Doppler coupling
/// for L harmonics at fixed RMS bandwidth (Lagrange-optimal direction
/// proportional to -cos(pi l) / (pi l)).
FourierCoefficients max_rho_coefficients(const DesignTarget& target);

/// Analytic optimum attained by max_rho_coefficients:
/// rho_norm_max(L) = (sqrt(6)/pi) sqrt(sum_{l<=L} 1/l^2).
double max_rho_norm_bound(std::size_t harmonics);

/// Target whose RMS bandwidth equals an LFM of the given time-bandwidth
/// product: delta_f = time_bandwidth / T, beta_rms = pi delta_f / sqrt(3).
DesignTarget lfm_equivalent_target(double time_bandwidth, double duration,
                                   std::size_t harmonics = 2);

/// Truncated Fourier series of the up-sweeping linear chirp
/// m(t) -> delta_f t / T: b_l = -delta_f cos(pi l) / (pi l).
FourierCoefficients lfm_limit_coefficients(double swept_bandwidth, std::size_t harmonics);

/// The four benchmark two-coefficient seeds, denormalized to the target
/// bandwidth via b_l = c_l beta_rms / (sqrt(2) pi). The tabulated pairs are
/// renormalized to the exact bandwidth constraint before scaling.
std::array<FourierCoefficients, 4> table1_seeds(const DesignTarget& target);

/// One sample of the normalized two-coefficient sweep: unit-circle pair
/// (c1, c2) for both branches and the corresponding rho_norm values.
struct TwoCoeffSweepPoint {
    double c1 = 0.0;
    double c2_pos = 0.0;
    double c2_neg = 0.0;
    double rho_norm_pos = 0.0;
    double rho_norm_neg = 0.0;
};

/// Sweep of c1 over [-1, 1] at n_points evenly spaced values.
std::vector<TwoCoeffSweepPoint> two_coeff_sweep(std::size_t n_points = 721);

}  // namespace mtsfm
