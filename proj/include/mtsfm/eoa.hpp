#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mtsfm/waveform.hpp"

namespace mtsfm {

/// Second-order mainlobe descriptor of the ambiguity surface:
///   1 - |chi(tau, nu)|^2 ~= beta_rms_sq tau^2 + 2 rho tau nu + tau_rms_sq nu^2.
/// rho_norm = rho / (beta_rms tau_rms) mimics a correlation coefficient in
/// [-1, 1]; it is defined as 0 for an unmodulated pulse (beta_rms = 0).
struct EoaParameters {
    double beta_rms_sq = 0.0;  // rad^2/s^2
    double tau_rms_sq = 0.0;   // rad^2 s^2
    double rho = 0.0;          // rad^2
    double rho_norm = 0.0;     // dimensionless
};

/// Exact closed forms in the Fourier coefficients:
///   beta_rms_sq = 2 pi^2 sum(a_l^2 + b_l^2)
///   tau_rms_sq  = pi^2 T^2 / 3
///   rho         = -2 pi^2 T sum b_l cos(pi l) / (pi l)
EoaParameters eoa_closed_form(const FourierCoefficients& coeffs, double duration);

/// Independent oracle: Gauss-Legendre quadrature of the moment-integral
/// definitions over [-T/2, T/2], with phi-dot taken from the analytic
/// eval_frequency and the envelope weight from the sampled energy density.
EoaParameters eoa_numeric(const SampledWaveform& w, const WaveformSpec& spec);

/// n_points on the contour beta_rms_sq tau^2 + 2 rho tau nu
/// + tau_rms_sq nu^2 = xi, as (tau, nu) pairs forming a closed curve
/// (last point repeats the first). Requires 0 < xi < 1; throws
/// DegenerateEllipse when the form is not positive definite.
std::vector<std::array<double, 2>> eoa_contour(const EoaParameters& p, double xi,
                                               std::size_t n_points);

/// d(beta_rms_sq)/d(b_l) = 4 pi^2 b_l.
double beta_rms_sq_gradient(double b_l);

/// d(rho)/d(b_l) = -2 pi^2 T cos(pi l) / (pi l), for l >= 1.
double rho_gradient(std::size_t l, double duration);

}  // namespace mtsfm
