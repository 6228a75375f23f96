#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mtsfm::detail {

/// Cross-correlation magnitudes at integer sample lags:
///   |sum_n g_n conj(s_{n+k})| * dt   for each requested lag k.
/// g and s must have equal length N; lags must lie in [-N, N]. One FFT
/// triple serves all lags of a call, and repeated calls with the same
/// inputs are bitwise reproducible.
std::vector<double> xcorr_magnitudes(const std::vector<std::complex<double>>& g,
                                     const std::vector<std::complex<double>>& s, double dt,
                                     const std::vector<long long>& lags);

}  // namespace mtsfm::detail
