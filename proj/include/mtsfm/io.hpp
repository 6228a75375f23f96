#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtsfm/ambiguity.hpp"
#include "mtsfm/design.hpp"
#include "mtsfm/eoa.hpp"
#include "mtsfm/isl_optimizer.hpp"
#include "mtsfm/waveform.hpp"

namespace mtsfm {

// --- JSON schemas ---------------------------------------------------------
//
// WaveformSpec: {"T": s, "a0": Hz, "a": [Hz...], "b": [Hz...], "oversample": int}
//   Field order irrelevant. A missing "a" or "b" means all-zero of the other
//   list's length; a0 and oversample default to 0 and 8.
// EoaParameters: {"beta_rms_sq", "tau_rms_sq", "rho", "rho_norm"}
// IslProblem: {"seed": WaveformSpec, "pad", "delta", "epsilon",
//              "rho_abs_tol"?, "max_evals", "rng_seed"}

nlohmann::json spec_to_json(const WaveformSpec& spec);
WaveformSpec spec_from_json(const nlohmann::json& j);

nlohmann::json eoa_to_json(const EoaParameters& p);
EoaParameters eoa_from_json(const nlohmann::json& j);

IslProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const IslProblem& problem);
nlohmann::json result_to_json(const IslResult& result, const IslProblem& problem);

// --- CSV export -----------------------------------------------------------
//
// '.' decimal separator, 9 significant digits, LF line endings, header row.

/// Fixed decimal formatting used by every CSV writer.
std::string format_sig9(double v);

/// (tau, power_db); power floored at 1e-30 before the dB conversion.
void write_acf_csv(const std::filesystem::path& path, const AcfCurve& curve);

/// Long format (tau, nu, magnitude), delays fastest.
void write_af_csv(const std::filesystem::path& path, const AfGrid& grid);

/// (tau, nu) contour points.
void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<std::array<double, 2>>& points);

/// Write via a temporary file and rename so readers never observe a
/// partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace mtsfm
