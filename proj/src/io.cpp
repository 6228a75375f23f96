#include "mtsfm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mtsfm {

namespace {

double get_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw std::invalid_argument(std::string("config: missing or non-numeric field '") + key +
                                    "'");
    }
    return j.at(key).get<double>();
}

std::vector<double> get_array(const nlohmann::json& j, const char* key) {
    const auto& node = j.at(key);
    if (!node.is_array()) {
        throw std::invalid_argument(std::string("config: field '") + key + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string("config: field '") + key +
                                        "' must contain numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

constexpr double kDbFloor = 1e-30;

}  // namespace

nlohmann::json spec_to_json(const WaveformSpec& spec) {
    return nlohmann::json{{"T", spec.duration},
                          {"a0", spec.coeffs.a0},
                          {"a", spec.coeffs.a},
                          {"b", spec.coeffs.b},
                          {"oversample", spec.oversample}};
}

WaveformSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("spec: expected a JSON object");
    WaveformSpec spec;
    spec.duration = get_number(j, "T");
    spec.coeffs.a0 = j.contains("a0") ? get_number(j, "a0") : 0.0;
    const bool has_a = j.contains("a");
    const bool has_b = j.contains("b");
    if (!has_a && !has_b) {
        throw std::invalid_argument("spec: at least one of 'a' or 'b' is required");
    }
    if (has_a) spec.coeffs.a = get_array(j, "a");
    if (has_b) spec.coeffs.b = get_array(j, "b");
    if (!has_a) spec.coeffs.a.assign(spec.coeffs.b.size(), 0.0);
    if (!has_b) spec.coeffs.b.assign(spec.coeffs.a.size(), 0.0);
    if (j.contains("oversample")) {
        spec.oversample = j.at("oversample").get<int>();
    }
    spec.validate();
    return spec;
}

nlohmann::json eoa_to_json(const EoaParameters& p) {
    return nlohmann::json{{"beta_rms_sq", p.beta_rms_sq},
                          {"tau_rms_sq", p.tau_rms_sq},
                          {"rho", p.rho},
                          {"rho_norm", p.rho_norm}};
}

EoaParameters eoa_from_json(const nlohmann::json& j) {
    EoaParameters p;
    p.beta_rms_sq = get_number(j, "beta_rms_sq");
    p.tau_rms_sq = get_number(j, "tau_rms_sq");
    p.rho = get_number(j, "rho");
    p.rho_norm = get_number(j, "rho_norm");
    return p;
}

IslProblem problem_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("seed")) {
        throw std::invalid_argument("problem: expected an object with a 'seed' spec");
    }
    IslProblem problem;
    problem.seed = spec_from_json(j.at("seed"));
    if (j.contains("pad")) problem.pad = j.at("pad").get<std::size_t>();
    if (j.contains("delta")) problem.delta = get_number(j, "delta");
    if (j.contains("epsilon")) problem.epsilon = get_number(j, "epsilon");
    if (j.contains("rho_abs_tol")) problem.rho_abs_tol = get_number(j, "rho_abs_tol");
    if (j.contains("max_evals")) problem.max_evals = j.at("max_evals").get<std::size_t>();
    if (j.contains("rng_seed")) problem.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    problem.validate();
    return problem;
}

nlohmann::json problem_to_json(const IslProblem& problem) {
    return nlohmann::json{{"seed", spec_to_json(problem.seed)}, {"pad", problem.pad},
                          {"delta", problem.delta},            {"epsilon", problem.epsilon},
                          {"rho_abs_tol", problem.rho_abs_tol}, {"max_evals", problem.max_evals},
                          {"rng_seed", problem.rng_seed}};
}

nlohmann::json result_to_json(const IslResult& result, const IslProblem& problem) {
    nlohmann::json history = nlohmann::json::array();
    for (const auto& entry : result.history) {
        history.push_back({{"objective", entry.objective}, {"max_violation", entry.max_violation}});
    }
    const double beta0 = std::sqrt(result.initial_eoa.beta_rms_sq);
    const double beta1 = std::sqrt(result.final_eoa.beta_rms_sq);
    nlohmann::json j{
        {"coefficients",
         spec_to_json(WaveformSpec{problem.seed.duration, result.coeffs, problem.seed.oversample})},
        {"initial",
         {{"isl_db", result.initial_report.isl_db},
          {"pslr_db", result.initial_report.pslr_db},
          {"null_delay", result.initial_report.null_delay},
          {"eoa", eoa_to_json(result.initial_eoa)}}},
        {"final",
         {{"isl_db", result.final_report.isl_db},
          {"pslr_db", result.final_report.pslr_db},
          {"null_delay", result.final_report.null_delay},
          {"eoa", eoa_to_json(result.final_eoa)}}},
        {"beta_ratio", beta1 / beta0},
        {"feasible", result.feasible},
        {"improved", result.improved},
        {"rho_constraint_active", result.rho_constraint_active},
        {"evals_used", result.evals_used},
        {"history", history}};
    if (result.rho_constraint_active) {
        j["rho_ratio"] = result.final_eoa.rho / result.initial_eoa.rho;
    } else {
        j["rho_ratio"] = nullptr;
    }
    return j;
}

std::string format_sig9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_acf_csv(const std::filesystem::path& path, const AcfCurve& curve) {
    std::string text = "tau,power_db\n";
    for (std::size_t k = 0; k < curve.power.size(); ++k) {
        const double power = std::max(curve.power[k], kDbFloor);
        text += format_sig9(curve.delay_at(k));
        text += ',';
        text += format_sig9(10.0 * std::log10(power));
        text += '\n';
    }
    write_text_atomic(path, text);
}

void write_af_csv(const std::filesystem::path& path, const AfGrid& grid) {
    std::string text = "tau,nu,magnitude\n";
    for (std::size_t row = 0; row < grid.dopplers.size(); ++row) {
        for (std::size_t col = 0; col < grid.delays.size(); ++col) {
            text += format_sig9(grid.delays[col]);
            text += ',';
            text += format_sig9(grid.dopplers[row]);
            text += ',';
            text += format_sig9(grid.at(row, col));
            text += '\n';
        }
    }
    write_text_atomic(path, text);
}

void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<std::array<double, 2>>& points) {
    std::string text = "tau,nu\n";
    for (const auto& p : points) {
        text += format_sig9(p[0]);
        text += ',';
        text += format_sig9(p[1]);
        text += '\n';
    }
    write_text_atomic(path, text);
}

}  // namespace mtsfm
