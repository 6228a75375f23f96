// mtsfm command-line tool: synthesize, analyze, design and optimize
// MTSFM waveforms, exporting reproducible CSV/JSON experiment data.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtsfm/ambiguity.hpp"
#include "mtsfm/design.hpp"
#include "mtsfm/eoa.hpp"
#include "mtsfm/errors.hpp"
#include "mtsfm/io.hpp"
#include "mtsfm/isl_optimizer.hpp"
#include "mtsfm/version.hpp"
#include "mtsfm/waveform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNoImprovement = 4;

struct CommonArgs {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> rng_seed;
    std::optional<int> oversample;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

class Manifest {
public:
    Manifest(std::string command, const CommonArgs& args, std::uint64_t rng_seed)
        : command_(std::move(command)),
          config_(args.config),
          out_dir_(args.out_dir),
          rng_seed_(rng_seed),
          start_(std::chrono::steady_clock::now()) {
        fs::create_directories(args.out_dir);
    }

    fs::path out(const std::string& name) {
        outputs_.push_back(name);
        return fs::path(out_dir_) / name;
    }

    void finalize() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json j{{"command", command_},       {"config", config_},
               {"out_dir", out_dir_},       {"version", mtsfm::kVersion},
               {"rng_seed", rng_seed_},     {"duration_seconds", seconds},
               {"outputs", outputs_}};
        for (const auto& name : outputs_) {
            if (!fs::exists(fs::path(out_dir_) / name)) {
                throw std::runtime_error("declared output missing: " + name);
            }
        }
        mtsfm::write_text_atomic(fs::path(out_dir_) / "manifest.json", j.dump(2) + "\n");
    }

private:
    std::string command_;
    std::string config_;
    std::string out_dir_;
    std::uint64_t rng_seed_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> outputs_;
};

mtsfm::WaveformSpec spec_from_config(const json& cfg, const CommonArgs& args) {
    mtsfm::WaveformSpec spec = mtsfm::spec_from_json(cfg);
    if (args.oversample) {
        spec.oversample = *args.oversample;
        spec.validate();
    }
    return spec;
}

struct AfRequest {
    double delay_span;
    std::size_t delay_count = 201;
    double doppler_span;
    std::size_t doppler_count = 101;
};

AfRequest af_request(const json& cfg, const mtsfm::WaveformSpec& spec) {
    AfRequest req;
    req.delay_span = spec.duration;
    req.doppler_span = 10.0 / spec.duration;
    if (cfg.contains("af")) {
        const auto& a = cfg.at("af");
        if (a.contains("delay_span")) req.delay_span = a.at("delay_span").get<double>();
        if (a.contains("delay_count")) req.delay_count = a.at("delay_count").get<std::size_t>();
        if (a.contains("doppler_span")) req.doppler_span = a.at("doppler_span").get<double>();
        if (a.contains("doppler_count")) {
            req.doppler_count = a.at("doppler_count").get<std::size_t>();
        }
    }
    if (req.delay_count < 2 || req.doppler_count < 1) {
        throw std::invalid_argument("af: delay_count >= 2 and doppler_count >= 1 required");
    }
    return req;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? 0.5 * (lo + hi)
                      : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

mtsfm::AfGrid compute_af(const mtsfm::SampledWaveform& w, const AfRequest& req) {
    return mtsfm::ambiguity(w, linspace(-req.delay_span, req.delay_span, req.delay_count),
                            linspace(-req.doppler_span, req.doppler_span, req.doppler_count));
}

int cmd_analyze(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    const mtsfm::WaveformSpec spec = spec_from_config(cfg, args);
    Manifest manifest("analyze", args, args.rng_seed.value_or(0));

    const mtsfm::SampledWaveform w = mtsfm::synthesize(spec);
    const mtsfm::AcfReport report = mtsfm::analyze_acf(w);
    const mtsfm::EoaParameters eoa = mtsfm::eoa_closed_form(spec.coeffs, spec.duration);

    mtsfm::write_acf_csv(manifest.out("acf.csv"), report.curve);
    mtsfm::write_text_atomic(manifest.out("eoa.json"), mtsfm::eoa_to_json(eoa).dump(2) + "\n");
    const json metrics{{"null_delay", report.null_delay},
                       {"pslr_db", report.pslr_db},
                       {"isl_db", report.isl_db},
                       {"n_samples", w.size()},
                       {"energy", w.energy}};
    mtsfm::write_text_atomic(manifest.out("metrics.json"), metrics.dump(2) + "\n");
    if (cfg.contains("af")) {
        mtsfm::write_af_csv(manifest.out("af.csv"), compute_af(w, af_request(cfg, spec)));
    }
    manifest.finalize();
    return kExitOk;
}

int cmd_af(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    const mtsfm::WaveformSpec spec = spec_from_config(cfg, args);
    Manifest manifest("af", args, args.rng_seed.value_or(0));
    const mtsfm::SampledWaveform w = mtsfm::synthesize(spec);
    mtsfm::write_af_csv(manifest.out("af.csv"), compute_af(w, af_request(cfg, spec)));
    manifest.finalize();
    return kExitOk;
}

int cmd_figure1(const CommonArgs& args) {
    json cfg = json::object();
    if (!args.config.empty()) cfg = load_config(args.config);
    const auto points = cfg.value("points", std::size_t{721});
    const auto max_l = cfg.value("max_harmonics", std::size_t{64});
    Manifest manifest("figure1", args, args.rng_seed.value_or(0));

    const auto sweep = mtsfm::two_coeff_sweep(points);
    std::string circle = "c1,c2,branch\n";
    std::string rho = "b1_norm,branch,rho_norm\n";
    for (const auto& p : sweep) {
        circle += mtsfm::format_sig9(p.c1) + "," + mtsfm::format_sig9(p.c2_pos) + ",1\n";
        rho += mtsfm::format_sig9(p.c1) + ",1," + mtsfm::format_sig9(p.rho_norm_pos) + "\n";
    }
    for (const auto& p : sweep) {
        circle += mtsfm::format_sig9(p.c1) + "," + mtsfm::format_sig9(p.c2_neg) + ",-1\n";
        rho += mtsfm::format_sig9(p.c1) + ",-1," + mtsfm::format_sig9(p.rho_norm_neg) + "\n";
    }
    mtsfm::write_text_atomic(manifest.out("fig1_coefficient_circle.csv"), circle);
    mtsfm::write_text_atomic(manifest.out("fig1_rho_norm_vs_b1.csv"), rho);

    std::string rho_max = "L,rho_norm_max\n";
    for (std::size_t l = 1; l <= max_l; ++l) {
        rho_max += std::to_string(l) + "," + mtsfm::format_sig9(mtsfm::max_rho_norm_bound(l)) + "\n";
    }
    mtsfm::write_text_atomic(manifest.out("fig1_rho_norm_max_vs_L.csv"), rho_max);
    manifest.finalize();
    return kExitOk;
}

int cmd_design_rho(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    const double duration = cfg.value("T", 1.0);
    const auto harmonics = cfg.value("L", std::size_t{2});
    mtsfm::DesignTarget target;
    if (cfg.contains("beta_rms")) {
        target.beta_rms = cfg.at("beta_rms").get<double>();
        target.duration = duration;
        target.harmonics = harmonics;
    } else if (cfg.contains("time_bandwidth")) {
        target = mtsfm::lfm_equivalent_target(cfg.at("time_bandwidth").get<double>(), duration,
                                              harmonics);
    } else {
        throw std::invalid_argument("design-rho: config needs 'beta_rms' or 'time_bandwidth'");
    }
    Manifest manifest("design-rho", args, args.rng_seed.value_or(0));

    const mtsfm::FourierCoefficients coeffs = mtsfm::max_rho_coefficients(target);
    mtsfm::WaveformSpec spec{target.duration, coeffs, args.oversample.value_or(8)};
    mtsfm::write_text_atomic(manifest.out("spec.json"), mtsfm::spec_to_json(spec).dump(2) + "\n");
    const auto eoa = mtsfm::eoa_closed_form(coeffs, target.duration);
    mtsfm::write_text_atomic(manifest.out("eoa.json"), mtsfm::eoa_to_json(eoa).dump(2) + "\n");
    manifest.finalize();
    return kExitOk;
}

int cmd_optimize(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    mtsfm::IslProblem problem = mtsfm::problem_from_json(cfg);
    if (args.rng_seed) problem.rng_seed = *args.rng_seed;
    if (args.oversample) {
        problem.seed.oversample = *args.oversample;
        problem.validate();
    }
    Manifest manifest("optimize", args, problem.rng_seed);

    const mtsfm::IslResult result = mtsfm::minimize_isl(problem);
    mtsfm::write_text_atomic(manifest.out("result.json"),
                             mtsfm::result_to_json(result, problem).dump(2) + "\n");
    mtsfm::WaveformSpec optimized{problem.seed.duration, result.coeffs, problem.seed.oversample};
    mtsfm::write_text_atomic(manifest.out("spec_optimized.json"),
                             mtsfm::spec_to_json(optimized).dump(2) + "\n");
    mtsfm::write_acf_csv(manifest.out("acf_initial.csv"), result.initial_report.curve);
    mtsfm::write_acf_csv(manifest.out("acf_final.csv"), result.final_report.curve);
    manifest.finalize();
    if (!result.improved) {
        std::cerr << "optimize: evaluation budget exhausted without improvement\n";
        return kExitNoImprovement;
    }
    return kExitOk;
}

int cmd_tables(const CommonArgs& args) {
    json cfg = json::object();
    if (!args.config.empty()) cfg = load_config(args.config);
    const double time_bandwidth = cfg.value("time_bandwidth", 200.0);
    const double duration = cfg.value("T", 1.0);
    Manifest manifest("tables", args, args.rng_seed.value_or(cfg.value("rng_seed", 1)));

    const auto target = mtsfm::lfm_equivalent_target(time_bandwidth, duration, 2);
    const auto seeds = mtsfm::table1_seeds(target);
    const char* names[4] = {"I", "II", "III", "IV"};

    std::string table1 = "waveform,c1,c2,rho_norm\n";
    const double to_norm = std::numbers::sqrt2 * std::numbers::pi / target.beta_rms;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto eoa = mtsfm::eoa_closed_form(seeds[i], duration);
        table1 += std::string(names[i]) + "," + mtsfm::format_sig9(seeds[i].b[0] * to_norm) + "," +
                  mtsfm::format_sig9(seeds[i].b[1] * to_norm) + "," +
                  mtsfm::format_sig9(eoa.rho_norm) + "\n";
    }
    mtsfm::write_text_atomic(manifest.out("table1.csv"), table1);

    std::string table2 =
        "waveform,isl_init_db,isl_opt_db,pslr_init_db,pslr_opt_db,beta_ratio,rho_ratio\n";
    bool any_failed = false;
    for (std::size_t i = 0; i < 4; ++i) {
        mtsfm::IslProblem problem;
        problem.seed = mtsfm::WaveformSpec{duration, seeds[i], cfg.value("oversample", 8)};
        problem.pad = cfg.value("pad", std::size_t{126});
        problem.delta = cfg.value("delta", 0.1);
        problem.epsilon = cfg.value("epsilon", 0.05);
        problem.max_evals = cfg.value("max_evals", std::size_t{300000});
        problem.rng_seed = args.rng_seed.value_or(cfg.value("rng_seed", std::uint64_t{1}));
        if (args.oversample) problem.seed.oversample = *args.oversample;
        try {
            const mtsfm::IslResult result = mtsfm::minimize_isl(problem);
            const double beta_ratio = std::sqrt(result.final_eoa.beta_rms_sq) /
                                      std::sqrt(result.initial_eoa.beta_rms_sq);
            table2 += std::string(names[i]) + "," +
                      mtsfm::format_sig9(result.initial_report.isl_db) + "," +
                      mtsfm::format_sig9(result.final_report.isl_db) + "," +
                      mtsfm::format_sig9(result.initial_report.pslr_db) + "," +
                      mtsfm::format_sig9(result.final_report.pslr_db) + "," +
                      mtsfm::format_sig9(beta_ratio) + ",";
            if (result.rho_constraint_active) {
                table2 += mtsfm::format_sig9(result.final_eoa.rho / result.initial_eoa.rho);
            }
            table2 += "\n";
            mtsfm::write_text_atomic(manifest.out(std::string("result_") + names[i] + ".json"),
                                     mtsfm::result_to_json(result, problem).dump(2) + "\n");
            if (!result.feasible || !result.improved) any_failed = true;
        } catch (const std::exception& e) {
            std::cerr << "tables: waveform " << names[i] << " failed: " << e.what() << "\n";
            table2 += std::string(names[i]) + ",,,,,,\n";
            any_failed = true;
        }
    }
    mtsfm::write_text_atomic(manifest.out("table2.csv"), table2);
    manifest.finalize();
    return any_failed ? kExitNoImprovement : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MTSFM waveform design toolkit"};
    app.set_version_flag("--version", mtsfm::kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    std::uint64_t seed_arg = 0;
    int oversample_arg = 0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", args.config, "input config JSON");
        if (config_required) c->required();
        sub->add_option("--out", args.out_dir, "output directory")->required();
        sub->add_option("--seed", seed_arg, "deterministic RNG seed")
            ->each([&](const std::string&) { args.rng_seed = seed_arg; });
        sub->add_option("--oversample", oversample_arg, "grid density override")
            ->each([&](const std::string&) { args.oversample = oversample_arg; });
    };

    add_common(app.add_subcommand("analyze", "ACF metrics and EOA parameters of a spec"), true);
    add_common(app.add_subcommand("af", "ambiguity surface of a spec"), true);
    add_common(app.add_subcommand("figure1", "two-coefficient design-family data"), false);
    add_common(app.add_subcommand("design-rho", "max-coupling coefficient synthesis"), true);
    add_common(app.add_subcommand("optimize", "constrained ISL minimization"), true);
    add_common(app.add_subcommand("tables", "benchmark seed + optimization tables"), false);

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (sub == "analyze") return cmd_analyze(args);
        if (sub == "af") return cmd_af(args);
        if (sub == "figure1") return cmd_figure1(args);
        if (sub == "design-rho") return cmd_design_rho(args);
        if (sub == "optimize") return cmd_optimize(args);
        if (sub == "tables") return cmd_tables(args);
    } catch (const mtsfm::NoMainlobeNull& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
