#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mtsfm/ambiguity.hpp"
#include "mtsfm/eoa.hpp"
#include "mtsfm/waveform.hpp"

namespace mtsfm {

/// Sentinel returned by the ISL objective when the candidate waveform has
/// no detectable mainlobe null; far above any attainable ISL ratio, so the
/// optimizer retreats instead of aborting.
inline constexpr double kNoNullPenalty = 1e6;

/// Configuration of one constrained sidelobe-minimization run.
struct IslProblem {
    WaveformSpec seed;
    std::size_t pad = 126;      // zero coefficients appended to the seed
    double delta = 0.1;         // relative RMS-bandwidth band
    double epsilon = 0.05;      // relative coupling-factor band
    double rho_abs_tol = 1e-3;  // |rho_norm| below which the rho constraint is dropped
    std::size_t max_evals = 300000;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Frozen-grid evaluation context. The sample count is pinned from the
/// padded seed so every objective evaluation within a run sees the same
/// deterministic grid.
class IslContext {
public:
    explicit IslContext(const IslProblem& problem);

    /// Linear-scale ISL of the padded sine-coefficient vector, with the
    /// mainlobe null re-detected per evaluation; kNoNullPenalty when no
    /// null exists.
    double objective(const std::vector<double>& b) const;

    /// Full spec for a padded coefficient vector (a0 and cosine
    /// coefficients come from the seed, grid settings preserved).
    WaveformSpec spec_of(const std::vector<double>& b) const;

    /// synthesize() on the frozen grid.
    SampledWaveform synthesize_frozen(const std::vector<double>& b) const;

    std::size_t n_samples() const { return n_samples_; }
    std::size_t total_harmonics() const { return total_harmonics_; }
    double duration() const { return duration_; }
    const std::vector<double>& seed_b() const { return seed_b_; }
    double seed_beta_rms() const { return seed_beta_rms_; }
    double seed_rho() const { return seed_rho_; }
    bool rho_constraint_active() const { return rho_active_; }
    double delta() const { return delta_; }
    double epsilon() const { return epsilon_; }

private:
    double duration_;
    int oversample_;
    double a0_;
    std::vector<double> a_;       // padded cosine coefficients (fixed)
    std::vector<double> seed_b_;  // padded sine coefficients
    std::size_t total_harmonics_;
    std::size_t n_samples_;
    double seed_beta_rms_;
    double seed_rho_;
    bool rho_active_;
    double delta_;
    double epsilon_;
};

/// Constraint excesses in natural units (zero when satisfied): how far
/// beta_rms and rho lie outside their bands around the seed values.
struct ConstraintViolations {
    double beta_rms = 0.0;  // rad/s
    double rho = 0.0;       // rad^2

    double max_relative(double beta_ref, double rho_ref) const;
};

/// Free-function forms of the spec'd operations.
double objective(const std::vector<double>& b, const IslContext& ctx);
ConstraintViolations constraints(const std::vector<double>& b, const IslContext& ctx);

/// One accepted (feasible, improving) iterate.
struct IslHistoryEntry {
    double objective = 0.0;      // linear-scale ISL
    double max_violation = 0.0;  // dimensionless constraint excess
};

struct IslResult {
    FourierCoefficients coeffs;  // optimized, padded
    AcfReport initial_report;
    AcfReport final_report;
    EoaParameters initial_eoa;
    EoaParameters final_eoa;
    std::vector<IslHistoryEntry> history;
    bool feasible = false;
    bool improved = false;
    bool rho_constraint_active = false;
    std::size_t evals_used = 0;
};

/// Minimize ISL over the padded sine coefficients subject to the
/// RMS-bandwidth and coupling bands of the seed. Deterministic for a given
/// rng_seed; returns the best feasible iterate found within the budget,
/// or the seed itself (improved = false) when nothing better was found.
IslResult minimize_isl(const IslProblem& problem);

}  // namespace mtsfm
