#include "mtsfm/eoa.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mtsfm/errors.hpp"

namespace mtsfm {

namespace {

constexpr double kPi = std::numbers::pi;

double cos_pi_l(std::size_t l) { return (l % 2 == 0) ? 1.0 : -1.0; }

// 20-point Gauss-Legendre rule on [-1, 1]
constexpr std::size_t kGlOrder = 20;
constexpr double kGlNodes[kGlOrder][2] = {
    {-0.99312859918509492, 0.017614007139152118},
    {-0.96397192727791379, 0.040601429800386941},
    {-0.91223442825132591, 0.062672048334109064},
    {-0.83911697182221882, 0.083276741576704749},
    {-0.74633190646015079, 0.10193011981724044},
    {-0.63605368072651503, 0.11819453196151842},
    {-0.51086700195082710, 0.13168863844917663},
    {-0.37370608871541956, 0.14209610931838205},
    {-0.22778585114164508, 0.14917298647260375},
    {-0.076526521133497334, 0.15275338713072585},
    {0.076526521133497334, 0.15275338713072585},
    {0.22778585114164508, 0.14917298647260375},
    {0.37370608871541956, 0.14209610931838205},
    {0.51086700195082710, 0.13168863844917663},
    {0.63605368072651503, 0.11819453196151842},
    {0.74633190646015079, 0.10193011981724044},
    {0.83911697182221882, 0.083276741576704749},
    {0.91223442825132591, 0.062672048334109064},
    {0.96397192727791379, 0.040601429800386941},
    {0.99312859918509492, 0.017614007139152118},
};

double normalized_coupling(double beta_rms_sq, double tau_rms_sq, double rho) {
    const double denom_sq = beta_rms_sq * tau_rms_sq;
    return denom_sq > 0.0 ? rho / std::sqrt(denom_sq) : 0.0;
}

}  // namespace

EoaParameters eoa_closed_form(const FourierCoefficients& coeffs, double duration) {
    coeffs.validate();
    if (!(duration > 0.0)) throw std::invalid_argument("eoa: duration must be positive");

    EoaParameters p;
    double sum_sq = 0.0;
    double rho_sum = 0.0;
    for (std::size_t i = 0; i < coeffs.harmonics(); ++i) {
        const std::size_t l = i + 1;
        sum_sq += coeffs.a[i] * coeffs.a[i] + coeffs.b[i] * coeffs.b[i];
        rho_sum += coeffs.b[i] * cos_pi_l(l) / (kPi * static_cast<double>(l));
    }
    p.beta_rms_sq = 2.0 * kPi * kPi * sum_sq;
    p.tau_rms_sq = kPi * kPi * duration * duration / 3.0;
    p.rho = -2.0 * kPi * kPi * duration * rho_sum;
    p.rho_norm = normalized_coupling(p.beta_rms_sq, p.tau_rms_sq, p.rho);
    return p;
}

EoaParameters eoa_numeric(const SampledWaveform& w, const WaveformSpec& spec) {
    spec.validate();
    if (w.samples.empty()) throw std::invalid_argument("eoa_numeric: empty waveform");

    const double T = spec.duration;
    // rectangular envelope's energy density, taken from the samples
    const double density = w.energy / T;
    const std::size_t panels = std::max<std::size_t>(16, 2 * spec.coeffs.harmonics());
    const double width = T / static_cast<double>(panels);

    double i_phid = 0.0;   // integral of phi-dot
    double i_phid2 = 0.0;  // integral of phi-dot^2
    double i_t = 0.0;      // integral of t
    double i_t2 = 0.0;     // integral of t^2
    double i_tphid = 0.0;  // integral of t phi-dot
    for (std::size_t panel = 0; panel < panels; ++panel) {
        const double left = -0.5 * T + static_cast<double>(panel) * width;
        const double mid = left + 0.5 * width;
        for (const auto& node : kGlNodes) {
            const double t = mid + 0.5 * width * node[0];
            const double wgt = 0.5 * width * node[1];
            const double phid = 2.0 * kPi * eval_frequency(spec, t);
            i_phid += wgt * phid;
            i_phid2 += wgt * phid * phid;
            i_t += wgt * t;
            i_t2 += wgt * t * t;
            i_tphid += wgt * t * phid;
        }
    }

    EoaParameters p;
    const double mean_phid = density * i_phid;
    p.beta_rms_sq = density * i_phid2 - mean_phid * mean_phid;
    const double t0 = density * i_t;  // first time moment (zero by symmetry)
    p.tau_rms_sq = 4.0 * kPi * kPi * density * (i_t2 - 2.0 * t0 * i_t + t0 * t0 * T);
    p.rho = 2.0 * kPi * density * i_tphid;
    p.rho_norm = normalized_coupling(p.beta_rms_sq, p.tau_rms_sq, p.rho);
    return p;
}

std::vector<std::array<double, 2>> eoa_contour(const EoaParameters& p, double xi,
                                               std::size_t n_points) {
    if (!(xi > 0.0 && xi < 1.0)) throw std::domain_error("eoa_contour: xi must lie in (0, 1)");
    if (n_points < 3) throw std::invalid_argument("eoa_contour: need at least 3 points");

    const double A = p.beta_rms_sq;
    const double C = p.tau_rms_sq;
    const double B = p.rho;
    const double det = A * C - B * B;
    if (!(A > 0.0) || !(C > 0.0) || det <= 1e-9 * A * C) {
        throw DegenerateEllipse("mainlobe quadratic form is not positive definite");
    }

    // rotate into the principal axes of [[A, B], [B, C]]
    const double theta = 0.5 * std::atan2(2.0 * B, A - C);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double lam1 = A * c * c + 2.0 * B * c * s + C * s * s;
    const double lam2 = A * s * s - 2.0 * B * c * s + C * c * c;
    const double r1 = std::sqrt(xi / lam1);
    const double r2 = std::sqrt(xi / lam2);

    std::vector<std::array<double, 2>> points(n_points);
    for (std::size_t i = 0; i + 1 < n_points; ++i) {
        const double psi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double x1 = r1 * std::cos(psi);
        const double x2 = r2 * std::sin(psi);
        points[i] = {c * x1 - s * x2, s * x1 + c * x2};
    }
    points[n_points - 1] = points[0];  // closed curve
    return points;
}

double beta_rms_sq_gradient(double b_l) { return 4.0 * kPi * kPi * b_l; }

double rho_gradient(std::size_t l, double duration) {
    if (l == 0) throw std::invalid_argument("rho_gradient: harmonic index starts at 1");
    return -2.0 * kPi * kPi * duration * cos_pi_l(l) / (kPi * static_cast<double>(l));
}

}  // namespace mtsfm
