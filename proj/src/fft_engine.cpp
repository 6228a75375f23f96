#include "fft_engine.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mtsfm::detail {

namespace {

// Cached FFTW plans per transform size. FFTW_ESTIMATE keeps planning
// deterministic; FFTW_UNALIGNED lets the plans execute on std::vector
// storage via the new-array interface.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(std::size_t m, std::complex<double>* in, std::complex<double>* out,
                 bool forward) {
        fftw_plan plan = nullptr;
        {
            std::scoped_lock lock(mutex_);
            auto& pair = plans_[m];
            fftw_plan& slot = forward ? pair.first : pair.second;
            if (!slot) {
                std::vector<std::complex<double>> scratch_in(m), scratch_out(m);
                slot = fftw_plan_dft_1d(static_cast<int>(m),
                                        reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                        reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                        forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
            }
            plan = slot;
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::size_t, std::pair<fftw_plan, fftw_plan>> plans_;
};

std::size_t next_pow2(std::size_t v) {
    std::size_t m = 1;
    while (m < v) m <<= 1;
    return m;
}

}  // namespace

std::vector<double> xcorr_magnitudes(const std::vector<std::complex<double>>& g,
                                     const std::vector<std::complex<double>>& s, double dt,
                                     const std::vector<long long>& lags) {
    const std::size_t n = s.size();
    if (g.size() != n || n == 0) {
        throw std::invalid_argument("xcorr_magnitudes: inputs must be non-empty and equal length");
    }
    const std::size_t m = next_pow2(2 * n);
    auto& cache = PlanCache::instance();

    thread_local std::vector<std::complex<double>> buf_in, fg, fs, corr;
    buf_in.assign(m, {0.0, 0.0});
    fg.resize(m);
    fs.resize(m);
    corr.resize(m);

    std::copy(g.begin(), g.end(), buf_in.begin());
    cache.execute(m, buf_in.data(), fg.data(), true);

    std::fill(buf_in.begin(), buf_in.end(), std::complex<double>{0.0, 0.0});
    std::copy(s.begin(), s.end(), buf_in.begin());
    cache.execute(m, buf_in.data(), fs.data(), true);

    for (std::size_t i = 0; i < m; ++i) buf_in[i] = fg[i] * std::conj(fs[i]);
    cache.execute(m, buf_in.data(), corr.data(), false);

    // corr[j]/m = sum_n g_n conj(s_{n-j}); the lag-k value lives at j = -k mod m
    const double scale = dt / static_cast<double>(m);
    std::vector<double> out(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const long long k = lags[i];
        if (k < -static_cast<long long>(n) || k > static_cast<long long>(n)) {
            throw std::invalid_argument("xcorr_magnitudes: lag outside [-N, N]");
        }
        const std::size_t idx =
            static_cast<std::size_t>(((-k) % static_cast<long long>(m) + static_cast<long long>(m)) %
                                     static_cast<long long>(m));
        out[i] = std::abs(corr[idx]) * scale;
    }
    return out;
}

}  // namespace mtsfm::detail
