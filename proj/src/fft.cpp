#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace lrdlab::detail {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanGuard {
    fftw_plan plan = nullptr;
    ~PlanGuard() {
        if (plan != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
    }
};

}  // namespace

std::vector<double> dct1(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("DCT-I needs at least two samples");
    std::vector<double> in(x);
    std::vector<double> out(x.size());
    PlanGuard g;
    {
        std::lock_guard lock(planner_mutex());
        g.plan = fftw_plan_r2r_1d(static_cast<int>(in.size()), in.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
    }
    fftw_execute(g.plan);
    return out;
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> in(x);
    std::vector<std::complex<double>> out(x.size());
    PlanGuard g;
    {
        std::lock_guard lock(planner_mutex());
        g.plan = fftw_plan_dft_1d(static_cast<int>(in.size()), reinterpret_cast<fftw_complex*>(in.data()),
                                  reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(g.plan);
    return out;
}

std::vector<std::complex<double>> dft_real(const std::vector<double>& x) {
    std::vector<std::complex<double>> c(x.begin(), x.end());
    return dft(c);
}

}  // namespace lrdlab::detail
