#include "qoc1d/core/fft.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace qoc1d::fft {

namespace {

// fftw plan creation/destruction is not thread-safe; execution on distinct
// plans is. Plans live in a per-thread cache with their own buffers.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Plan {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t size = 0;

    Plan(int n0, int n1, int sign) {
        size = static_cast<std::size_t>(n0) * (n1 > 0 ? n1 : 1);
        buf = fftw_alloc_complex(size);
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (n1 > 0)
            plan = fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE);
        else
            plan = fftw_plan_dft_1d(n0, buf, buf, sign, FFTW_ESTIMATE);
    }

    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    ~Plan() {
        if (plan) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
        if (buf)
            fftw_free(buf);
    }
};

Plan& cached_plan(int n0, int n1, int sign) {
    thread_local std::map<std::tuple<int, int, int>, std::unique_ptr<Plan>> cache;
    auto& slot = cache[{n0, n1, sign}];
    if (!slot)
        slot = std::make_unique<Plan>(n0, n1, sign);
    return *slot;
}

void execute(CVec& v, int n0, int n1, int sign, bool normalize) {
    Plan& p = cached_plan(n0, n1, sign);
    std::memcpy(p.buf, v.data(), p.size * sizeof(fftw_complex));
    fftw_execute(p.plan);
    std::memcpy(v.data(), p.buf, p.size * sizeof(fftw_complex));
    if (normalize)
        v /= static_cast<double>(p.size);
}

} // namespace

void forward(CVec& v) { execute(v, static_cast<int>(v.size()), 0, FFTW_FORWARD, false); }

void inverse(CVec& v) { execute(v, static_cast<int>(v.size()), 0, FFTW_BACKWARD, true); }

void forward_2d(CVec& v, int n0, int n1) { execute(v, n0, n1, FFTW_FORWARD, false); }

void inverse_2d(CVec& v, int n0, int n1) { execute(v, n0, n1, FFTW_BACKWARD, true); }

} // namespace qoc1d::fft
