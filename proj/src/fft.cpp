#include "fput/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace fput {
namespace {

struct PlanPair {
    int n;
    fftw_complex* buf;
    fftw_plan fwd;
    fftw_plan bwd;

    explicit PlanPair(int size) : n(size) {
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

// FFTW planning is not thread safe; plans are built under a lock and each
// thread keeps its own buffers.
std::mutex plan_mutex;

PlanPair& plans_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto [ins, ok] = cache.emplace(n, std::make_unique<PlanPair>(n));
    return *ins->second;
}

CVec run(const CVec& in, bool forward) {
    int n = static_cast<int>(in.size());
    PlanPair& p = plans_for(n);
    auto* b = reinterpret_cast<cplx*>(p.buf);
    std::copy(in.begin(), in.end(), b);
    fftw_execute(forward ? p.fwd : p.bwd);
    CVec out(b, b + n);
    if (!forward) {
        double s = 1.0 / n;
        for (auto& z : out) z *= s;
    }
    return out;
}

}  // namespace

CVec fft(const CVec& in) { return run(in, true); }

CVec fft(const Vec& in) { return run(CVec(in.begin(), in.end()), true); }

CVec ifft(const CVec& in) { return run(in, false); }

Vec ifft_real(const CVec& in) {
    CVec z = run(in, false);
    Vec out(z.size());
    for (size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
    return out;
}

}  // namespace fput
