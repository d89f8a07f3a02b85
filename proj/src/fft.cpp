#include "hylo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace hylo::fft {
namespace {

struct PlanKey {
    std::size_t n;
    int sign;
    bool in_place;
    bool operator<(const PlanKey& o) const {
        return std::tie(n, sign, in_place) < std::tie(o.n, o.sign, o.in_place);
    }
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(std::size_t n, int sign, bool in_place) {
        std::lock_guard<std::mutex> lock(mutex_);
        const PlanKey key{n, sign, in_place};
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        // Planning scratch; FFTW_ESTIMATE does not touch the data.
        std::vector<cd> a(n), b(n);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = in_place ? pa : reinterpret_cast<fftw_complex*>(b.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) {
            throw std::runtime_error("fft: FFTW failed to create a plan");
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(std::span<const cd> in, std::span<cd> out, int sign) {
    if (in.size() != out.size()) {
        throw std::invalid_argument("fft: input and output sizes differ");
    }
    const bool in_place = in.data() == out.data();
    fftw_plan plan = cache().get(in.size(), sign, in_place);
    // FFTW does not modify the input of an out-of-place complex transform.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const cd> in, std::span<cd> out) { execute(in, out, FFTW_FORWARD); }

void inverse(std::span<const cd> in, std::span<cd> out) {
    execute(in, out, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) {
        v *= scale;
    }
}

}  // namespace hylo::fft
