#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace bjq {

using cd = std::complex<double>;

namespace detail {

// FFTW planning is not thread-safe; plans are created once per (size, sign)
// under a lock and then executed through the new-array interface, which is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cd> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace detail

enum class Direction { forward, inverse };

/// Plain (unnormalized) DFT: out_k = sum_n in_n exp(-+ 2 pi i n k / N).
/// `in` and `out` must not alias.
inline void dft(std::span<const cd> in, std::span<cd> out, Direction dir) {
    const int n = static_cast<int>(in.size());
    fftw_plan p = detail::PlanCache::instance().get(n, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

/// Centered DFT for even N: out_k = sum_n in_n exp(-+ 2 pi i (n - N/2)(k - N/2) / N).
/// `scratch` must have the same length as `in`.
inline void centered_dft(std::span<const cd> in, std::span<cd> out, std::span<cd> scratch, Direction dir) {
    const std::size_t n = in.size();
    const std::size_t h = n / 2;
    for (std::size_t i = 0; i < n; ++i) scratch[i] = in[(i + h) % n];
    dft(scratch, out, dir);
    for (std::size_t i = 0; i < h; ++i) std::swap(out[i], out[i + h]);
}

}  // namespace bjq
