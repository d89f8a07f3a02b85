#pragma once

// Pointwise and reduction kernels on sampled data.
//
// Every kernel exists twice: `serial` is the plain reference loop kept for
// testing and benchmarking, `parallel` is the OpenMP version. The unqualified
// names in hylo::kernels dispatch to `parallel` when the library was built
// with OpenMP and fall back to `serial` otherwise.
//
// Parallel reductions accumulate fixed contiguous blocks per thread and sum
// the partials in thread order, so results are reproducible for a given
// thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#ifdef HYLO_HAVE_OPENMP
#include <omp.h>
#endif

namespace hylo::kernels {

using cd = std::complex<double>;

/// Below this length the OpenMP region costs more than it saves.
inline constexpr std::size_t kParallelThreshold = 8192;

namespace serial {

inline void multiply(std::span<cd> data, std::span<const cd> factor) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] *= factor[i];
    }
}

inline void multiply(std::span<cd> data, std::span<const double> factor) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] *= factor[i];
    }
}

/// y += alpha * x
inline void axpy(std::span<cd> y, cd alpha, std::span<const cd> x) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

/// sum_i a_i * conj(b_i)
inline cd dot(std::span<const cd> a, std::span<const cd> b) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * std::conj(b[i]);
    }
    return acc;
}

inline double norm2(std::span<const cd> a) {
    double acc = 0.0;
    for (const auto& v : a) {
        acc += std::norm(v);
    }
    return acc;
}

/// out_i = op(in_i)
template <class Op>
void map(std::span<const cd> in, std::span<cd> out, Op op) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = op(in[i]);
    }
}

/// sum_i op(in_i)
template <class Op>
double map_sum(std::span<const cd> in, Op op) {
    double acc = 0.0;
    for (const auto& v : in) {
        acc += op(v);
    }
    return acc;
}

}  // namespace serial

namespace parallel {

#ifdef HYLO_HAVE_OPENMP

namespace detail {

// Deterministic blocked reduction: thread t owns [t*n/T, (t+1)*n/T).
template <class T, class Body>
T blocked_sum(std::size_t n, Body body) {
    if (n < kParallelThreshold) {
        return body(0, n);
    }
    const int threads = omp_get_max_threads();
    std::vector<T> partial(static_cast<std::size_t>(threads), T{});
    int used = 1;
#pragma omp parallel num_threads(threads)
    {
        const int t = omp_get_thread_num();
        const int nt = omp_get_num_threads();
#pragma omp single
        used = nt;
        const std::size_t lo = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(nt);
        const std::size_t hi = n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(nt);
        partial[static_cast<std::size_t>(t)] = body(lo, hi);
    }
    T acc{};
    for (int t = 0; t < used; ++t) {
        acc += partial[static_cast<std::size_t>(t)];
    }
    return acc;
}

}  // namespace detail

inline void multiply(std::span<cd> data, std::span<const cd> factor) {
    const auto n = static_cast<long>(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
    for (long i = 0; i < n; ++i) {
        data[static_cast<std::size_t>(i)] *= factor[static_cast<std::size_t>(i)];
    }
}

inline void multiply(std::span<cd> data, std::span<const double> factor) {
    const auto n = static_cast<long>(data.size());
#pragma omp parallel for schedule(static) if (data.size() >= kParallelThreshold)
    for (long i = 0; i < n; ++i) {
        data[static_cast<std::size_t>(i)] *= factor[static_cast<std::size_t>(i)];
    }
}

inline void axpy(std::span<cd> y, cd alpha, std::span<const cd> x) {
    const auto n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (y.size() >= kParallelThreshold)
    for (long i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
    }
}

inline cd dot(std::span<const cd> a, std::span<const cd> b) {
    return detail::blocked_sum<cd>(a.size(), [&](std::size_t lo, std::size_t hi) {
        return serial::dot(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
    });
}

inline double norm2(std::span<const cd> a) {
    return detail::blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
        return serial::norm2(a.subspan(lo, hi - lo));
    });
}

template <class Op>
void map(std::span<const cd> in, std::span<cd> out, Op op) {
    const auto n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
    for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = op(in[static_cast<std::size_t>(i)]);
    }
}

template <class Op>
double map_sum(std::span<const cd> in, Op op) {
    return detail::blocked_sum<double>(in.size(), [&](std::size_t lo, std::size_t hi) {
        return serial::map_sum(in.subspan(lo, hi - lo), op);
    });
}

#else

using serial::axpy;
using serial::dot;
using serial::map;
using serial::map_sum;
using serial::multiply;
using serial::norm2;

#endif

}  // namespace parallel

using parallel::axpy;
using parallel::dot;
using parallel::map;
using parallel::map_sum;
using parallel::multiply;
using parallel::norm2;

}  // namespace hylo::kernels
