#include "starshape/kernels.hpp"

#include <array>

#include "starshape/parallel.hpp"

namespace starshape::kernels {

namespace {
constexpr std::size_t kBlocks = 256;

inline void apply_one_row(const double* m, int n, const double* in, double* out,
                          std::size_t inner, int k) {
    double* op = out + static_cast<std::size_t>(k) * inner;
    for (std::size_t b = 0; b < inner; ++b) op[b] = 0.0;
    const double* mrow = m + static_cast<std::size_t>(k) * n;
    for (int j = 0; j < n; ++j) {
        const double c = mrow[j];
        const double* ip = in + static_cast<std::size_t>(j) * inner;
        for (std::size_t b = 0; b < inner; ++b) op[b] += c * ip[b];
    }
}
}  // namespace

void apply_axis_matrix_serial(const double* m, int n, const double* in, double* out,
                              std::size_t outer, std::size_t inner) {
    const std::size_t stride = static_cast<std::size_t>(n) * inner;
    for (std::size_t o = 0; o < outer; ++o)
        for (int k = 0; k < n; ++k)
            apply_one_row(m, n, in + o * stride, out + o * stride, inner, k);
}

void apply_axis_matrix_omp(const double* m, int n, const double* in, double* out,
                           std::size_t outer, std::size_t inner) {
    const std::size_t stride = static_cast<std::size_t>(n) * inner;
    const long total = static_cast<long>(outer) * n;
#pragma omp parallel for schedule(static)
    for (long t = 0; t < total; ++t) {
        const std::size_t o = static_cast<std::size_t>(t) / n;
        const int k = static_cast<int>(static_cast<std::size_t>(t) % n);
        apply_one_row(m, n, in + o * stride, out + o * stride, inner, k);
    }
}

void apply_axis_matrix(const double* m, int n, const double* in, double* out,
                       std::size_t outer, std::size_t inner) {
    if (parallel_enabled())
        apply_axis_matrix_omp(m, n, in, out, outer, inner);
    else
        apply_axis_matrix_serial(m, n, in, out, outer, inner);
}

namespace {
template <class Term>
double blocked_sum(std::size_t len, Term&& term, bool parallel) {
    std::array<double, kBlocks> partial{};
    const auto run_block = [&](std::size_t blk) {
        const std::size_t lo = blk * len / kBlocks;
        const std::size_t hi = (blk + 1) * len / kBlocks;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[blk] = s;
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long blk = 0; blk < static_cast<long>(kBlocks); ++blk)
            run_block(static_cast<std::size_t>(blk));
    } else {
        for (std::size_t blk = 0; blk < kBlocks; ++blk) run_block(blk);
    }
    double total = 0.0;
    for (std::size_t blk = 0; blk < kBlocks; ++blk) total += partial[blk];
    return total;
}
}  // namespace

double dot2_serial(std::span<const double> a, std::span<const double> b) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; }, false);
}

double dot2_omp(std::span<const double> a, std::span<const double> b) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; }, true);
}

double dot2(std::span<const double> a, std::span<const double> b) {
    return parallel_enabled() ? dot2_omp(a, b) : dot2_serial(a, b);
}

double dot3_serial(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i] * c[i]; }, false);
}

double dot3_omp(std::span<const double> a, std::span<const double> b,
                std::span<const double> c) {
    return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i] * c[i]; }, true);
}

double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c) {
    return parallel_enabled() ? dot3_omp(a, b, c) : dot3_serial(a, b, c);
}

}  // namespace starshape::kernels
