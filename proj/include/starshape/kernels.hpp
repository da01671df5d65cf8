#pragma once
#include <cstddef>
#include <span>

namespace starshape::kernels {

// Dense matrix applied along one axis of a row-major array of extent
// outer x n x inner:
//   out[o, k, b] = sum_j m[k*n + j] * in[o, j, b]
// The OpenMP variant uses the same loop nest and summation order as the
// serial reference, so the two produce bit-identical output.
void apply_axis_matrix_serial(const double* m, int n, const double* in, double* out,
                              std::size_t outer, std::size_t inner);
void apply_axis_matrix_omp(const double* m, int n, const double* in, double* out,
                           std::size_t outer, std::size_t inner);
void apply_axis_matrix(const double* m, int n, const double* in, double* out,
                       std::size_t outer, std::size_t inner);

// Weighted reductions with a fixed 256-block pairwise layout. The block
// structure does not depend on the thread count, so parallel and serial
// results are bit-identical and runs are reproducible.
double dot2_serial(std::span<const double> a, std::span<const double> b);
double dot2_omp(std::span<const double> a, std::span<const double> b);
double dot2(std::span<const double> a, std::span<const double> b);

double dot3_serial(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c);
double dot3_omp(std::span<const double> a, std::span<const double> b,
                std::span<const double> c);
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c);

}  // namespace starshape::kernels
