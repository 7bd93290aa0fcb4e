#pragma once

#include <cstddef>

// Per-lane entry points; include only from the kernel translation units and
// their tests. The public API in kernels.hpp dispatches to one of these.

namespace atkf::kernels::scalar {
void relu(const double* x, double* y, std::size_t n);
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
void add(const double* a, const double* b, double* c, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void softmax_rows(const double* x, double* y, std::size_t rows, std::size_t cols);
void add_bias_rows(double* x, const double* b, std::size_t rows, std::size_t cols);
void col_sums(const double* x, double* out, std::size_t rows, std::size_t cols, bool accumulate);
}  // namespace atkf::kernels::scalar

#ifdef ATKF_HAVE_AVX2
namespace atkf::kernels::avx2 {
void relu(const double* x, double* y, std::size_t n);
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
void add(const double* a, const double* b, double* c, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
void softmax_rows(const double* x, double* y, std::size_t rows, std::size_t cols);
void add_bias_rows(double* x, const double* b, std::size_t rows, std::size_t cols);
void col_sums(const double* x, double* out, std::size_t rows, std::size_t cols, bool accumulate);
}  // namespace atkf::kernels::avx2
#endif
