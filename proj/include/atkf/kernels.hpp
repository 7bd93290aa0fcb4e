#pragma once

#include <cstddef>

// Dense double-precision kernels behind the attention network. Every entry
// point has a scalar reference implementation and, on x86-64 with AVX2, a
// vectorized variant selected once at startup. The gemm_nn/gemm_tn, relu,
// add, axpy, scale, add_bias_rows and col_sums lanes accumulate in the same
// order as the scalar reference and therefore match it bit for bit;
// dot, sum, softmax_rows and gemm_nt use lane-parallel reductions and agree
// only up to rounding. Equivalence is enforced by tests/test_kernels.cpp.

namespace atkf::kernels {

enum class Backend { scalar, avx2 };

/// Backend chosen at first use: AVX2 when the CPU supports it (and the lane
/// was compiled in), overridable with ATKF_KERNEL_BACKEND=scalar|avx2.
Backend active_backend();

/// Forces a backend; throws if it is unavailable on this machine.
void set_backend(Backend b);

const char* backend_name(Backend b);

// y[i] = max(x[i], 0)
void relu(const double* x, double* y, std::size_t n);
// dx[i] = x[i] > 0 ? dy[i] : 0   (x is the pre-activation)
void relu_grad(const double* x, const double* dy, double* dx, std::size_t n);
// c[i] = a[i] + b[i]
void add(const double* a, const double* b, double* c, std::size_t n);
// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x[i] *= alpha
void scale(double* x, double alpha, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);

// Row-major GEMM variants covering the fixed graph's forward and adjoint
// products. With accumulate=false the output is overwritten.
// C(m x n) = A(m x k) * B(k x n)
void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
// C(m x n) = A(m x k) * B(n x k)^T
void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);
// C(m x n) = A(k x m)^T * B(k x n)
void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate);

/// Row-wise softmax with per-row max subtraction. X and Y may alias.
void softmax_rows(const double* x, double* y, std::size_t rows, std::size_t cols);

/// X[i, :] += b for every row i.
void add_bias_rows(double* x, const double* b, std::size_t rows, std::size_t cols);

/// out[j] (+)= sum_i X[i, j]
void col_sums(const double* x, double* out, std::size_t rows, std::size_t cols, bool accumulate);

}  // namespace atkf::kernels
