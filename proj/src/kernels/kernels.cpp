#include "atkf/kernels.hpp"

#include "atkf/kernels_detail.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace atkf::kernels {

namespace {

bool avx2_compiled() {
#ifdef ATKF_HAVE_AVX2
    return true;
#else
    return false;
#endif
}

bool avx2_usable() {
#if defined(ATKF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend detect_backend() {
    if (const char* env = std::getenv("ATKF_KERNEL_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_usable()) throw std::runtime_error("ATKF_KERNEL_BACKEND=avx2 requested but AVX2 is unavailable");
            return Backend::avx2;
        }
        throw std::runtime_error("unknown ATKF_KERNEL_BACKEND value");
    }
    return avx2_usable() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
    static Backend b = detect_backend();
    return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_usable())
        throw std::runtime_error(avx2_compiled() ? "AVX2 not supported by this CPU"
                                                 : "AVX2 lane not compiled in");
    backend_slot() = b;
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

#ifdef ATKF_HAVE_AVX2
#define ATKF_DISPATCH(fn, ...) \
    return backend_slot() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define ATKF_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void relu(const double* x, double* y, std::size_t n) { ATKF_DISPATCH(relu, x, y, n); }

void relu_grad(const double* x, const double* dy, double* dx, std::size_t n) {
    ATKF_DISPATCH(relu_grad, x, dy, dx, n);
}

void add(const double* a, const double* b, double* c, std::size_t n) { ATKF_DISPATCH(add, a, b, c, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) { ATKF_DISPATCH(axpy, alpha, x, y, n); }

void scale(double* x, double alpha, std::size_t n) { ATKF_DISPATCH(scale, x, alpha, n); }

double dot(const double* a, const double* b, std::size_t n) { ATKF_DISPATCH(dot, a, b, n); }

double sum(const double* x, std::size_t n) { ATKF_DISPATCH(sum, x, n); }

void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    ATKF_DISPATCH(gemm_nn, m, k, n, a, b, c, accumulate);
}

void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    ATKF_DISPATCH(gemm_nt, m, k, n, a, b, c, accumulate);
}

void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    ATKF_DISPATCH(gemm_tn, m, k, n, a, b, c, accumulate);
}

void softmax_rows(const double* x, double* y, std::size_t rows, std::size_t cols) {
    ATKF_DISPATCH(softmax_rows, x, y, rows, cols);
}

void add_bias_rows(double* x, const double* b, std::size_t rows, std::size_t cols) {
    ATKF_DISPATCH(add_bias_rows, x, b, rows, cols);
}

void col_sums(const double* x, double* out, std::size_t rows, std::size_t cols, bool accumulate) {
    ATKF_DISPATCH(col_sums, x, out, rows, cols, accumulate);
}

#undef ATKF_DISPATCH

}  // namespace atkf::kernels
