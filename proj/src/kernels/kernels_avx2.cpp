#ifdef ATKF_HAVE_AVX2

#include "atkf/kernels_detail.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

// AVX2 lane, 4 doubles per vector. Multiplies and adds are kept as separate
// instructions (no FMA contraction) so that the kernels whose accumulation
// order matches the scalar lane reproduce it bit for bit.

namespace atkf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

void relu(const double* x, double* y, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_grad(const double* x, const double* dy, double* dx, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
        _mm256_storeu_pd(dx + i, _mm256_and_pd(mask, _mm256_loadu_pd(dy + i)));
    }
    for (; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

void add(const double* a, const double* b, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(c + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) c[i] = a[i] + b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double* x, double alpha, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
    for (; i < n; ++i) x[i] *= alpha;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double total = hsum(acc);
    for (; i < n; ++i) total += a[i] * b[i];
    return total;
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

void gemm_nn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    if (!accumulate) std::memset(c, 0, m * n * sizeof(double));
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = a[i * k + p];
            const double* brow = b + p * n;
            const __m256d va = _mm256_set1_pd(aip);
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(brow + j));
                _mm256_storeu_pd(crow + j, _mm256_add_pd(_mm256_loadu_pd(crow + j), prod));
            }
            for (; j < n; ++j) crow[j] += aip * brow[j];
        }
    }
}

void gemm_nt(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = b + j * k;
            __m256d acc = _mm256_setzero_pd();
            std::size_t p = 0;
            for (; p + 4 <= k; p += 4)
                acc = _mm256_add_pd(acc,
                                    _mm256_mul_pd(_mm256_loadu_pd(arow + p), _mm256_loadu_pd(brow + p)));
            double total = hsum(acc);
            for (; p < k; ++p) total += arow[p] * brow[p];
            if (accumulate)
                c[i * n + j] += total;
            else
                c[i * n + j] = total;
        }
    }
}

void gemm_tn(std::size_t m, std::size_t k, std::size_t n,
             const double* a, const double* b, double* c, bool accumulate) {
    if (!accumulate) std::memset(c, 0, m * n * sizeof(double));
    for (std::size_t p = 0; p < k; ++p) {
        const double* arow = a + p * m;
        const double* brow = b + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double api = arow[i];
            const __m256d va = _mm256_set1_pd(api);
            double* crow = c + i * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(brow + j));
                _mm256_storeu_pd(crow + j, _mm256_add_pd(_mm256_loadu_pd(crow + j), prod));
            }
            for (; j < n; ++j) crow[j] += api * brow[j];
        }
    }
}

void softmax_rows(const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* xr = x + i * cols;
        double* yr = y + i * cols;

        double mx = xr[0];
        std::size_t j = 1;
        if (cols >= 4) {
            __m256d vmax = _mm256_loadu_pd(xr);
            for (j = 4; j + 4 <= cols; j += 4) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(xr + j));
            double lanes[4];
            _mm256_storeu_pd(lanes, vmax);
            mx = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
        }
        for (; j < cols; ++j) mx = std::max(mx, xr[j]);

        for (std::size_t t = 0; t < cols; ++t) yr[t] = std::exp(xr[t] - mx);

        __m256d acc = _mm256_setzero_pd();
        std::size_t t = 0;
        for (; t + 4 <= cols; t += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(yr + t));
        double total = hsum(acc);
        for (; t < cols; ++t) total += yr[t];

        scale(yr, 1.0 / total, cols);
    }
}

void add_bias_rows(double* x, const double* b, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) add(x + i * cols, b, x + i * cols, cols);
}

void col_sums(const double* x, double* out, std::size_t rows, std::size_t cols, bool accumulate) {
    if (!accumulate) std::memset(out, 0, cols * sizeof(double));
    for (std::size_t i = 0; i < rows; ++i) add(out, x + i * cols, out, cols);
}

}  // namespace atkf::kernels::avx2

#endif  // ATKF_HAVE_AVX2
