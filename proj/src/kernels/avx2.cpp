// AVX2 variants. Compiled with -mavx2 only (no -mfma) so every lane performs
// the same single-rounding operation as the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "wpb/kernels.hpp"

namespace wpb::kernels {

namespace {

template <class Op, class Tail>
inline void binary_loop(const double* a, const double* b, double* out, std::size_t n, Op op,
                        Tail tail) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, op(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = tail(a[i], b[i]);
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  binary_loop(a, b, out, n, [](__m256d x, __m256d y) { return _mm256_add_pd(x, y); },
              [](double x, double y) { return x + y; });
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  binary_loop(a, b, out, n, [](__m256d x, __m256d y) { return _mm256_sub_pd(x, y); },
              [](double x, double y) { return x - y; });
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  binary_loop(a, b, out, n, [](__m256d x, __m256d y) { return _mm256_mul_pd(x, y); },
              [](double x, double y) { return x * y; });
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  binary_loop(a, b, out, n, [](__m256d x, __m256d y) { return _mm256_div_pd(x, y); },
              [](double x, double y) { return x / y; });
}

void add_s(const double* a, double b, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), vb));
  for (; i < n; ++i) out[i] = a[i] + b;
}
void sub_s(const double* a, double b, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), vb));
  for (; i < n; ++i) out[i] = a[i] - b;
}
void rsub_s(double a, const double* b, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sub_pd(va, _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a - b[i];
}
void mul_s(const double* a, double b, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vb));
  for (; i < n; ++i) out[i] = a[i] * b;
}
void div_s(const double* a, double b, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i), vb));
  for (; i < n; ++i) out[i] = a[i] / b;
}
void rdiv_s(double a, const double* b, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_div_pd(va, _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a / b[i];
}

void sqrt_k(const double* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_loadu_pd(a + i)));
  for (; i < n; ++i) out[i] = std::sqrt(a[i]);
}
void abs_k(const double* a, double* out, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_and_pd(_mm256_loadu_pd(a + i), mask));
  for (; i < n; ++i) out[i] = std::fabs(a[i]);
}

void affine(const double* x, double scale, double shift, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vc = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(vc, _mm256_mul_pd(vs, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) out[i] = shift + scale * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t k = 0; i < n; ++i, ++k) lane[k] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

constexpr KernelTable table{
    "avx2", add, sub, mul, div, add_s, sub_s, rsub_s, mul_s, div_s, rdiv_s,
    sqrt_k, abs_k, affine, dot,
};

}  // namespace

const KernelTable* avx2_table_unchecked() { return &table; }

}  // namespace wpb::kernels
