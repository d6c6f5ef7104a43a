#include <cmath>

#include "wpb/kernels.hpp"

namespace wpb::kernels {

namespace {

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}
void add_s(const double* a, double b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b;
}
void sub_s(const double* a, double b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b;
}
void rsub_s(double a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a - b[i];
}
void mul_s(const double* a, double b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b;
}
void div_s(const double* a, double b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b;
}
void rdiv_s(double a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a / b[i];
}
void sqrt_k(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(a[i]);
}
void abs_k(const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(a[i]);
}
void affine(const double* x, double scale, double shift, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = shift + scale * x[i];
}
double dot(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) lane[i % 4] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

constexpr KernelTable table{
    "scalar", add, sub, mul, div, add_s, sub_s, rsub_s, mul_s, div_s, rdiv_s,
    sqrt_k,   abs_k, affine, dot,
};

}  // namespace

const KernelTable& scalar_table() { return table; }

}  // namespace wpb::kernels
