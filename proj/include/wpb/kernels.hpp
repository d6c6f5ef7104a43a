#pragma once

// Elementwise array kernels behind the batch evaluator and the quadrature
// rules. Every variant must produce results bit-identical to the scalar
// reference: elementwise ops are single IEEE operations, and `dot` sums in
// a fixed four-lane order (lane i % 4, then (l0 + l1) + (l2 + l3)).

#include <cstddef>
#include <string_view>
#include <vector>

namespace wpb::kernels {

struct KernelTable {
  std::string_view name;

  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  void (*div)(const double* a, const double* b, double* out, std::size_t n);

  // Array-scalar forms; the r* variants put the scalar on the left.
  void (*add_s)(const double* a, double b, double* out, std::size_t n);
  void (*sub_s)(const double* a, double b, double* out, std::size_t n);
  void (*rsub_s)(double a, const double* b, double* out, std::size_t n);
  void (*mul_s)(const double* a, double b, double* out, std::size_t n);
  void (*div_s)(const double* a, double b, double* out, std::size_t n);
  void (*rdiv_s)(double a, const double* b, double* out, std::size_t n);

  void (*sqrt)(const double* a, double* out, std::size_t n);
  void (*abs)(const double* a, double* out, std::size_t n);

  /// out[i] = shift + scale * x[i]
  void (*affine)(const double* x, double scale, double shift, double* out, std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();

/// The table in use. Chosen on first call: $WPB_KERNELS ("scalar" or "avx2")
/// if set, otherwise the widest supported variant.
const KernelTable& active();

/// Switches the active table. Throws std::invalid_argument if unavailable.
void select(std::string_view name);

std::vector<std::string_view> available();

}  // namespace wpb::kernels
