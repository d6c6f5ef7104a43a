#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wpb/kernels.hpp"

namespace wpb::kernels {

#if defined(WPB_HAVE_AVX2)
const KernelTable* avx2_table_unchecked();
#endif

const KernelTable* avx2_table() {
#if defined(WPB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* find(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  return nullptr;
}

const KernelTable* initial() {
  if (const char* env = std::getenv("WPB_KERNELS"); env && *env) {
    if (const KernelTable* t = find(env)) return t;
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(std::string_view name) {
  const KernelTable* t = find(name);
  if (!t) throw std::invalid_argument("kernel variant '" + std::string(name) + "' unavailable");
  current().store(t, std::memory_order_release);
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> out{"scalar"};
  if (avx2_table()) out.push_back("avx2");
  return out;
}

}  // namespace wpb::kernels
