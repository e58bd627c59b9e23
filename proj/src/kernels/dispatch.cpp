#include "aoa/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace aoa::kernels {

#if defined(AOA_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(AOA_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& initial_table() {
  const char* force = std::getenv("AOA_FORCE_SCALAR");
  if (force != nullptr && force[0] != '\0' && force[0] != '0') return scalar_kernels();
  if (const KernelTable* simd = avx2_kernels()) return *simd;
  return scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{&initial_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(AOA_HAVE_AVX2_KERNELS)
  static const bool supported = cpu_has_avx2();
  if (supported) return &avx2_kernel_table();
#endif
  return nullptr;
}

Isa best_available_isa() { return avx2_kernels() != nullptr ? Isa::avx2 : Isa::scalar; }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select_isa(Isa isa) {
  const KernelTable* table = nullptr;
  switch (isa) {
    case Isa::scalar:
      table = &scalar_kernels();
      break;
    case Isa::avx2:
      table = avx2_kernels();
      break;
  }
  if (table == nullptr) return false;
  current().store(table, std::memory_order_release);
  return true;
}

}  // namespace aoa::kernels
