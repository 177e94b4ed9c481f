#include <cstdlib>
#include <string_view>

#include "dgpd/kernels.hpp"

namespace dgpd::kernels {

#ifndef DGPD_HAVE_AVX2_KERNELS
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() {
  const KernelTable* avx2 = cpu_has_avx2() ? avx2_kernels() : nullptr;
  if (const char* env = std::getenv("DGPD_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2" && avx2) return *avx2;
  }
  return avx2 ? *avx2 : scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace dgpd::kernels
