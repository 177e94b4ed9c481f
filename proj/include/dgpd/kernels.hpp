#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace dgpd::kernels {

using cd = std::complex<double>;

/// Complex double-precision array kernels. Every variant must agree with the
/// scalar reference up to floating-point reassociation.
struct KernelTable {
  const char* name;
  /// out[i] = a[i]·b[i]
  void (*cmul)(const cd* a, const cd* b, cd* out, std::size_t n);
  /// y[i] += alpha·x[i]
  void (*caxpy)(cd alpha, const cd* x, cd* y, std::size_t n);
  /// Σ a[i]·b[i] (no conjugation)
  cd (*cdot)(const cd* a, const cd* b, std::size_t n);
  /// max |a[i] − b[i]|, 0 for n = 0
  double (*max_abs_diff)(const cd* a, const cd* b, std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant is not compiled in.
const KernelTable* avx2_kernels();

/// Selected once: AVX2+FMA when the CPU reports both, scalar otherwise.
/// DGPD_KERNELS=scalar|avx2 in the environment overrides the choice.
const KernelTable& active();

/// Whether the running CPU can execute the AVX2 variant.
bool cpu_has_avx2();

}  // namespace dgpd::kernels
