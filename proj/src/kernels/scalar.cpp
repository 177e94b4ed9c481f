#include <algorithm>
#include <cmath>

#include "dgpd/kernels.hpp"

namespace dgpd::kernels {
namespace {

void cmul(const cd* a, const cd* b, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void caxpy(cd alpha, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cd cdot(const cd* a, const cd* b, std::size_t n) {
  cd s{};
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const cd* a, const cd* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", cmul, caxpy, cdot, max_abs_diff};
  return table;
}

}  // namespace dgpd::kernels
