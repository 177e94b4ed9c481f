#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dgpd/kernels.hpp"
#include "support.hpp"

using namespace dgpd::kernels;
using testsupport::random_cd;

namespace {

std::vector<cd> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::vector<cd> v(n);
  for (auto& z : v) z = scale * random_cd(rng);
  return v;
}

// Lengths around the 2-element vector width, including the empty case.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 65, 1000};

void check_against_reference(const KernelTable& k) {
  std::mt19937_64 rng(99);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    auto a = random_vec(rng, n), b = random_vec(rng, n), y = random_vec(rng, n);
    const cd alpha = random_cd(rng);

    std::vector<cd> out(n);
    k.cmul(a.data(), b.data(), out.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out[i] - a[i] * b[i]) <= 1e-15);

    auto y2 = y;
    k.caxpy(alpha, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y2[i] - (y[i] + alpha * a[i])) <= 1e-15);

    cd dot{};
    for (std::size_t i = 0; i < n; ++i) dot += a[i] * b[i];
    CHECK(std::abs(k.cdot(a.data(), b.data(), n) - dot) <= 1e-13 * (1.0 + static_cast<double>(n)));

    double mad = 0.0;
    for (std::size_t i = 0; i < n; ++i) mad = std::max(mad, std::abs(a[i] - b[i]));
    CHECK(std::abs(k.max_abs_diff(a.data(), b.data(), n) - mad) <= 1e-15);
  }
}

}  // namespace

TEST_CASE("scalar kernels match the definitions") { check_against_reference(scalar_kernels()); }

TEST_CASE("AVX2 kernels match the scalar reference") {
  const KernelTable* avx2 = avx2_kernels();
  if (!avx2 || !cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable on this machine; skipped");
    return;
  }
  check_against_reference(*avx2);

  std::mt19937_64 rng(7);
  const auto& s = scalar_kernels();
  for (std::size_t n : kLengths) {
    for (double scale : {1e-300, 1.0, 1e150}) {
      auto a = random_vec(rng, n, scale), b = random_vec(rng, n);
      std::vector<cd> o1(n), o2(n);
      s.cmul(a.data(), b.data(), o1.data(), n);
      avx2->cmul(a.data(), b.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 4e-16 * std::abs(o1[i]) + 1e-320);
      CHECK(avx2->max_abs_diff(a.data(), a.data(), n) == 0.0);
    }
  }
  // unaligned starts
  auto a = random_vec(rng, 101), b = random_vec(rng, 101);
  for (std::size_t off = 0; off < 3; ++off)
    CHECK(std::abs(s.cdot(a.data() + off, b.data() + off, 97) - avx2->cdot(a.data() + off, b.data() + off, 97)) < 1e-13);
}

TEST_CASE("dispatch picks a table") {
  const auto& k = active();
  CHECK(k.name != nullptr);
  if (cpu_has_avx2() && avx2_kernels() && !std::getenv("DGPD_KERNELS")) CHECK(&k == avx2_kernels());
}
