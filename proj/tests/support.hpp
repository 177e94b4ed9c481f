#pragma once

// Shared helpers for the test binaries: independent group constructions,
// brute-force oracles and seeded generators.

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dgpd/convolution.hpp"
#include "dgpd/double_groupoid.hpp"
#include "dgpd/groupoid.hpp"
#include "dgpd/samples.hpp"
#include "dgpd/structure_io.hpp"

namespace testsupport {

using namespace dgpd;
using cd = std::complex<double>;

inline double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline cd random_cd(std::mt19937_64& rng) { return {2 * unit_real(rng) - 1, 2 * unit_real(rng) - 1}; }

// S3 as permutations of {0,1,2}, composed as functions (p∘q)(x) = p(q(x)).
inline Groupoid s3_perm() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (auto& q : perms) names.push_back("p" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  return make_group(names, [perms](std::size_t a, std::size_t b) {
    std::array<int, 3> r{};
    for (int x = 0; x < 3; ++x) r[x] = perms[a][perms[b][x]];
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), r) - perms.begin());
  });
}

// Q8 from quaternion arithmetic on (w,x,y,z) with entries in {0,±1}.
inline Groupoid q8_quat() {
  using Q = std::array<int, 4>;
  const std::vector<Q> els{{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
                           {0, 0, 1, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}};
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return make_group(names, [els](std::size_t a, std::size_t b) {
    const Q& p = els[a];
    const Q& q = els[b];
    Q r{p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
    return static_cast<std::size_t>(std::find(els.begin(), els.end(), r) - els.begin());
  });
}

using samples::dihedral;
using samples::product_cyclic;
using samples::random_valid_double;

inline std::vector<std::string> center(const Groupoid& g) {
  std::vector<std::string> z;
  for (std::uint32_t a = 0; a < g.arrow_count(); ++a) {
    bool central = true;
    for (std::uint32_t b = 0; b < g.arrow_count() && central; ++b)
      central = g.compose(Arrow{a}, Arrow{b}) == g.compose(Arrow{b}, Arrow{a});
    if (central) z.push_back(g.name(Arrow{a}));
  }
  return z;
}

// Literal convolution formula: (u*v)(g) = Σ_{h∈t⁻¹(t(g))} u(h) v(h⁻¹∘g) w(h).
template <class S>
AlgebraElement<S> convolve_by_definition(const Groupoid& g, const HaarSystem& w, const AlgebraElement<S>& u,
                                         const AlgebraElement<S>& v) {
  AlgebraElement<S> out(g.shared_arrow_names());
  for (std::uint32_t x = 0; x < g.arrow_count(); ++x) {
    S sum{};
    for (std::uint32_t h = 0; h < g.arrow_count(); ++h) {
      if (g.target(Arrow{h}) != g.target(Arrow{x})) continue;
      Arrow rest = g.compose(g.inverse(Arrow{h}), Arrow{x});
      sum += u[Arrow{h}] * v[rest] * ScalarTraits<S>::from_rational(w.weights[h]);
    }
    out.add(Arrow{x}, sum);
  }
  out.prune();
  return out;
}

}  // namespace testsupport
