#include "dgpd/nctorus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dgpd/error.hpp"
#include "dgpd/kernels.hpp"

namespace dgpd::nct {

TorusFunction TorusFunction::basis(std::int64_t j, std::int64_t k, cd c) {
  TorusFunction u;
  u.add(j, k, c);
  u.prune();
  return u;
}

cd TorusFunction::at(std::int64_t j, std::int64_t k) const {
  auto it = coeffs_.find({j, k});
  return it == coeffs_.end() ? cd{} : it->second;
}

void TorusFunction::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kPrune; });
}

cd TorusFunction::evaluate(std::int64_t n, double theta) const {
  cd s{};
  for (auto it = coeffs_.lower_bound({n, INT64_MIN}); it != coeffs_.end() && it->first.first == n; ++it)
    s += it->second * std::polar(1.0, static_cast<double>(it->first.second) * theta);
  return s;
}

TorusFunction& TorusFunction::operator+=(const TorusFunction& o) {
  for (const auto& [key, c] : o.coeffs_) coeffs_[key] += c;
  prune();
  return *this;
}

TorusFunction operator*(cd s, TorusFunction a) {
  for (auto& [key, c] : a.coeffs_) c *= s;
  a.prune();
  return a;
}

std::string TorusFunction::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  char buf[96];
  for (const auto& [key, c] : coeffs_) {
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)·u_{%lld,%lld}", c.real(), c.imag(),
                  static_cast<long long>(key.first), static_cast<long long>(key.second));
    if (!out.empty()) out += " + ";
    out += buf;
  }
  return out;
}

double sup_distance(const TorusFunction& a, const TorusFunction& b) {
  double d = 0.0;
  for (const auto& [key, c] : a.coeffs()) d = std::max(d, std::abs(c - b.at(key.first, key.second)));
  for (const auto& [key, c] : b.coeffs())
    if (!a.coeffs().count(key)) d = std::max(d, std::abs(c));
  return d;
}

TorusFunction conv_circ(const TorusFunction& u, const TorusFunction& v, double r) {
  TorusFunction out;
  for (const auto& [ab, x] : u.coeffs())
    for (const auto& [cd_, y] : v.coeffs()) {
      const auto [a, b] = ab;
      const auto [c, d] = cd_;
      out.add(a + c, b + d, x * y * std::polar(1.0, r * static_cast<double>(b) * static_cast<double>(c)));
    }
  out.prune();
  return out;
}

TorusFunction conv_bullet(const TorusFunction& u, const TorusFunction& v) {
  TorusFunction out;
  for (const auto& [ab, x] : u.coeffs())
    for (const auto& [cd_, y] : v.coeffs())
      if (ab.second == cd_.second) out.add(ab.first + cd_.first, ab.second, x * y);
  out.prune();
  return out;
}

std::string circ_symbolic(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const long long bc = static_cast<long long>(b * c);
  std::string phase = bc == 0 ? "" : "e^{i·" + (bc == 1 ? std::string() : std::to_string(bc)) + "r}·";
  return phase + "u_{" + std::to_string(a + c) + "," + std::to_string(b + d) + "}";
}

namespace {

// One level of a torus function as a dense Fourier slice on [lo, lo + size).
struct Slice {
  std::int64_t lo = 0;
  std::vector<cd> c;
};

std::map<std::int64_t, Slice> slices(const TorusFunction& u) {
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> span;
  for (const auto& [key, c] : u.coeffs()) {
    auto [it, fresh] = span.try_emplace(key.first, key.second, key.second);
    it->second.first = std::min(it->second.first, key.second);
    it->second.second = std::max(it->second.second, key.second);
  }
  std::map<std::int64_t, Slice> out;
  for (const auto& [j, lh] : span) out[j] = Slice{lh.first, std::vector<cd>(static_cast<std::size_t>(lh.second - lh.first + 1))};
  for (const auto& [key, c] : u.coeffs()) {
    auto& s = out[key.first];
    s.c[static_cast<std::size_t>(key.second - s.lo)] = c;
  }
  return out;
}

}  // namespace

TorusFunction generic_conv(const TorusFunction& u, const TorusFunction& v, double r, Mode mode) {
  const auto& K = kernels::active();
  const auto su = slices(u);
  const auto sv = slices(v);
  TorusFunction out;
  for (const auto& [m, us] : su) {
    for (const auto& [l, vs] : sv) {
      const std::int64_t n = m + l;  // v is read at level n − m = l
      if (mode == Mode::circ) {
        // u(m, r(n−m)+θ): frequency k picks up e^{ik·r(n−m)}.
        std::vector<cd> phase(us.c.size()), shifted(us.c.size());
        for (std::size_t i = 0; i < phase.size(); ++i)
          phase[i] = std::polar(1.0, static_cast<double>(us.lo + static_cast<std::int64_t>(i)) * r * static_cast<double>(n - m));
        K.cmul(us.c.data(), phase.data(), shifted.data(), shifted.size());
        // pointwise product in θ = Cauchy product of Fourier coefficients
        std::vector<cd> prod(shifted.size() + vs.c.size() - 1);
        for (std::size_t i = 0; i < shifted.size(); ++i) K.caxpy(shifted[i], vs.c.data(), prod.data() + i, vs.c.size());
        for (std::size_t i = 0; i < prod.size(); ++i)
          if (prod[i] != cd{}) out.add(n, us.lo + vs.lo + static_cast<std::int64_t>(i), prod[i]);
      } else {
        // ∫ e^{ikφ} e^{ik'(θ−φ)} dφ = δ_{kk'} e^{ik'θ}: only common frequencies survive.
        const std::int64_t lo = std::max(us.lo, vs.lo);
        const std::int64_t hi = std::min(us.lo + static_cast<std::int64_t>(us.c.size()),
                                         vs.lo + static_cast<std::int64_t>(vs.c.size()));
        if (hi <= lo) continue;
        std::vector<cd> prod(static_cast<std::size_t>(hi - lo));
        K.cmul(us.c.data() + (lo - us.lo), vs.c.data() + (lo - vs.lo), prod.data(), prod.size());
        for (std::size_t i = 0; i < prod.size(); ++i)
          if (prod[i] != cd{}) out.add(n, lo + static_cast<std::int64_t>(i), prod[i]);
      }
    }
  }
  out.prune();
  return out;
}

CompatExpressions compat_expressions(const std::array<std::int64_t, 8>& x, double r, double tol) {
  auto u = [&](int i) { return TorusFunction::basis(x[i], x[i + 1]); };
  CompatExpressions out;
  out.expr1 = conv_bullet(conv_circ(u(0), u(2), r), conv_circ(u(4), u(6), r));
  out.expr2 = conv_circ(conv_bullet(u(0), u(4)), conv_bullet(u(2), u(6)), r);
  out.equal = approx_equal(out.expr1, out.expr2, tol);
  return out;
}

ClosedVsOracle closed_vs_oracle(std::int64_t range, double r, double tol) {
  if (range < 0) throw PreconditionError("range must be non-negative");
  ClosedVsOracle rep;
  for (std::int64_t a = -range; a <= range; ++a)
    for (std::int64_t b = -range; b <= range; ++b)
      for (std::int64_t c = -range; c <= range; ++c)
        for (std::int64_t d = -range; d <= range; ++d) {
          const auto u = TorusFunction::basis(a, b);
          const auto v = TorusFunction::basis(c, d);
          const double ec = sup_distance(conv_circ(u, v, r), generic_conv(u, v, r, Mode::circ));
          const double eb = sup_distance(conv_bullet(u, v), generic_conv(u, v, r, Mode::bullet));
          ++rep.pairs;
          rep.max_error_circ = std::max(rep.max_error_circ, ec);
          rep.max_error_bullet = std::max(rep.max_error_bullet, eb);
          if ((ec > tol || eb > tol) && rep.failures.size() < 64) rep.failures.push_back({a, b, c, d});
        }
  return rep;
}

CompatTable compat_table(std::int64_t level_range, std::int64_t freq_range, double r, double tol) {
  if (level_range < 0 || freq_range < 0) throw PreconditionError("ranges must be non-negative");
  CompatTable t;
  t.level_range = level_range;
  t.freq_range = freq_range;
  const std::int64_t L = level_range, F = freq_range;
  std::array<std::int64_t, 8> x{};
  for (x[0] = -L; x[0] <= L; ++x[0])
    for (x[1] = -F; x[1] <= F; ++x[1])
      for (x[2] = -L; x[2] <= L; ++x[2])
        for (x[3] = -F; x[3] <= F; ++x[3])
          for (x[4] = -L; x[4] <= L; ++x[4])
            for (x[5] = -F; x[5] <= F; ++x[5])
              for (x[6] = -L; x[6] <= L; ++x[6])
                for (x[7] = -F; x[7] <= F; ++x[7]) {
                  const auto e = compat_expressions(x, r, tol);
                  const bool same = x[1] == x[5] && x[3] == x[7];
                  const bool sum_differs = x[1] + x[3] != x[5] + x[7];
                  if (same) {
                    ++t.same_freq_total;
                    t.same_freq_equal += e.equal;
                  } else if (sum_differs) {
                    ++t.sum_differs_total;
                    t.sum_differs_zero += e.equal && e.expr1.is_zero() && e.expr2.is_zero();
                  } else {
                    ++t.other_total;
                    t.other_unequal += !e.equal;
                  }
                  if (!e.equal && t.unequal_examples.size() < 8) t.unequal_examples.push_back(x);
                }
  t.derived_witness_unequal = !compat_expressions({0, 1, 0, 0, 0, 0, 0, 1}, r, tol).equal;
  return t;
}

nlohmann::json to_json(const TorusFunction& u) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, c] : u.coeffs())
    j[std::to_string(key.first) + "," + std::to_string(key.second)] = {c.real(), c.imag()};
  return j;
}

TorusFunction torus_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("torus function must be an object \"j,k\" -> [re, im]");
  TorusFunction u;
  for (const auto& [key, v] : j.items()) {
    long long a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(key.c_str(), "%lld,%lld%c", &a, &b, &tail) != 2) throw ParseError("bad torus key \"" + key + "\"");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError("coefficient of " + key + " must be [re, im]");
    u.add(a, b, {v[0].get<double>(), v[1].get<double>()});
  }
  u.prune();
  return u;
}

}  // namespace dgpd::nct
