#include "dgpd/compact.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

#include "dgpd/error.hpp"
#include "dgpd/kernels.hpp"
#include "dgpd/structure_io.hpp"

namespace dgpd::cg {

// --- FiniteGroup ----------------------------------------------------------------

FiniteGroup::FiniteGroup(const Groupoid& table, std::string name) {
  if (table.object_count() != 1) throw PreconditionError("a finite group needs exactly one object");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->table = table;
  const std::size_t n = table.arrow_count();
  impl->mul.resize(n * n);
  impl->inv.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    impl->inv[a] = table.inverse(Arrow{a}).index;
    for (std::uint32_t b = 0; b < n; ++b) impl->mul[a * n + b] = table.compose(Arrow{a}, Arrow{b}).index;
  }
  impl->identity = table.unit(Obj{0}).index;
  impl->element_order.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t x = a, k = 1;
    while (x != impl->identity) x = impl->mul[x * n + a], ++k;
    impl->element_order[a] = k;
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool central = true;
    for (std::size_t b = 0; b < n && central; ++b) central = impl->mul[a * n + b] == impl->mul[b * n + a];
    if (central) impl->center.push_back(a);
  }
  impl_ = std::move(impl);
}

bool FiniteGroup::is_central(std::size_t a) const {
  return std::binary_search(center().begin(), center().end(), a);
}

std::size_t FiniteGroup::index(std::string_view name) const {
  auto a = table().find_arrow(name);
  if (!a) throw UnknownIdError("group " + this->name() + " has no element \"" + std::string(name) + "\"");
  return a->index;
}

bool FiniteGroup::same(const FiniteGroup& o) const {
  if (impl_ == o.impl_) return true;
  if (!impl_ || !o.impl_) return false;
  return table().arrow_names() == o.table().arrow_names() && impl_->mul == o.impl_->mul;
}

// --- GroupModel -------------------------------------------------------------------

GroupModel GroupModel::finite(FiniteGroup g) {
  GroupModel m;
  m.group_ = std::make_shared<const FiniteGroup>(std::move(g));
  return m;
}

const FiniteGroup& GroupModel::group() const {
  if (!group_) throw PreconditionError("the circle model has no finite group table");
  return *group_;
}

bool GroupModel::same(const GroupModel& o) const {
  if (is_circle() || o.is_circle()) return is_circle() == o.is_circle();
  return group_ == o.group_ || group_->same(*o.group_);
}

// --- GroupFunction ----------------------------------------------------------------

namespace {

void require_same(const GroupFunction& a, const GroupFunction& b) {
  if (!a.model().same(b.model()))
    throw ContextMismatchError("functions on " + a.model().name() + " and " + b.model().name() + " cannot be combined");
}

const kernels::KernelTable& K() { return kernels::active(); }

}  // namespace

GroupFunction GroupFunction::table(const FiniteGroup& g, std::vector<cd> values) {
  if (values.size() != g.order())
    throw PreconditionError("table has " + std::to_string(values.size()) + " values for a group of order " +
                            std::to_string(g.order()));
  GroupFunction u;
  u.model_ = GroupModel::finite(g);
  u.values_ = std::move(values);
  return u;
}

GroupFunction GroupFunction::fourier(std::map<std::int64_t, cd> coeffs) {
  GroupFunction u;
  u.coeffs_ = std::move(coeffs);
  u.prune();
  return u;
}

GroupFunction GroupFunction::constant(const GroupModel& m, cd c) {
  if (m.is_circle()) return fourier({{0, c}});
  GroupFunction u;
  u.model_ = m;
  u.values_.assign(m.group().order(), c);
  return u;
}

GroupFunction GroupFunction::character(std::int64_t k, cd c) { return fourier({{k, c}}); }

cd GroupFunction::coeff(std::int64_t k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cd{} : it->second;
}

cd GroupFunction::evaluate(double theta) const {
  cd s{};
  for (const auto& [k, c] : coeffs_) s += c * std::polar(1.0, static_cast<double>(k) * theta);
  return s;
}

bool GroupFunction::is_zero(double tol) const {
  if (model_.is_circle()) return std::all_of(coeffs_.begin(), coeffs_.end(), [&](auto& kv) { return std::abs(kv.second) <= tol; });
  return std::all_of(values_.begin(), values_.end(), [&](cd z) { return std::abs(z) <= tol; });
}

void GroupFunction::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kPrune; });
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& o) {
  require_same(*this, o);
  if (model_.is_circle()) {
    for (const auto& [k, c] : o.coeffs_) coeffs_[k] += c;
    prune();
  } else {
    K().caxpy(1.0, o.values_.data(), values_.data(), values_.size());
  }
  return *this;
}

GroupFunction operator*(cd s, GroupFunction a) {
  for (auto& [k, c] : a.coeffs_) c *= s;
  for (auto& z : a.values_) z *= s;
  a.prune();
  return a;
}

std::string GroupFunction::to_string() const {
  std::string out;
  char buf[96];
  if (model_.is_circle()) {
    for (const auto& [k, c] : coeffs_) {
      std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)·e_%lld", c.real(), c.imag(), static_cast<long long>(k));
      out += (out.empty() ? "" : " + ") + std::string(buf);
    }
    return out.empty() ? "0" : out;
  }
  const auto& g = model_.group();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", values_[i].real(), values_[i].imag());
    out += (i ? ", " : "") + g.element_name(i) + ": " + buf;
  }
  return "{" + out + "}";
}

double sup_distance(const GroupFunction& a, const GroupFunction& b) {
  require_same(a, b);
  if (!a.model().is_circle()) return K().max_abs_diff(a.values().data(), b.values().data(), a.values().size());
  double d = 0.0;
  for (const auto& [k, c] : a.coeffs()) d = std::max(d, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs())
    if (!a.coeffs().count(k)) d = std::max(d, std::abs(c));
  return d;
}

GroupFunction convolve(const GroupFunction& u, const GroupFunction& v) {
  require_same(u, v);
  if (u.model().is_circle()) {
    std::map<std::int64_t, cd> out;
    for (const auto& [k, c] : u.coeffs())
      if (auto d = v.coeff(k); d != cd{}) out[k] = c * d;
    return GroupFunction::fourier(std::move(out));
  }
  const auto& g = u.model().group();
  const std::size_t n = g.order();
  std::vector<cd> out(n), column(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t h = 0; h < n; ++h) column[h] = v.at(g.mul(g.inv(h), x));
    out[x] = K().cdot(u.values().data(), column.data(), n) / static_cast<double>(n);
  }
  return GroupFunction::table(g, std::move(out));
}

GroupFunction pointwise(const GroupFunction& u, const GroupFunction& v) {
  require_same(u, v);
  if (u.model().is_circle()) {
    std::map<std::int64_t, cd> out;
    for (const auto& [k, c] : u.coeffs())
      for (const auto& [l, d] : v.coeffs()) out[k + l] += c * d;
    return GroupFunction::fourier(std::move(out));
  }
  std::vector<cd> out(u.values().size());
  K().cmul(u.values().data(), v.values().data(), out.data(), out.size());
  return GroupFunction::table(u.model().group(), std::move(out));
}

GroupFunction random_function(const GroupModel& m, std::mt19937_64& rng, std::int64_t max_freq) {
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto draw = [&] {
    const double re = 2 * unit() - 1;
    return cd(re, 2 * unit() - 1);
  };
  if (m.is_circle()) {
    std::map<std::int64_t, cd> c;
    for (std::int64_t k = -max_freq; k <= max_freq; ++k) c[k] = draw();
    return GroupFunction::fourier(std::move(c));
  }
  std::vector<cd> vals(m.group().order());
  for (auto& z : vals) z = draw();
  return GroupFunction::table(m.group(), std::move(vals));
}

// --- representations --------------------------------------------------------------

UnitaryRep UnitaryRep::circle_characters(std::string name, std::vector<std::int64_t> charges) {
  UnitaryRep r;
  r.name = std::move(name);
  r.model = GroupModel::circle();
  r.dim = charges.size();
  r.charges = std::move(charges);
  r.declared_irreducible = r.dim == 1;
  return r;
}

GroupFunction UnitaryRep::coefficient(std::size_t i, std::size_t j) const {
  if (i >= dim || j >= dim)
    throw PreconditionError("matrix coefficient (" + std::to_string(i) + "," + std::to_string(j) + ") of " + name +
                            " is out of range for dimension " + std::to_string(dim));
  if (model.is_circle()) return i == j ? GroupFunction::character(charges[i]) : GroupFunction::zero(model);
  const auto& g = model.group();
  std::vector<cd> vals(g.order());
  for (std::size_t x = 0; x < vals.size(); ++x) vals[x] = matrices[x](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return GroupFunction::table(g, std::move(vals));
}

GroupFunction UnitaryRep::character() const {
  auto chi = GroupFunction::zero(model);
  for (std::size_t i = 0; i < dim; ++i) chi += coefficient(i, i);
  return chi;
}

namespace {

void check_shape(const UnitaryRep& pi) {
  if (pi.dim == 0) throw StructureError("representation " + pi.name + " has dimension 0");
  if (pi.model.is_circle()) {
    if (pi.charges.size() != pi.dim) throw StructureError("representation " + pi.name + ": dimension mismatch");
    return;
  }
  const auto n = pi.model.group().order();
  if (pi.matrices.size() != n)
    throw StructureError("representation " + pi.name + " has " + std::to_string(pi.matrices.size()) +
                         " matrices for a group of order " + std::to_string(n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto& m = pi.matrices[x];
    if (m.rows() != static_cast<Eigen::Index>(pi.dim) || m.cols() != static_cast<Eigen::Index>(pi.dim))
      throw StructureError("representation " + pi.name + ": dimension mismatch at " + pi.model.group().element_name(x));
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

ValidationReport validate_rep(const UnitaryRep& pi, double tol) {
  check_shape(pi);
  ValidationReport rep;
  rep.subject = "representation " + pi.name;
  if (pi.model.is_circle()) {
    rep.notes.emplace_back("diagonal sum of circle characters: homomorphism and unitarity hold identically");
    return rep;
  }
  const auto& g = pi.model.group();
  const auto n = g.order();
  const auto I = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(pi.dim), static_cast<Eigen::Index>(pi.dim));
  auto& id = rep.add_axiom("identity");
  ++id.cases;
  if (double e = (pi.matrices[g.identity()] - I).cwiseAbs().maxCoeff(); e > tol)
    id.fail({{g.element_name(g.identity())}, "π(e) differs from I by " + fmt(e)});
  auto& hom = rep.add_axiom("homomorphism");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      ++hom.cases;
      const double e = (pi.matrices[g.mul(a, b)] - pi.matrices[a] * pi.matrices[b]).cwiseAbs().maxCoeff();
      if (e > tol) hom.fail({{g.element_name(a), g.element_name(b)}, "|π(gh) − π(g)π(h)| = " + fmt(e)});
    }
  auto& uni = rep.add_axiom("unitarity");
  for (std::size_t a = 0; a < n; ++a) {
    ++uni.cases;
    const double e = (pi.matrices[a].adjoint() * pi.matrices[a] - I).cwiseAbs().maxCoeff();
    if (e > tol) uni.fail({{g.element_name(a)}, "|π(g)*π(g) − I| = " + fmt(e)});
  }
  return rep;
}

double character_norm(const UnitaryRep& pi) {
  check_shape(pi);
  const auto chi = pi.character();
  double s = 0.0;
  if (pi.model.is_circle()) {
    for (const auto& [k, c] : chi.coeffs()) s += std::norm(c);
    return s;
  }
  for (cd z : chi.values()) s += std::norm(z);
  return s / static_cast<double>(chi.values().size());
}

bool is_irreducible(const UnitaryRep& pi, double tol) { return std::abs(character_norm(pi) - 1.0) <= tol; }

bool equivalent(const UnitaryRep& sigma, const UnitaryRep& pi, double tol) {
  return sigma.model.same(pi.model) && sigma.dim == pi.dim && sup_distance(sigma.character(), pi.character()) <= tol;
}

UnitaryRep tensor_rep(const UnitaryRep& sigma, const UnitaryRep& pi) {
  if (!sigma.model.same(pi.model)) throw ContextMismatchError("tensor product of representations of different groups");
  check_shape(sigma);
  check_shape(pi);
  UnitaryRep t;
  t.name = sigma.name + "⊗" + pi.name;
  t.model = sigma.model;
  t.dim = sigma.dim * pi.dim;
  if (sigma.model.is_circle()) {
    for (auto a : sigma.charges)
      for (auto i : pi.charges) t.charges.push_back(a + i);
  } else {
    for (std::size_t x = 0; x < sigma.matrices.size(); ++x)
      t.matrices.push_back(Eigen::kroneckerProduct(sigma.matrices[x], pi.matrices[x]).eval());
  }
  t.declared_irreducible = is_irreducible(t);
  return t;
}

// --- identities -----------------------------------------------------------------

namespace {

IdentityCheck finish(GroupFunction lhs, GroupFunction rhs, double tol) {
  IdentityCheck c{std::move(lhs), std::move(rhs), 0.0, false};
  c.gap = sup_distance(c.lhs, c.rhs);
  c.equal = c.gap <= tol;
  return c;
}

void require_model(const UnitaryRep& pi, const GroupFunction& u, const GroupFunction& v) {
  if (!pi.model.same(u.model()) || !pi.model.same(v.model()))
    throw ContextMismatchError("representation " + pi.name + " and the functions live on different groups");
}

}  // namespace

IdentityCheck coeff_conv_identity_check(const UnitaryRep& pi, const GroupFunction& u, const GroupFunction& v,
                                        std::size_t i, std::size_t k, double tol) {
  require_model(pi, u, v);
  auto lhs = GroupFunction::zero(pi.model);
  for (std::size_t j = 0; j < pi.dim; ++j)
    lhs += convolve(pointwise(u, pi.coefficient(i, j)), pointwise(v, pi.coefficient(j, k)));
  return finish(std::move(lhs), pointwise(convolve(u, v), pi.coefficient(i, k)), tol);
}

IdentityCheck weak_compat_check(const UnitaryRep& pi, const GroupFunction& u, const GroupFunction& v, std::size_t i,
                                std::size_t k, double tol) {
  require_model(pi, u, v);
  auto lhs = GroupFunction::zero(pi.model);
  auto rhs = GroupFunction::zero(pi.model);
  const auto uv = convolve(u, v);
  for (std::size_t j = 0; j < pi.dim; ++j) {
    lhs += convolve(pointwise(u, pi.coefficient(i, j)), pointwise(v, pi.coefficient(j, k)));
    rhs += pointwise(uv, convolve(pi.coefficient(i, j), pi.coefficient(j, k)));
  }
  return finish(std::move(lhs), std::move(rhs), tol);
}

ValidationReport schur_check(const UnitaryRep& pi, const std::vector<UnitaryRep>& others, double tol) {
  ValidationReport rep;
  rep.subject = "schur " + pi.name;
  const double d = static_cast<double>(pi.dim);
  auto& irr = rep.add_axiom("irreducible");
  ++irr.cases;
  if (double nrm = character_norm(pi); std::abs(nrm - 1.0) > 1e-9) irr.fail({{pi.name}, "⟨χ,χ⟩ = " + fmt(nrm)});
  if (!pi.declared_irreducible) rep.notes.emplace_back(pi.name + " is not declared irreducible");

  auto& schur = rep.add_axiom("schur");
  for (std::size_t i = 0; i < pi.dim; ++i)
    for (std::size_t j = 0; j < pi.dim; ++j)
      for (std::size_t k = 0; k < pi.dim; ++k) {
        ++schur.cases;
        const double e = sup_distance(convolve(pi.coefficient(i, j), pi.coefficient(j, k)),
                                      cd(1.0 / d) * pi.coefficient(i, k));
        if (e > tol)
          schur.fail({{std::to_string(i), std::to_string(j), std::to_string(k)}, "|π_ij*π_jk − π_ik/d| = " + fmt(e)});
      }

  auto& cross = rep.add_axiom("cross-orthogonality");
  for (const auto& s : others) {
    if (!s.model.same(pi.model) || equivalent(s, pi)) continue;
    for (std::size_t a = 0; a < s.dim; ++a)
      for (std::size_t b = 0; b < s.dim; ++b)
        for (std::size_t c = 0; c < pi.dim; ++c)
          for (std::size_t e = 0; e < pi.dim; ++e) {
            const auto sab = s.coefficient(a, b);
            const auto pce = pi.coefficient(c, e);
            for (const auto& prod : {convolve(sab, pce), convolve(pce, sab)}) {
              ++cross.cases;
              if (!prod.is_zero(tol))
                cross.fail({{s.name, std::to_string(a), std::to_string(b), pi.name, std::to_string(c), std::to_string(e)},
                            "nonzero convolution of inequivalent coefficients"});
            }
          }
  }
  return rep;
}

std::vector<NaiveWitness> naive_compat_search(const UnitaryRep& sigma, const UnitaryRep& pi, double gap,
                                              unsigned jobs) {
  if (!sigma.model.same(pi.model)) throw ContextMismatchError("σ and π live on different groups");
  for (const auto* r : {&sigma, &pi})
    if (!validate_rep(*r).ok()) throw PreconditionError("representation " + r->name + " is not a valid unitary representation");

  const std::size_t ds = sigma.dim, dp = pi.dim;
  std::vector<GroupFunction> sc(ds * ds), pc(dp * dp);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < ds; ++b) sc[a * ds + b] = sigma.coefficient(a, b);
  for (std::size_t i = 0; i < dp; ++i)
    for (std::size_t j = 0; j < dp; ++j) pc[i * dp + j] = pi.coefficient(i, j);

  const std::size_t total = ds * ds * ds * dp * dp * dp;
  auto run = [&](std::size_t lo, std::size_t hi, std::vector<NaiveWitness>& out) {
    for (std::size_t t = lo; t < hi; ++t) {
      std::size_t r = t;
      const std::size_t k = r % dp; r /= dp;
      const std::size_t j = r % dp; r /= dp;
      const std::size_t i = r % dp; r /= dp;
      const std::size_t c = r % ds; r /= ds;
      const std::size_t b = r % ds; r /= ds;
      const std::size_t a = r;
      const auto& sab = sc[a * ds + b];
      const auto& sbc = sc[b * ds + c];
      const auto& pij = pc[i * dp + j];
      const auto& pjk = pc[j * dp + k];
      auto lhs = convolve(pointwise(sab, pij), pointwise(pjk, sbc));
      auto rhs = pointwise(convolve(sab, sbc), convolve(pij, pjk));
      const double g = sup_distance(lhs, rhs);
      if (g > gap) out.push_back({a, b, c, i, j, k, std::move(lhs), std::move(rhs), g});
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total ? total : 1)));
  std::vector<std::vector<NaiveWitness>> parts(jobs);
  if (jobs == 1) {
    run(0, total, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w)
      threads.emplace_back(run, total * w / jobs, total * (w + 1) / jobs, std::ref(parts[w]));
    for (auto& t : threads) t.join();
  }
  std::vector<NaiveWitness> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

// --- fixtures -------------------------------------------------------------------

const UnitaryRep& GroupFixture::rep(std::string_view name) const {
  for (const auto& r : irreps)
    if (r.name == name) return r;
  throw UnknownIdError("group " + group.name() + " has no representation \"" + std::string(name) + "\"");
}

namespace {

UnitaryRep rep_from(const FiniteGroup& g, std::string name, std::size_t dim,
                    const std::function<Eigen::MatrixXcd(std::size_t)>& matrix) {
  UnitaryRep r;
  r.name = std::move(name);
  r.model = GroupModel::finite(g);
  r.dim = dim;
  for (std::size_t x = 0; x < g.order(); ++x) r.matrices.push_back(matrix(x));
  r.declared_irreducible = true;
  return r;
}

Eigen::MatrixXcd scalar(cd z) { return Eigen::MatrixXcd::Constant(1, 1, z); }

using Perm = std::array<int, 3>;

std::vector<Perm> s3_perms() {
  std::vector<Perm> perms;
  Perm p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

std::string perm_name(const Perm& p) { return "p" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]); }

// e_x ↦ e_{p(x)}
Eigen::MatrixXcd perm_matrix(const Perm& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  for (int x = 0; x < 3; ++x) m(p[x], x) = 1.0;
  return m;
}

}  // namespace

GroupFixture cyclic_fixture(std::size_t n) {
  if (n == 0) throw PreconditionError("Z/0 is not a finite group");
  FiniteGroup g(cyclic_group(n), "z" + std::to_string(n));
  GroupFixture f{g, {}};
  for (std::size_t a = 0; a < n; ++a)
    f.irreps.push_back(rep_from(g, "chi" + std::to_string(a), 1, [&](std::size_t x) {
      const auto val = static_cast<double>(std::stoul(g.element_name(x)));
      return scalar(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(a) * val / static_cast<double>(n)));
    }));
  return f;
}

GroupFixture s3_fixture() {
  const auto perms = s3_perms();
  std::vector<std::string> names;
  for (const auto& p : perms) names.push_back(perm_name(p));
  auto table = make_group(names, [&](std::size_t a, std::size_t b) {
    Perm r{};
    for (int x = 0; x < 3; ++x) r[x] = perms[a][perms[b][x]];
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), r) - perms.begin());
  });
  FiniteGroup g(table, "s3");
  auto perm_of = [&](std::size_t x) { return perms[static_cast<std::size_t>(std::find(names.begin(), names.end(), g.element_name(x)) - names.begin())]; };

  Eigen::MatrixXcd F(3, 2);
  F << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
  GroupFixture f{g, {}};
  f.irreps.push_back(rep_from(g, "triv", 1, [](std::size_t) { return scalar(1.0); }));
  f.irreps.push_back(rep_from(g, "sign", 1, [&](std::size_t x) { return scalar(perm_matrix(perm_of(x)).determinant()); }));
  f.irreps.push_back(rep_from(g, "rho2", 2, [&](std::size_t x) { return Eigen::MatrixXcd(F.adjoint() * perm_matrix(perm_of(x)) * F); }));
  return f;
}

GroupFixture q8_fixture() {
  using Q = std::array<int, 4>;
  const std::vector<Q> els{{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
                           {0, 0, 1, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}};
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto table = make_group(names, [&](std::size_t a, std::size_t b) {
    const Q& p = els[a];
    const Q& q = els[b];
    Q r{p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
    return static_cast<std::size_t>(std::find(els.begin(), els.end(), r) - els.begin());
  });
  FiniteGroup g(table, "q8");
  auto quat = [&](std::size_t x) { return els[static_cast<std::size_t>(std::find(names.begin(), names.end(), g.element_name(x)) - names.begin())]; };
  const cd I(0, 1);
  Eigen::MatrixXcd Mi(2, 2), Mj(2, 2);
  Mi << I, 0, 0, -I;
  Mj << 0, 1, -1, 0;
  const Eigen::MatrixXcd Mk = Mi * Mj;

  GroupFixture f{g, {}};
  f.irreps.push_back(rep_from(g, "triv", 1, [](std::size_t) { return scalar(1.0); }));
  // chi_u is trivial on ±1, ±u and −1 on the other two axes
  for (int axis = 1; axis <= 3; ++axis)
    f.irreps.push_back(rep_from(g, std::string("chi_") + "ijk"[axis - 1], 1, [&, axis](std::size_t x) {
      const Q q = quat(x);
      return scalar(q[0] != 0 || q[axis] != 0 ? 1.0 : -1.0);
    }));
  f.irreps.push_back(rep_from(g, "rho2", 2, [&](std::size_t x) {
    const Q q = quat(x);
    return Eigen::MatrixXcd(static_cast<double>(q[0]) * Eigen::MatrixXcd::Identity(2, 2) + static_cast<double>(q[1]) * Mi +
                            static_cast<double>(q[2]) * Mj + static_cast<double>(q[3]) * Mk);
  }));
  return f;
}

GroupFixture s3xs3_fixture() {
  const auto s3 = s3_fixture();
  const auto& h = s3.group;
  const std::size_t n = h.order();
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) names.push_back(pair_label(h.element_name(a), h.element_name(b)));
  auto table = make_group(names, [&](std::size_t x, std::size_t y) { return h.mul(x / n, y / n) * n + h.mul(x % n, y % n); });
  FiniteGroup g(table, "s3xs3");
  auto parts = [&](std::size_t x) {
    const auto pos = static_cast<std::size_t>(std::find(names.begin(), names.end(), g.element_name(x)) - names.begin());
    return std::pair{pos / n, pos % n};
  };
  GroupFixture f{g, {}};
  for (const char* base : {"rho2", "sign"}) {
    const auto& r = s3.rep(base);
    f.irreps.push_back(rep_from(g, std::string(base) + "_left", r.dim, [&](std::size_t x) { return r.matrices[parts(x).first]; }));
    f.irreps.push_back(rep_from(g, std::string(base) + "_right", r.dim, [&](std::size_t x) { return r.matrices[parts(x).second]; }));
  }
  return f;
}

GroupFixture fixture_by_name(std::string_view name) {
  if (name == "s3") return s3_fixture();
  if (name == "q8") return q8_fixture();
  if (name == "s3xs3") return s3xs3_fixture();
  if (name.size() > 1 && name[0] == 'z' && std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const auto n = std::stoul(std::string(name.substr(1)));
    if (n >= 1 && n <= 64) return cyclic_fixture(n);
  }
  throw UnknownIdError("unknown group fixture \"" + std::string(name) + "\" (known: z<n> for 1 ≤ n ≤ 64, s3, q8, s3xs3)");
}

// --- JSON -----------------------------------------------------------------------

namespace {

nlohmann::json cd_json(cd z) { return {z.real(), z.imag()}; }

cd cd_from(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex entries are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const GroupFixture& f) {
  nlohmann::json irreps = nlohmann::json::array();
  for (const auto& r : f.irreps) {
    nlohmann::json mats = nlohmann::json::object();
    for (std::size_t x = 0; x < r.matrices.size(); ++x) {
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < r.matrices[x].rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < r.matrices[x].cols(); ++j) row.push_back(cd_json(r.matrices[x](i, j)));
        rows.push_back(row);
      }
      mats[f.group.element_name(x)] = rows;
    }
    irreps.push_back({{"name", r.name}, {"dim", r.dim}, {"irreducible", r.declared_irreducible}, {"matrices", mats}});
  }
  return {{"name", f.group.name()}, {"group", io::to_json(f.group.table().to_data())}, {"irreps", irreps}};
}

GroupFixture fixture_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("irreps"))
    throw ParseError("group fixture needs \"group\" and \"irreps\"");
  FiniteGroup g(io::groupoid_from_json(j.at("group")), j.value("name", std::string("group")));
  GroupFixture f{g, {}};
  for (const auto& r : j.at("irreps")) {
    UnitaryRep rep;
    rep.name = r.at("name").get<std::string>();
    rep.model = GroupModel::finite(g);
    rep.dim = r.at("dim").get<std::size_t>();
    rep.declared_irreducible = r.value("irreducible", false);
    const auto& mats = r.at("matrices");
    rep.matrices.resize(g.order());
    for (const auto& [elem, rows] : mats.items()) {
      const auto x = g.index(elem);
      const auto where = rep.name + "[" + elem + "]";
      if (!rows.is_array()) throw ParseError(where + ": matrix must be an array of rows");
      Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != m.cols()) throw ParseError(where + ": ragged matrix");
        for (std::size_t k = 0; k < rows[i].size(); ++k)
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cd_from(rows[i][k], where);
      }
      rep.matrices[x] = m;
    }
    check_shape(rep);
    f.irreps.push_back(std::move(rep));
  }
  return f;
}

nlohmann::json to_json(const GroupFunction& u) {
  nlohmann::json out = {{"model", u.model().name()}};
  nlohmann::json body = nlohmann::json::object();
  if (u.model().is_circle()) {
    for (const auto& [k, c] : u.coeffs()) body[std::to_string(k)] = cd_json(c);
    out["fourier"] = body;
  } else {
    for (std::size_t x = 0; x < u.values().size(); ++x) body[u.model().group().element_name(x)] = cd_json(u.at(x));
    out["values"] = body;
  }
  return out;
}

}  // namespace dgpd::cg
