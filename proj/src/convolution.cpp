#include "dgpd/convolution.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <thread>

namespace dgpd {

bool pair_matrix_iso_check(std::size_t n, bool transposed) {
  if (n == 0 || n > kPairMatrixMaxN)
    throw PreconditionError("pair_matrix_iso_check needs 1 <= n <= " + std::to_string(kPairMatrixMaxN));
  std::vector<std::string> points;
  for (std::size_t i = 1; i <= n; ++i) points.push_back(std::to_string(i));
  const Groupoid pair = pair_groupoid(points);
  const HaarSystem counting = counting_haar(pair);

  using Mat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
  // arrow index → matrix unit position
  std::vector<std::pair<std::size_t, std::size_t>> pos(pair.arrow_count());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Arrow a = pair.arrow(pair_label(points[i], points[j]));
      pos[a.index] = transposed ? std::pair{j, i} : std::pair{i, j};
    }
  auto image = [&](const ExactElement& e) {
    Mat m = Mat::Zero(n, n);
    for (const auto& [k, c] : e.terms()) {
      if (c.im != Rational(0) || c.re.denominator() != 1) return Mat(Mat::Constant(n, n, -1));
      m(pos[k].first, pos[k].second) += c.re.numerator();
    }
    return m;
  };
  const auto& ctx = pair.shared_arrow_names();
  for (std::uint32_t x = 0; x < pair.arrow_count(); ++x) {
    const auto dx = ExactElement::delta(ctx, Arrow{x});
    const Mat mx = image(dx);
    for (std::uint32_t y = 0; y < pair.arrow_count(); ++y) {
      const auto dy = ExactElement::delta(ctx, Arrow{y});
      if (image(convolve(pair, counting, dx, dy)) != mx * image(dy)) return false;
    }
  }
  return true;
}

DoubleConvolutions::DoubleConvolutions(DoubleGroupoid dg, const DoubleHaarSystem& dh)
    : dg_(std::move(dg)), induced_(induce_haar(dg_, dh)) {}

DoubleConvolutions double_convolutions(const DoubleGroupoid& dg, const DoubleHaarSystem& dh) {
  return DoubleConvolutions(dg, dh);
}

bool products_equal(const DoubleGroupoid& dg) {
  const auto& v = dg.vertical();
  const auto& h = dg.horizontal();
  const auto n = static_cast<std::uint32_t>(dg.square_count());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (v.try_compose(Arrow{a}, Arrow{b}) != h.try_compose(Arrow{a}, Arrow{b})) return false;
  return true;
}

namespace {

using Tuple = std::array<std::uint32_t, 4>;

std::vector<Tuple> plausible_tuples(const DoubleGroupoid& dg, bool audit) {
  const auto n = static_cast<std::uint32_t>(dg.square_count());
  std::vector<Tuple> out;
  if (audit) {
    out.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          for (std::uint32_t d = 0; d < n; ++d) out.push_back({a, b, c, d});
    return out;
  }
  auto pairs = [&](const Groupoid& g) {
    std::vector<std::array<std::uint32_t, 2>> ps;
    for (std::uint32_t x = 0; x < n; ++x)
      for (Arrow y : g.target_fiber(g.source(Arrow{x}))) ps.push_back({x, y.index});
    return ps;
  };
  const auto vp = pairs(dg.vertical());
  const auto hp = pairs(dg.horizontal());
  out.reserve(vp.size() * vp.size() + hp.size() * hp.size());
  for (const auto& ab : vp)
    for (const auto& cd : vp) out.push_back({ab[0], ab[1], cd[0], cd[1]});
  for (const auto& ac : hp)
    for (const auto& bd : hp) out.push_back({ac[0], bd[0], ac[1], bd[1]});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Chunk {
  std::size_t count = 0;
  std::vector<CompatViolation> violations;
};

void scan_chunk(const DoubleConvolutions& conv, const std::vector<ExactElement>& deltas,
                const std::vector<Tuple>& tuples, std::size_t lo, std::size_t hi, Chunk& out) {
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& t = tuples[i];
    const auto& da = deltas[t[0]];
    const auto& db = deltas[t[1]];
    const auto& dc = deltas[t[2]];
    const auto& dd = deltas[t[3]];
    auto lhs = conv.bullet(conv.circ(da, db), conv.circ(dc, dd));
    auto rhs = conv.circ(conv.bullet(da, dc), conv.bullet(db, dd));
    if (lhs != rhs) {
      ++out.count;
      if (out.violations.size() < CompatReport::kViolationCap)
        out.violations.push_back({Arrow{t[0]}, Arrow{t[1]}, Arrow{t[2]}, Arrow{t[3]}, std::move(lhs), std::move(rhs)});
    }
  }
}

}  // namespace

CompatReport compatibility_scan(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, bool audit, unsigned jobs) {
  const DoubleConvolutions conv(dg, dh);
  const auto tuples = plausible_tuples(dg, audit);
  std::vector<ExactElement> deltas;
  for (std::uint32_t i = 0; i < dg.square_count(); ++i) deltas.push_back(conv.delta(Arrow{i}));

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, tuples.size() / 64))));
  std::vector<Chunk> chunks(jobs);
  const std::size_t step = (tuples.size() + jobs - 1) / jobs;
  if (jobs == 1) {
    scan_chunk(conv, deltas, tuples, 0, tuples.size(), chunks[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t lo = std::min(tuples.size(), j * step);
      const std::size_t hi = std::min(tuples.size(), lo + step);
      pool.emplace_back(scan_chunk, std::cref(conv), std::cref(deltas), std::cref(tuples), lo, hi, std::ref(chunks[j]));
    }
    for (auto& t : pool) t.join();
  }

  CompatReport rep;
  rep.audit = audit;
  rep.checked = tuples.size();
  for (auto& ch : chunks) {
    rep.violation_count += ch.count;
    for (auto& v : ch.violations)
      if (rep.violations.size() < CompatReport::kViolationCap) rep.violations.push_back(std::move(v));
  }
  rep.verdict_products_equal = rep.violation_count == 0;
  rep.structural_products_equal = products_equal(dg);
  rep.counting_measures = is_counting(conv.induced().circ) && is_counting(conv.induced().bullet);
  if (rep.counting_measures && rep.verdict_products_equal != rep.structural_products_equal)
    throw InternalInconsistencyError(
        std::string("compatibility verdict disagrees with structural product equality: scan says ") +
        (rep.verdict_products_equal ? "compatible" : "incompatible") + ", tables say " +
        (rep.structural_products_equal ? "equal" : "different"));
  return rep;
}

}  // namespace dgpd
