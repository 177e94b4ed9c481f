#include <random>

#include "doctest.h"
#include "dgpd/convolution.hpp"
#include "dgpd/error.hpp"
#include "dgpd/structure_io.hpp"
#include "support.hpp"

using namespace dgpd;
using testsupport::convolve_by_definition;

namespace {

ExactElement delta(const Category& c, const std::string& id) { return ExactElement::delta(c.shared_arrow_names(), c.arrow(id)); }

ExactElement random_exact(const Category& c, std::mt19937_64& rng) {
  ExactElement e(c.shared_arrow_names());
  for (std::uint32_t i = 0; i < c.arrow_count(); ++i)
    if (rng() % 3)
      e.add(Arrow{i}, QComplex(Rational(static_cast<std::int64_t>(rng() % 7) - 3, 1 + rng() % 3),
                               Rational(static_cast<std::int64_t>(rng() % 5) - 2)));
  e.prune();
  return e;
}

std::vector<std::string> ids(const DoubleGroupoid& dg, const CompatViolation& v) {
  return {dg.name(v.a), dg.name(v.b), dg.name(v.c), dg.name(v.d)};
}

}  // namespace

TEST_CASE("group algebra and pair groupoid products") {
  auto z3 = cyclic_group(3);
  CHECK(convolve(z3, counting_haar(z3), delta(z3, "1"), delta(z3, "2")) == delta(z3, "0"));

  auto pair = pair_groupoid({"1", "2", "3"});
  auto h = counting_haar(pair);
  CHECK(convolve(pair, h, delta(pair, "(1,2)"), delta(pair, "(2,3)")) == delta(pair, "(1,3)"));
  CHECK(convolve(pair, h, delta(pair, "(1,2)"), delta(pair, "(3,1)")).is_zero());

  auto third = uniform_haar(z3, Rational(1, 3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      auto want = QComplex(Rational(1, 3)) * delta(z3, std::to_string((a + b) % 3));
      CHECK(convolve(z3, third, delta(z3, std::to_string(a)), delta(z3, std::to_string(b))) == want);
    }
}

TEST_CASE("sparse convolution equals the defining fibre sum") {
  std::mt19937_64 rng(17);
  std::vector<Groupoid> fixtures{cyclic_group(4), pair_groupoid({"a", "b", "c"}), testsupport::s3_perm(),
                                 testsupport::q8_quat()};
  for (const auto& g : fixtures) {
    for (int round = 0; round < 10; ++round) {
      HaarSystem h = uniform_haar(g, Rational(1 + rng() % 4, 1 + rng() % 5));
      auto u = random_exact(g, rng);
      auto v = random_exact(g, rng);
      CHECK(convolve(g, h, u, v) == convolve_by_definition(g, h, u, v));
    }
  }
}

TEST_CASE("associativity on all basis triples, bilinearity") {
  std::vector<Groupoid> fixtures{cyclic_group(3), pair_groupoid({"1", "2", "3"}), testsupport::s3_perm()};
  for (const auto& g : fixtures) {
    auto h = counting_haar(g);
    const auto& ctx = g.shared_arrow_names();
    for (std::uint32_t a = 0; a < g.arrow_count(); ++a)
      for (std::uint32_t b = 0; b < g.arrow_count(); ++b)
        for (std::uint32_t c = 0; c < g.arrow_count(); ++c) {
          auto da = ExactElement::delta(ctx, Arrow{a});
          auto db = ExactElement::delta(ctx, Arrow{b});
          auto dc = ExactElement::delta(ctx, Arrow{c});
          CHECK(convolve(g, h, convolve(g, h, da, db), dc) == convolve(g, h, da, convolve(g, h, db, dc)));
        }
  }
  std::mt19937_64 rng(5);
  auto g = testsupport::q8_quat();
  auto h = uniform_haar(g, Rational(1, 8));
  for (int i = 0; i < 20; ++i) {
    auto u = random_exact(g, rng), v = random_exact(g, rng), w = random_exact(g, rng);
    QComplex s(Rational(2, 3), Rational(-1));
    CHECK(convolve(g, h, u + s * v, w) == convolve(g, h, u, w) + s * convolve(g, h, v, w));
    CHECK(convolve(g, h, convolve(g, h, u, v), w) == convolve(g, h, u, convolve(g, h, v, w)));
  }
}

TEST_CASE("float mode convolution") {
  auto g = testsupport::s3_perm();
  auto h = uniform_haar(g, Rational(1, 6));
  std::mt19937_64 rng(23);
  FloatElement u(g.shared_arrow_names()), v(g.shared_arrow_names());
  for (std::uint32_t i = 0; i < 6; ++i) {
    u.add(Arrow{i}, testsupport::random_cd(rng));
    v.add(Arrow{i}, testsupport::random_cd(rng));
  }
  CHECK(sup_distance(convolve(g, h, u, v), convolve_by_definition(g, h, u, v)) < 1e-14);
  FloatElement tiny(g.shared_arrow_names());
  tiny.add(Arrow{0}, {1e-13, 0});
  tiny.prune();
  CHECK(tiny.is_zero());
}

TEST_CASE("context mismatch") {
  auto z3 = cyclic_group(3);
  auto z4 = cyclic_group(4);
  CHECK_THROWS_AS(convolve(z3, counting_haar(z3), delta(z3, "1"), delta(z4, "1")), ContextMismatchError);
  CHECK_THROWS_AS(delta(z3, "1") + delta(z4, "1"), ContextMismatchError);
  // same ids from a separately built table are the same context
  auto other = cyclic_group(3);
  CHECK(convolve(z3, counting_haar(z3), delta(other, "1"), delta(z3, "1")) == delta(z3, "2"));
}

TEST_CASE("pair groupoid algebra is the matrix algebra") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(pair_matrix_iso_check(n));
  CHECK_FALSE(pair_matrix_iso_check(3, true));
  CHECK(pair_matrix_iso_check(1, true));
  CHECK_THROWS_AS(pair_matrix_iso_check(0), PreconditionError);
  CHECK_THROWS_AS(pair_matrix_iso_check(kPairMatrixMaxN + 1), PreconditionError);
}

TEST_CASE("double convolutions") {
  SUBCASE("from_group(Z/2)") {
    auto dg = from_group(cyclic_group(2));
    auto conv = double_convolutions(dg, DoubleHaarSystem::counting(dg));
    for (std::string a : {"0", "1"})
      for (std::string b : {"0", "1"}) {
        auto da = conv.delta(dg.square(a)), db = conv.delta(dg.square(b));
        auto c = conv.circ(da, db);
        if (a == b) {
          CHECK(c == da);
        } else {
          CHECK(c.is_zero());
        }
        CHECK(conv.bullet(da, db) == conv.delta(dg.square(std::to_string((std::stoi(a) + std::stoi(b)) % 2))));
      }
  }
  SUBCASE("central_action_double(Z/2 in Z/4)") {
    auto dg = central_action_double(cyclic_group(4), {"0", "2"});
    auto conv = double_convolutions(dg, DoubleHaarSystem::counting(dg));
    CHECK(conv.circ(conv.delta(dg.square("(2,2)")), conv.delta(dg.square("(2,0)"))) ==
          conv.delta(dg.square("(0,0)")));
  }
  SUBCASE("vertical units") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
      auto dg = testsupport::random_valid_double(rng);
      auto conv = double_convolutions(dg, DoubleHaarSystem::counting(dg));
      const auto& v = dg.vertical();
      ExactElement e_n(conv.context());
      for (std::uint32_t x = 0; x < v.object_count(); ++x) e_n.add(v.unit(Obj{x}), QComplex(Rational(1)));
      e_n.prune();
      for (std::uint32_t a = 0; a < dg.square_count(); ++a) {
        auto da = conv.delta(Arrow{a});
        CHECK(conv.circ(conv.delta(v.unit(v.target(Arrow{a}))), da) == da);
        CHECK(conv.circ(da, conv.delta(v.unit(v.source(Arrow{a})))) == da);
        CHECK(conv.circ(e_n, da) == da);
        CHECK(conv.circ(da, e_n) == da);
      }
    }
  }
}

TEST_CASE("compatibility scan on fixtures") {
  SUBCASE("from_group(Z/2)") {
    auto dg = from_group(cyclic_group(2));
    auto rep = compatibility_scan(dg, DoubleHaarSystem::counting(dg));
    CHECK_FALSE(rep.verdict_products_equal);
    CHECK_FALSE(rep.structural_products_equal);
    bool found = false;
    for (const auto& v : rep.violations) {
      if (ids(dg, v) == std::vector<std::string>{"0", "1", "1", "0"}) {
        found = true;
        CHECK(v.lhs.is_zero());
        CHECK(v.rhs == ExactElement::delta(dg.vertical().shared_arrow_names(), dg.square("1")));
      }
    }
    CHECK(found);
  }
  SUBCASE("diagonal structures are compatible") {
    for (const auto& dg : {diagonal_double(cyclic_group(1)), diagonal_double(cyclic_group(5)),
                           diagonal_double(testsupport::product_cyclic(2, 2))}) {
      auto rep = compatibility_scan(dg, DoubleHaarSystem::counting(dg));
      CHECK(rep.violation_count == 0);
      CHECK(rep.verdict_products_equal);
      CHECK(rep.structural_products_equal);
    }
  }
  SUBCASE("central_action_double(Z/2 in Z/4)") {
    auto dg = central_action_double(cyclic_group(4), {"0", "2"});
    auto rep = compatibility_scan(dg, DoubleHaarSystem::counting(dg));
    CHECK(rep.violation_count > 0);
    CHECK_FALSE(rep.verdict_products_equal);
  }
}

TEST_CASE("audit scan and threaded scan agree with the indexed scan") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 8; ++i) {
    auto dg = testsupport::random_valid_double(rng);
    if (dg.square_count() > 12) continue;
    auto dh = DoubleHaarSystem::counting(dg);
    auto fast = compatibility_scan(dg, dh);
    auto audit = compatibility_scan(dg, dh, true);
    auto threaded = compatibility_scan(dg, dh, false, 3);
    CHECK(audit.checked == dg.square_count() * dg.square_count() * dg.square_count() * dg.square_count());
    CHECK(audit.violation_count == fast.violation_count);
    CHECK(threaded.violation_count == fast.violation_count);
    REQUIRE(threaded.violations.size() == fast.violations.size());
    for (std::size_t k = 0; k < fast.violations.size(); ++k) CHECK(ids(dg, threaded.violations[k]) == ids(dg, fast.violations[k]));
  }
}

TEST_CASE("compatibility verdict equals structural product equality on random double groupoids") {
  std::mt19937_64 rng(20240611);
  int equal_cases = 0;
  for (int i = 0; i < 50; ++i) {
    std::string family;
    auto dg = testsupport::random_valid_double(rng, &family);
    CAPTURE(family);
    auto rep = compatibility_scan(dg, DoubleHaarSystem::counting(dg));
    CHECK(rep.verdict_products_equal == rep.structural_products_equal);
    equal_cases += rep.structural_products_equal;
  }
  CHECK(equal_cases > 0);
}

TEST_CASE("non-counting weights break compatibility even when the products agree") {
  auto dg = diagonal_double(cyclic_group(2));
  DoubleHaarSystem dh = DoubleHaarSystem::counting(dg);
  dh.mu_k = uniform_haar(dg.side_k(), Rational(2));
  auto rep = compatibility_scan(dg, dh);
  CHECK(rep.structural_products_equal);
  CHECK_FALSE(rep.counting_measures);
  CHECK_FALSE(rep.verdict_products_equal);
}

TEST_CASE("algebra element JSON") {
  auto g = cyclic_group(3);
  auto e = QComplex(Rational(1, 2), Rational(-3)) * delta(g, "1") + delta(g, "2");
  auto j = io::to_json(e);
  CHECK(j.dump() == R"({"1":["1/2",-3],"2":[1,0]})");
  CHECK(io::exact_element_from_json(g, j) == e);
  CHECK_THROWS_AS(io::exact_element_from_json(g, io::parse_json(R"({"1":[0.5,0]})")), ParseError);
  CHECK_THROWS_AS(io::exact_element_from_json(g, io::parse_json(R"({"7":[1,0]})")), UnknownIdError);
  auto f = io::float_element_from_json(g, io::parse_json(R"({"1":[0.5,0.25]})"));
  CHECK(f[g.arrow("1")] == std::complex<double>(0.5, 0.25));
}
