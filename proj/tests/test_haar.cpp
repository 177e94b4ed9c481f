#include <random>
#include <set>

#include "doctest.h"
#include "dgpd/error.hpp"
#include "dgpd/haar.hpp"
#include "dgpd/structure_io.hpp"
#include "support.hpp"

using namespace dgpd;

namespace {

// weight(h) = f(source(h)) is left invariant on any groupoid.
HaarSystem source_haar(const Groupoid& g, const std::vector<Rational>& f) {
  HaarSystem h;
  for (std::uint32_t i = 0; i < g.arrow_count(); ++i) h.weights.push_back(f[g.source(Arrow{i}).index]);
  return h;
}

Rational random_weight(std::mt19937_64& rng) { return Rational(1 + rng() % 5, 1 + rng() % 4); }

std::vector<Rational> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> f;
  for (std::size_t i = 0; i < n; ++i) f.push_back(random_weight(rng));
  return f;
}

}  // namespace

TEST_CASE("counting Haar systems") {
  auto z3 = counting_haar(cyclic_group(3));
  CHECK(z3.weights == std::vector<Rational>(3, Rational(1)));
  auto pair = pair_groupoid({"1", "2", "3"});
  CHECK(counting_haar(pair).weights.size() == 9);
  for (const auto& g : {cyclic_group(3), pair, testsupport::q8_quat()}) {
    CHECK(validate_haar(g, counting_haar(g)).ok());
    CHECK(validate_haar(g, uniform_haar(g, Rational(3, 7))).ok());
  }
}

TEST_CASE("non-invariant weight on the pair groupoid") {
  auto pair = pair_groupoid({"1", "2"});
  auto h = counting_haar(pair);
  h.weights[pair.arrow("(1,1)").index] = 2;
  auto rep = validate_haar(pair, h);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& w : rep.axiom("left-invariance")->witnesses)
    found |= w.ids == std::vector<std::string>{"(2,1)", "(1,1)"};
  CHECK(found);
}

TEST_CASE("weights must be total and positive") {
  auto g = cyclic_group(3);
  CHECK_THROWS_AS(HaarSystem::from_map(g, {{"0", Rational(1)}, {"1", Rational(1)}}), PreconditionError);
  CHECK_THROWS_AS(HaarSystem::from_map(g, {{"0", 1}, {"1", 1}, {"2", 1}, {"9", 1}}), UnknownIdError);
  auto h = counting_haar(g);
  h.weights[0] = 0;
  CHECK_FALSE(validate_haar(g, h).axiom("positive-weights")->passed());
  CHECK_FALSE(validate_haar(g, HaarSystem{{1, 1}}).ok());
}

TEST_CASE("source-dependent weights are Haar systems") {
  std::mt19937_64 rng(3);
  auto g = pair_groupoid({"a", "b", "c"});
  CHECK(validate_haar(g, source_haar(g, random_weights(3, rng))).ok());
}

TEST_CASE("double Haar systems") {
  auto dg = central_action_double(cyclic_group(4), {"0", "2"});
  CHECK(validate_double_haar(dg, DoubleHaarSystem::counting(dg)).ok());

  auto fg = from_group(cyclic_group(3));
  CHECK(validate_double_haar(fg, DoubleHaarSystem::counting(fg)).ok());

  auto bumped = DoubleHaarSystem::counting(dg);
  bumped.mu_d[dg.square("(2,1)").index] = 2;
  auto rep = validate_double_haar(dg, bumped);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.axiom("double-invariance-vertical")->passed());

  auto short_d = DoubleHaarSystem::counting(dg);
  short_d.mu_d.pop_back();
  CHECK_FALSE(validate_double_haar(dg, short_d).ok());
  CHECK_THROWS_AS(induce_haar(dg, short_d), PreconditionError);
}

TEST_CASE("induced Haar systems on the fixtures") {
  SUBCASE("from_group(Z/3)") {
    auto fg = from_group(cyclic_group(3));
    auto ind = induce_haar(fg, DoubleHaarSystem::counting(fg));
    CHECK(ind.ok());
    CHECK(ind.circ == counting_haar(fg.vertical()));
    CHECK(ind.bullet == counting_haar(fg.horizontal()));
    // vertical fibres are singletons
    for (std::uint32_t x = 0; x < fg.vertical().object_count(); ++x)
      CHECK(fg.vertical().target_fiber(Obj{x}).size() == 1);
  }
  SUBCASE("central_action_double(Z/2 in Z/4)") {
    auto dg = central_action_double(cyclic_group(4), {"0", "2"});
    auto ind = induce_haar(dg, DoubleHaarSystem::counting(dg));
    CHECK(ind.ok());
    CHECK(is_counting(ind.circ));
    CHECK(is_counting(ind.bullet));
  }
  SUBCASE("strict 2-group Z/4 acting on Z/2") {
    auto k = cyclic_group(4);
    auto g = cyclic_group(2);
    std::vector<std::size_t> phi(4);
    for (std::size_t i = 0; i < 4; ++i) phi[k.arrow(std::to_string(i)).index] = g.arrow(std::to_string(i % 2)).index;
    auto dg = action_double(k, g, phi);
    CHECK(validate_double(dg).ok());
    DoubleHaarSystem dh = DoubleHaarSystem::counting(dg);
    dh.mu_k = uniform_haar(dg.side_k(), Rational(1, 2));
    auto ind = induce_haar(dg, dh);
    CHECK(ind.ok());
    // integrating over t-fibres then against μ^K: each square carries 1·(1/2)
    CHECK(ind.bullet == uniform_haar(dg.horizontal(), Rational(1, 2)));
    CHECK(ind.circ == counting_haar(dg.vertical()));
  }
}

TEST_CASE("induced weights are forced by the triangles") {
  std::mt19937_64 rng(11);
  int non_uniform_rounds = 0;
  for (int round = 0; round < 10; ++round) {
    auto dg = coarse_double({"a", "b"});
    DoubleHaarSystem dh = DoubleHaarSystem::counting(dg);
    dh.mu_k = source_haar(dg.side_k(), random_weights(2, rng));
    dh.mu_h = source_haar(dg.side_h(), random_weights(2, rng));
    dh.mu_d = std::vector<Rational>(dg.square_count(), random_weight(rng));
    REQUIRE(validate_double_haar(dg, dh).ok());
    auto ind = induce_haar(dg, dh);
    CHECK(ind.ok());

    // The circ triangle evaluated on δ_b at k = t^V(b): sum over corners (k,h)
    // of [t^D(b) = (k,h)]·μ^D(b)·μ^H(h); nothing else can satisfy it.
    for (std::uint32_t b = 0; b < dg.square_count(); ++b) {
      Rational want = 0, want_bullet = 0;
      for (const auto& c : dg.corners()) {
        if (c == dg.double_target(Arrow{b})) {
          want += dh.mu_d[b] * dh.mu_h.weight(c.h);
          want_bullet += dh.mu_d[b] * dh.mu_k.weight(c.k);
        }
      }
      CHECK(ind.circ.weights[b] == want);
      CHECK(ind.bullet.weights[b] == want_bullet);
    }
    // Non-counting side data makes μ° vary inside a single target fibre.
    bool varies = false;
    for (std::uint32_t k = 0; k < dg.vertical().object_count(); ++k) {
      std::set<Rational> seen;
      for (Arrow b : dg.vertical().target_fiber(Obj{k})) seen.insert(ind.circ.weight(b));
      varies |= seen.size() > 1;
    }
    non_uniform_rounds += varies;
  }
  CHECK(non_uniform_rounds > 0);
}

TEST_CASE("scaling μ^D scales both induced systems") {
  auto dg = central_action_double(testsupport::q8_quat(), {"1", "-1"});
  auto base = induce_haar(dg, DoubleHaarSystem::counting(dg));
  auto dh = DoubleHaarSystem::counting(dg);
  for (auto& w : dh.mu_d) w = Rational(5, 3);
  auto scaled = induce_haar(dg, dh);
  for (std::size_t i = 0; i < dg.square_count(); ++i) {
    CHECK(scaled.circ.weights[i] == Rational(5, 3) * base.circ.weights[i]);
    CHECK(scaled.bullet.weights[i] == Rational(5, 3) * base.bullet.weights[i]);
  }
}

TEST_CASE("diagram commutes on random double groupoids with uniform weights") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto dg = testsupport::random_valid_double(rng);
    DoubleHaarSystem dh{std::vector<Rational>(dg.square_count(), random_weight(rng)),
                        uniform_haar(dg.side_k(), random_weight(rng)), uniform_haar(dg.side_h(), random_weight(rng))};
    REQUIRE(validate_double_haar(dg, dh).ok());
    auto ind = induce_haar(dg, dh);
    CHECK(ind.ok());
  }
}

TEST_CASE("Fubini square on corner functions") {
  auto dg = coarse_double({"a", "b", "c"});
  std::mt19937_64 rng(5);
  DoubleHaarSystem dh = DoubleHaarSystem::counting(dg);
  dh.mu_k = source_haar(dg.side_k(), random_weights(3, rng));
  dh.mu_h = source_haar(dg.side_h(), random_weights(3, rng));
  fiber::Function u(dg.side_k().arrow_count() * dg.side_h().arrow_count(), Rational(0));
  for (const auto& c : dg.corners()) u[fiber::corner_index(dg, c)] = Rational(static_cast<std::int64_t>(rng() % 9) - 4, 1 + rng() % 3);
  CHECK(fiber::integrate(dg.side_k(), dh.mu_k, fiber::integrate_bar_h(dg, dh, u)) ==
        fiber::integrate(dg.side_h(), dh.mu_h, fiber::integrate_bar_k(dg, dh, u)));
}

TEST_CASE("double Haar JSON round trip") {
  auto dg = central_action_double(cyclic_group(4), {"0", "2"});
  auto dh = DoubleHaarSystem::counting(dg);
  dh.mu_k = uniform_haar(dg.side_k(), Rational(1, 4));
  auto j = io::to_json(dg, dh);
  CHECK(j["muK"]["0"] == "1/4");
  auto back = io::double_haar_from_json(dg, io::parse_json(j.dump()));
  CHECK(back.mu_k == dh.mu_k);
  CHECK(back.mu_d == dh.mu_d);
  CHECK_THROWS_AS(io::double_haar_from_json(dg, io::parse_json(R"({"muD":{}, "muK":{}, "muH":{}})")),
                  PreconditionError);
}
