#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cesaro/generators.hpp"
#include "cesaro/space.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

std::vector<SpaceSpec> admitted_spaces() {
  return {SpaceSpec::lp(1.0),
          SpaceSpec::lp(1.5),
          SpaceSpec::lp(2.0),
          SpaceSpec::c0(),
          SpaceSpec::orlicz(OrliczFunction::power(1.5)),
          SpaceSpec::lorentz(ConcaveWeight::sqrt()),
          SpaceSpec::marcinkiewicz(ConcaveWeight::log1p())};
}

}  // namespace

TEST_CASE("rearrangement matches the insertion-sort oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const Seq x = random_seq(rng, 1 + trial % 23);
    const auto got = rearrange(x).values;
    const auto want = oracle::rearrange(x.values());
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-15));
  }
  // interior zeros survive as a zero tail
  const Seq x(std::vector<cplx>{{0, 0}, {2, 0}, {0, 0}, {1, 0}});
  const auto r = rearrange(x).values;
  REQUIRE(r.size() == 4);
  CHECK(r[0] == 2.0);
  CHECK(r[1] == 1.0);
  CHECK(r[2] == 0.0);
  CHECK(r[3] == 0.0);
}

TEST_CASE("lp norms match the long double oracle") {
  Rng rng(102);
  const double exps[] = {1.0, 1.5, 2.0, 3.0,
                         std::numeric_limits<double>::infinity()};
  for (int trial = 0; trial < 30; ++trial) {
    const Seq x = random_seq(rng, 1 + trial % 17);
    for (double p : exps) {
      CAPTURE(p);
      CHECK(lp_norm(p, x.span()) ==
            doctest::Approx(oracle::lp(x.values(), p)).epsilon(1e-13));
    }
  }
  CHECK(lp_norm(1.0, Seq(std::vector<cplx>{{1, 0}, {-1, 0}, {1, 0}}).span()) ==
        doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("luxemburg gauge of power functions reproduces lp") {
  Rng rng(103);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto phi = OrliczFunction::power(p);
    for (int trial = 0; trial < 20; ++trial) {
      const Seq x = random_seq(rng, 1 + trial % 13);
      const double lux = luxemburg_norm(*phi, x);
      CAPTURE(p);
      CHECK(lux == doctest::Approx(lp_norm(p, x.span())).epsilon(1e-12));
      CHECK(lux == doctest::Approx(oracle::luxemburg(x.values(), *phi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lorentz norm: frozen value and oracle agreement") {
  const auto sqrt_w = ConcaveWeight::sqrt();
  const SpaceSpec spec = SpaceSpec::lorentz(sqrt_w);
  const Seq ones2(std::vector<cplx>{{1, 0}, {1, 0}});
  // 1*psi(1) + 1*(psi(2)-psi(1)) = sqrt(2)
  CHECK(space_norm(spec, ones2) == doctest::Approx(1.4142135623730951).epsilon(1e-15));

  Rng rng(104);
  for (int trial = 0; trial < 25; ++trial) {
    const Seq x = random_seq(rng, 1 + trial % 19);
    CHECK(space_norm(spec, x) ==
          doctest::Approx(oracle::lorentz(x.values(), *sqrt_w)).epsilon(1e-13));
  }
}

TEST_CASE("marcinkiewicz norm matches the prefix-sup oracle") {
  const auto log_w = ConcaveWeight::log1p();
  const SpaceSpec spec = SpaceSpec::marcinkiewicz(log_w);
  Rng rng(105);
  for (int trial = 0; trial < 25; ++trial) {
    const Seq x = random_seq(rng, 1 + trial % 19);
    CHECK(space_norm(spec, x) ==
          doctest::Approx(oracle::marcinkiewicz(x.values(), *log_w)).epsilon(1e-13));
  }
  // the canonical witness has norm exactly prefix(n)/psi(n) = 1 at every n
  const Seq w = marcinkiewicz_witness(*log_w, 64);
  CHECK(space_norm(spec, w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rescaled embedding: sup norm <= normalized space norm <= l1 norm") {
  Rng rng(106);
  const double inf = std::numeric_limits<double>::infinity();
  for (const SpaceSpec& spec : admitted_spaces()) {
    CAPTURE(spec.label());
    const double u = unit_norm(spec);
    REQUIRE(u > 0.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Seq x = random_seq(rng, 1 + trial % 11);
      const double mid = space_norm(spec, x) / u;
      CHECK(lp_norm(inf, x.span()) <= mid * (1 + 1e-12) + 1e-15);
      CHECK(mid <= lp_norm(1.0, x.span()) * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("norm axioms: triangle, homogeneity, zero") {
  Rng rng(107);
  for (const SpaceSpec& spec : admitted_spaces()) {
    CAPTURE(spec.label());
    CHECK(space_norm(spec, Seq()) == 0.0);
    for (int trial = 0; trial < 15; ++trial) {
      const Seq x = random_seq(rng, 1 + trial % 9);
      const Seq y = random_seq(rng, 1 + (trial + 4) % 9);
      const double nx = space_norm(spec, x), ny = space_norm(spec, y);
      CHECK(space_norm(spec, add(x, y)) <= (nx + ny) * (1 + 1e-12) + 1e-15);
      const cplx a{-1.25, 0.75};
      CHECK(space_norm(spec, scale(x, a)) ==
            doctest::Approx(std::abs(a) * nx).epsilon(1e-12));
    }
  }
}

TEST_CASE("norms are rearrangement invariant") {
  Rng rng(108);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (const SpaceSpec& spec : admitted_spaces()) {
    CAPTURE(spec.label());
    for (int trial = 0; trial < 12; ++trial) {
      const Seq x = random_seq(rng, 2 + trial % 9);
      auto shuffled = x.values();
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (auto& z : shuffled) z *= std::polar(1.0, angle(rng));
      CHECK(space_norm(spec, Seq(shuffled)) ==
            doctest::Approx(space_norm(spec, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("norms are monotone for the prefix order") {
  Rng rng(109);
  for (const SpaceSpec& spec : admitted_spaces()) {
    CAPTURE(spec.label());
    for (int trial = 0; trial < 15; ++trial) {
      const auto [x, y] = random_hlp_pair(rng, 2 + trial % 14);
      REQUIRE(hlp_leq(x, y));
      CHECK(space_norm(spec, x) <= space_norm(spec, y) * (1 + 1e-11) + 1e-14);
    }
  }
}

TEST_CASE("classification table") {
  struct Row {
    const char* label;
    bool separable, equals_l1, met;
  };
  const Row rows[] = {
      {"lp:1", true, true, false},
      {"lp:1.5", true, false, true},
      {"lp:2", true, false, true},
      {"c0", true, false, true},
      {"orlicz:power:1.5", true, false, true},
      {"orlicz:linear", true, true, false},
      {"orlicz:exp-decay", false, false, false},
      {"lorentz:sqrt", true, false, true},
      {"lorentz:log1p", true, false, true},
      {"lorentz:linear", true, true, false},
      {"marcinkiewicz:log1p", false, false, false},
      {"marcinkiewicz:sqrt", false, false, false},
      {"marcinkiewicz:exp-decay", true, true, false},
  };
  for (const Row& row : rows) {
    CAPTURE(row.label);
    const Classification cls = classify(parse_space(row.label));
    CHECK(cls.separable == row.separable);
    CHECK(cls.equals_l1 == row.equals_l1);
    CHECK(cls.met == row.met);
    CHECK(cls.iet);
    CHECK(!cls.evidence.empty());
  }
}

TEST_CASE("classification rejects spaces that escape c0") {
  CHECK_THROWS_AS(classify(SpaceSpec::lp(std::numeric_limits<double>::infinity())),
                  ValidationError);
  // bounded lorentz weight admits every bounded sequence
  CHECK_THROWS_AS(classify(parse_space("lorentz:exp-decay")), ValidationError);
  // psi(t)/t does not vanish: the constant sequence has finite norm
  CHECK_THROWS_AS(classify(parse_space("marcinkiewicz:linear")), ValidationError);
}

TEST_CASE("space parsing errors") {
  CHECK_THROWS_AS(parse_space("lp:0.5"), ValidationError);
  CHECK_THROWS_AS(parse_space("lp:abc"), ValidationError);
  CHECK_THROWS_AS(parse_space("banach:mystery"), ValidationError);
  CHECK_THROWS_AS(parse_space(""), ValidationError);
  CHECK(parse_space("lp:inf").kind == SpaceKind::Lp);
  CHECK(parse_space("c0").kind == SpaceKind::C0);
  CHECK(parse_space("lorentz:sqrt").label() == "lorentz:sqrt");
}

TEST_CASE("hlp order basics") {
  const Seq x(std::vector<cplx>{{1, 0}, {1, 0}});
  const Seq y(std::vector<cplx>{{2, 0}});
  // prefix sums: (1,2) vs (2,2)
  CHECK(hlp_leq(x, y));
  CHECK_FALSE(hlp_leq(y, x));
  CHECK(hlp_excess(rearrange(y), rearrange(x)) == doctest::Approx(1.0));
  CHECK(hlp_leq(x, x));
}
