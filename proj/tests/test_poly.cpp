#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipcert/expr.hpp"
#include "flipcert/poly.hpp"

using namespace flipcert;

namespace {
std::vector<std::string> n5 = {"x1", "x2", "y1", "y2", "z"};

uint64_t rng_state = 0x9e3779b97f4a7c15ull;
uint64_t next_u64() {
  rng_state ^= rng_state << 13;
  rng_state ^= rng_state >> 7;
  rng_state ^= rng_state << 17;
  return rng_state;
}
}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a = rat(1, 3), b = rat(1, 6);
  CHECK(a + b == rat(1, 2));
  CHECK(rat(2, -4) == rat(-1, 2));
  CHECK(rat_str(rat(-6, 4)) == "-3/2");
  CHECK(rat_parse("7/21") == rat(1, 3));
  CHECK_THROWS(rat(1, 0));
}

TEST_CASE("monomial weights") {
  // weights (1,1,-1,-1,0), monomial x1*y1^2
  Monomial m = Monomial::from_exponents({1, 0, 2, 0, 0});
  CHECK(weight_of(m, {1, 1, -1, -1, 0}) == -1);
  CHECK(m.total_degree() == 3);
  CHECK(Monomial::var(5, 4, 3).is_pure_power());
  CHECK(Monomial::var(5, 4, 3).sole_var() == 4);
  CHECK_FALSE(m.is_pure_power());
}

TEST_CASE("quasi-homogeneity detection with witness pair") {
  std::vector<long long> w = {1, 1, -1, -1, 0};
  Polynomial f = parse_polynomial("x2*y2 + z^2 + x1*y1", n5);
  auto h = quasi_homogeneous_weight(f, w);
  CHECK(h.homogeneous);
  CHECK(h.weight == 0);

  Polynomial g = parse_polynomial("x2*y2 + x1*z", n5);
  auto bad = quasi_homogeneous_weight(g, w);
  CHECK_FALSE(bad.homogeneous);
  CHECK(weight_of(bad.witness_a, w) != weight_of(bad.witness_b, w));
}

TEST_CASE("restrict and dehomogenize") {
  Polynomial f = parse_polynomial("x2*y2 + z^3 + x1^2*y1", n5);
  // kill the y-block
  Polynomial r = f.restrict_zero({2, 3});
  CHECK(r == parse_polynomial("z^3", n5));

  // chart at x1: set x1 = 1, variable drops, four variables remain
  Polynomial c = f.dehomogenize(0);
  CHECK(c.nvars() == 4);
  std::vector<std::string> rest = {"x2", "y1", "y2", "z"};
  CHECK(c == parse_polynomial("x2*y2 + z^3 + y1", rest));
}

TEST_CASE("derivative and jets") {
  Polynomial f = parse_polynomial("x1^2*y1 + 3*z^4", n5);
  CHECK(f.derivative(0) == parse_polynomial("2*x1*y1", n5));
  CHECK(f.derivative(4) == parse_polynomial("12*z^3", n5));
  CHECK(f.jet(3) == parse_polynomial("x1^2*y1", n5));
  CHECK(f.truncate(3) == parse_polynomial("x1^2*y1", n5));
}

TEST_CASE("polynomial substitution is exact") {
  Polynomial f = parse_polynomial("x1^2 + x1*y1", n5);
  Polynomial repl = parse_polynomial("y1 - z^2", n5);
  Polynomial g = f.substitute(0, repl);
  CHECK(g == parse_polynomial("2*y1^2 - 3*y1*z^2 + z^4", n5));
}

TEST_CASE("series substitution respects truncation windows") {
  // f = u + u^2 with u := v - v^2 known through degree 4:
  // f(u) = (v - v^2) + (v - v^2)^2 = v - 2*v^3 + v^4
  std::vector<std::string> v1 = {"v"};
  TruncatedSeries f(parse_polynomial("v + v^2", v1), 4);
  TruncatedSeries u(parse_polynomial("v - v^2", v1), 4);
  TruncatedSeries g = f.substitute(0, u);
  CHECK(g.bound() == 4);
  CHECK(g.poly() == parse_polynomial("v - 2*v^3 + v^4", v1));

  // substituting a series with a constant term is a precondition violation
  TruncatedSeries bad(parse_polynomial("1 + v", v1), 4);
  CHECK_THROWS_AS(f.substitute(0, bad), std::domain_error);
}

TEST_CASE("series product tightens the bound") {
  std::vector<std::string> v1 = {"v"};
  TruncatedSeries a(parse_polynomial("v", v1), 6);
  TruncatedSeries b(parse_polynomial("v^2", v1), 3);
  TruncatedSeries c = a * b;
  CHECK(c.bound() == 3);
  CHECK(c.poly() == parse_polynomial("v^3", v1));
  CHECK_THROWS(c.rebound(10));
}

TEST_CASE("weights add under monomial products") {
  std::vector<long long> w = {3, 1, -2, -1, 0};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> ea(5), eb(5);
    for (int i = 0; i < 5; ++i) {
      ea[i] = static_cast<int>(next_u64() % 5);
      eb[i] = static_cast<int>(next_u64() % 5);
    }
    Monomial a = Monomial::from_exponents(ea), b = Monomial::from_exponents(eb);
    CHECK(weight_of(a * b, w) == weight_of(a, w) + weight_of(b, w));
  }
}

TEST_CASE("operations return fresh values") {
  Polynomial f = parse_polynomial("x1*y1", n5);
  Polynomial g = f + f;
  CHECK(f == parse_polynomial("x1*y1", n5));
  CHECK(g == parse_polynomial("2*x1*y1", n5));
  Polynomial h = f.scale(rat(0));
  CHECK(h.is_zero());
  CHECK(h.nvars() == 5);
}

TEST_CASE("map_vars guards dropped variables") {
  Polynomial f = parse_polynomial("x1*z", n5);
  CHECK_THROWS(f.map_vars(4, {0, 1, 2, 3, -1}));
  Polynomial ok = parse_polynomial("x1*x2", n5);
  Polynomial g = ok.map_vars(2, {0, 1, -1, -1, -1});
  CHECK(g.nvars() == 2);
  CHECK(g.total_degree() == 2);
}
