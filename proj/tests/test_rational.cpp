#include "opthy/distribution.hpp"
#include "opthy/errors.hpp"
#include "opthy/rational.hpp"

#include <gtest/gtest.h>

#include <boost/integer/common_factor.hpp>

#include <numeric>
#include <random>

using namespace opthy;

TEST(Rational, NormalizesSignAndGcd) {
  const auto r = rat(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(rat(4, 2).str(), "2");
  EXPECT_EQ(Rational(0).str(), "0");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(rat(1, 0), ValidationError);
  EXPECT_THROW(Rational(1) / Rational(0), ValidationError);
  EXPECT_THROW(Rational::parse("1/0"), ValidationError);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"3/8", "-1/2", "1", "0", "123456789012345678901234567891/2"}) {
    EXPECT_EQ(Rational::parse(s).str(), s);
  }
  EXPECT_EQ(Rational::parse("6/16"), rat(3, 8));
  EXPECT_THROW(Rational::parse("x/2"), ValidationError);
  EXPECT_THROW(Rational::parse(""), ValidationError);
  EXPECT_THROW(Rational::parse("1/2/3"), ValidationError);
}

TEST(Rational, ArithmeticAndOrder) {
  EXPECT_EQ(rat(1, 3) + rat(1, 6), rat(1, 2));
  EXPECT_EQ(rat(1, 3) - rat(1, 2), rat(-1, 6));
  EXPECT_EQ(rat(2, 3) * rat(9, 4), rat(3, 2));
  EXPECT_EQ(rat(2, 3) / rat(4, 9), rat(3, 2));
  EXPECT_LT(rat(1, 3), rat(1, 2));
  EXPECT_GT(rat(-1, 3), rat(-1, 2));
  EXPECT_EQ(abs(rat(-5, 7)), rat(5, 7));
  EXPECT_DOUBLE_EQ(rat(3, 8).to_double(), 0.375);
}

TEST(Rational, NoOverflowOnLargeProducts) {
  Rational r(1);
  for (int i = 0; i < 40; ++i) r *= rat(1000003, 999983);
  for (int i = 0; i < 40; ++i) r /= rat(1000003, 999983);
  EXPECT_EQ(r, Rational(1));
}

TEST(RationalProperty, AlwaysReduced) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 100000);
  for (int i = 0; i < 1000; ++i) {
    const auto n = num(rng), d = den(rng) * (i % 2 ? -1 : 1);
    const auto r = rat(n, d);
    EXPECT_GT(r.den(), 0);
    const auto g = boost::integer::gcd(boost::multiprecision::abs(r.num()), r.den());
    EXPECT_EQ(g, 1);
    // Value is preserved: n * den == num * d.
    EXPECT_EQ(Rational::Integer(n) * r.den(), r.num() * Rational::Integer(d));
  }
}

TEST(RationalProperty, FieldLaws) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> v(-50, 50), d(1, 50);
  for (int i = 0; i < 300; ++i) {
    const auto a = rat(v(rng), d(rng)), b = rat(v(rng), d(rng)), c = rat(v(rng), d(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
  }
}

TEST(Distribution, Validation) {
  EXPECT_NO_THROW(dist({{"a", rat(1, 2)}, {"b", rat(1, 2)}}));
  try {
    dist({{"a", rat(3, 2)}, {"b", rat(-1, 2)}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
  EXPECT_THROW(dist({{"a", rat(1, 2)}, {"a", rat(1, 2)}}), ValidationError);
  EXPECT_THROW(dist({{"a", rat(1, 2)}, {"b", rat(1, 3)}}), ValidationError);
  EXPECT_THROW(dist({}), ValidationError);
}

TEST(Distribution, Accessors) {
  const auto d = dist({{"x", rat(1, 4)}, {"y", rat(3, 4)}});
  EXPECT_EQ(d.mass("y"), rat(3, 4));
  EXPECT_THROW(d.mass("z"), LookupError);
  EXPECT_EQ(d.index_of("y"), 1u);
  EXPECT_FALSE(d.is_point_mass());
  const std::vector<std::string> s{"p", "q", "r"};
  EXPECT_TRUE(Distribution::point(s, 2).is_point_mass());
  EXPECT_EQ(Distribution::uniform(s).mass("q"), rat(1, 3));
}

TEST(DistributionProperty, NormalizedWeightsAlwaysValid) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> w(0, 1000);
  std::uniform_int_distribution<int> k(1, 9);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::int64_t> ws(static_cast<std::size_t>(k(rng)));
    for (auto& x : ws) x = w(rng);
    ws.back() += 1;
    const auto total = std::accumulate(ws.begin(), ws.end(), std::int64_t{0});
    std::vector<Distribution::Entry> e;
    for (std::size_t j = 0; j < ws.size(); ++j) e.emplace_back("o" + std::to_string(j), rat(ws[j], total));
    const Distribution d(e);
    Rational sum;
    for (const auto& m : d.masses()) sum += m;
    EXPECT_EQ(sum, Rational(1));
    // Perturbing one mass breaks normalization.
    e.front().second += rat(1, total + 1);
    EXPECT_THROW(Distribution{e}, ValidationError);
  }
}
