#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "idepca/error.hpp"
#include "idepca/expr.hpp"
#include "idepca/kernels.hpp"

using idepca::Errc;
using idepca::Error;
using idepca::parse;
using idepca::ParseError;

namespace {

std::size_t error_offset(const char* src) {
  try {
    parse(src, "t");
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no error for \"" << src << "\"";
  return 0;
}

TEST(Expr, ConstantThird) {
  const auto e = parse("-1/3", "t");
  EXPECT_TRUE(e.is_constant());
  EXPECT_DOUBLE_EQ(e(0.0), -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(e(17.0), -1.0 / 3.0);
}

TEST(Expr, Evaluation) {
  EXPECT_EQ(parse("exp(-t)", "t")(0.0), 1.0);
  EXPECT_EQ(parse("1/t", "t")(2.0), 0.5);
  EXPECT_EQ(parse("t^2", "t")(3.0), 9.0);
  EXPECT_NEAR(parse("exp(1)", "t")(0.0), 2.718281828459045, 1e-15);
  EXPECT_FALSE(std::isfinite(parse("1/t", "t")(0.0)));
  EXPECT_TRUE(std::isnan(parse("ln(t)", "t")(-1.0)));
  EXPECT_TRUE(std::isnan(parse("sqrt(t)", "t")(-1.0)));
  EXPECT_NEAR(parse("sin(t)^2 + cos(t)^2", "t")(0.7), 1.0, 1e-15);
  EXPECT_EQ(parse("abs(t - 5)", "t")(2.0), 3.0);
  EXPECT_EQ(parse("1.5e2 + .5", "t")(0.0), 150.5);
}

TEST(Expr, Precedence) {
  EXPECT_EQ(parse("2+3*4", "t")(0.0), 14.0);
  EXPECT_EQ(parse("2^3^2", "t")(0.0), 512.0);
  EXPECT_EQ(parse("-t^2", "t")(3.0), -9.0);
  EXPECT_EQ(parse("2^-1", "t")(0.0), 0.5);
  EXPECT_EQ(parse("8/4/2", "t")(0.0), 1.0);
  EXPECT_EQ(parse("8-4-2", "t")(0.0), 2.0);
  EXPECT_EQ(parse("--t", "t")(3.0), 3.0);
}

TEST(Expr, VariableName) {
  const auto f = parse("1 + 1/n", "n");
  EXPECT_EQ(f.variable(), "n");
  EXPECT_EQ(f(4.0), 1.25);
  EXPECT_EQ(error_offset("1 + n"), 4u);
  EXPECT_THROW(parse("t", "2x"), Error);
}

TEST(Expr, ErrorOffsets) {
  EXPECT_EQ(error_offset("2*+3"), 2u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("   "), 3u);
  EXPECT_EQ(error_offset("(1+2"), 4u);
  EXPECT_EQ(error_offset("1+2)"), 3u);
  EXPECT_EQ(error_offset("x+1"), 0u);
  EXPECT_EQ(error_offset("t t"), 2u);
  EXPECT_EQ(error_offset("foo(t)"), 0u);
  EXPECT_EQ(error_offset("2*"), 2u);
  EXPECT_EQ(error_offset("1e999"), 0u);
}

TEST(Expr, ErrorOffsetsWithinInput) {
  for (const char* src : {"", "(", ")", "1 +", "sin(", "t)", "1..2", "exp t", "sin()"}) {
    try {
      parse(src, "t");
      ADD_FAILURE() << src;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), std::string_view(src).size()) << src;
      EXPECT_EQ(e.code(), Errc::Parse);
    }
  }
}

TEST(Expr, RoundTrip) {
  for (const char* src : {"-1/3", "exp(-t)", "1/t", "2^3^2", "-t^2", "(t/60)^2*0.25 - 3", "abs(sin(t)) + sqrt(t)",
                          "ln(1 + t) / (t - 2)", "1e-300*t", "0.1 + 0.2", "-(1.9204970306450722)",
                          "cos(--t)"}) {
    const auto e = parse(src, "t");
    const auto again = parse(e.to_string(), "t");
    EXPECT_TRUE(e == again) << src << " -> " << e.to_string();
    EXPECT_EQ(again.to_string(), e.to_string());
  }
}

TEST(Expr, StructuralEquality) {
  EXPECT_TRUE(parse("t+1", "t") == parse("(t)+(1)", "t"));
  EXPECT_FALSE(parse("t+1", "t") == parse("1+t", "t"));
  EXPECT_FALSE(parse("t", "t") == parse("n", "n"));
}

TEST(Expr, BatchMatchesScalarBitForBit) {
  const auto e = parse("exp(-t/3)*sin(t) + t^2/(1+abs(t)) - sqrt(t*t+1)", "t");
  std::vector<double> xs;
  for (int i = 0; i < 203; ++i) xs.push_back(-5.0 + 0.05 * i);
  std::vector<double> out(xs.size());
  for (auto backend : {idepca::kernels::Backend::Scalar, idepca::kernels::Backend::Avx2}) {
    if (!idepca::kernels::select(backend)) continue;
    e.eval_batch(xs, out);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(out[i], e(xs[i])) << i;
  }
}

TEST(Expr, Deterministic) {
  const auto e = parse("exp(sin(t))^1.3", "t");
  EXPECT_EQ(e(0.123), e(0.123));
}

}  // namespace
