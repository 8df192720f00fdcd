#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "idepca/kernels.hpp"

namespace k = idepca::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = k::avx2();
    if (!simd_) GTEST_SKIP() << "no AVX2 on this machine";
  }
  const k::KernelTable& ref_ = k::scalar();
  const k::KernelTable* simd_ = nullptr;
};

TEST_F(KernelEquivalence, BinaryOpsBitIdentical) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 63u, 64u, 1001u}) {
    const auto x = random_values(n, rng);
    const auto y = random_values(n, rng);
    using Fn = void (*)(const double*, const double*, double*, std::size_t);
    const std::pair<Fn, Fn> ops[] = {
        {ref_.add, simd_->add}, {ref_.sub, simd_->sub}, {ref_.mul, simd_->mul}, {ref_.div, simd_->div}};
    for (auto [r, s] : ops) {
      std::vector<double> a(n), b(n);
      r(x.data(), y.data(), a.data(), n);
      s(x.data(), y.data(), b.data(), n);
      EXPECT_TRUE(same_bits(a, b)) << "n=" << n;
    }
  }
}

TEST_F(KernelEquivalence, AliasedOutput) {
  std::mt19937_64 rng(8);
  auto x = random_values(37, rng);
  const auto y = random_values(37, rng);
  auto x2 = x;
  ref_.mul(x.data(), y.data(), x.data(), x.size());
  simd_->mul(x2.data(), y.data(), x2.data(), x2.size());
  EXPECT_TRUE(same_bits(x, x2));
}

TEST_F(KernelEquivalence, UnaryOpsBitIdentical) {
  std::mt19937_64 rng(9);
  for (std::size_t n : {1u, 2u, 7u, 16u, 130u}) {
    auto x = random_values(n, rng);
    using Fn = void (*)(const double*, double*, std::size_t);
    for (auto [r, s] : {std::pair<Fn, Fn>{ref_.neg, simd_->neg}, {ref_.abs, simd_->abs}}) {
      std::vector<double> a(n), b(n);
      r(x.data(), a.data(), n);
      s(x.data(), b.data(), n);
      EXPECT_TRUE(same_bits(a, b));
    }
    for (auto& v : x) v = std::fabs(v);
    std::vector<double> a(n), b(n);
    ref_.sqrt(x.data(), a.data(), n);
    simd_->sqrt(x.data(), b.data(), n);
    EXPECT_TRUE(same_bits(a, b));
  }
}

TEST_F(KernelEquivalence, Reductions) {
  std::mt19937_64 rng(10);
  for (std::size_t n : {1u, 2u, 5u, 9u, 64u, 257u}) {
    const auto x = random_values(n, rng);
    const auto a = ref_.min_max(x.data(), n);
    const auto b = simd_->min_max(x.data(), n);
    EXPECT_EQ(a.min, b.min);
    EXPECT_EQ(a.max, b.max);
    EXPECT_EQ(ref_.max_abs(x.data(), n), simd_->max_abs(x.data(), n));
    EXPECT_EQ(ref_.all_finite(x.data(), n), simd_->all_finite(x.data(), n));
  }
}

TEST_F(KernelEquivalence, WindowSumsKeepScalarOrder) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 6u, 11u, 40u, 100u}) {
    const auto x = random_values(n, rng);
    for (std::size_t w = 1; w <= std::min<std::size_t>(n, 7); ++w) {
      std::vector<double> a(n - w + 1), b(n - w + 1);
      ref_.window_sums(x.data(), n, w, a.data());
      simd_->window_sums(x.data(), n, w, b.data());
      EXPECT_TRUE(same_bits(a, b)) << "n=" << n << " w=" << w;
    }
  }
}

TEST_F(KernelEquivalence, SignChangesIncludingZeros) {
  std::vector<double> x = {1, 2, -1, -2, 0, 3, 0, 0, -0.0, 5, 6, -7, 8, 9, 10, 11, -1e-300, 1e-300};
  std::vector<std::uint8_t> a(x.size() - 1), b(x.size() - 1);
  ref_.sign_changes(x.data(), x.size(), a.data());
  simd_->sign_changes(x.data(), x.size(), b.data());
  EXPECT_EQ(a, b);
}

TEST_F(KernelEquivalence, NonFiniteDetection) {
  for (std::size_t pos : {0u, 3u, 4u, 9u}) {
    std::vector<double> x(10, 1.0);
    x[pos] = std::numeric_limits<double>::infinity();
    EXPECT_FALSE(simd_->all_finite(x.data(), x.size()));
    x[pos] = std::nan("");
    EXPECT_FALSE(simd_->all_finite(x.data(), x.size()));
    EXPECT_TRUE(std::isnan(simd_->max_abs(x.data(), x.size())));
    EXPECT_TRUE(std::isnan(ref_.max_abs(x.data(), x.size())));
  }
}

TEST(Kernels, ScalarSignChanges) {
  const double x[] = {1, -1, -1, 0, 2, 2};
  std::uint8_t out[5];
  k::scalar().sign_changes(x, 6, out);
  EXPECT_EQ(out[0], 1);
  EXPECT_EQ(out[1], 0);
  EXPECT_EQ(out[2], 1);
  EXPECT_EQ(out[3], 1);
  EXPECT_EQ(out[4], 0);
}

TEST(Kernels, ScalarWindowSums) {
  const double x[] = {1, 2, 3, 4};
  double out[3];
  k::scalar().window_sums(x, 4, 2, out);
  EXPECT_EQ(out[0], 3);
  EXPECT_EQ(out[1], 5);
  EXPECT_EQ(out[2], 7);
}

TEST(Kernels, SelectBackend) {
  ASSERT_TRUE(k::select(k::Backend::Scalar));
  EXPECT_EQ(k::active().backend, k::Backend::Scalar);
  if (k::avx2()) {
    ASSERT_TRUE(k::select(k::Backend::Avx2));
    EXPECT_EQ(k::active().backend, k::Backend::Avx2);
  } else {
    EXPECT_FALSE(k::select(k::Backend::Avx2));
  }
}

}  // namespace
