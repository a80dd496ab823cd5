#include <gtest/gtest.h>

#include <cmath>

#include "gti/error.hpp"
#include "gti/fourier.hpp"
#include "gti/systems.hpp"
#include "sweep.hpp"

using namespace gti;
using gti::testing::Rng;
using gti::testing::random_signal;

namespace {

template <class A, class B>
double max_diff(const A& a, const B& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class A>
double max_abs(const A& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

}  // namespace

TEST(Fourier, DeltaAndConstant) {
  for (std::int64_t n : {1, 5, 8, 12}) {
    const auto g = make_group({n});
    const auto d = dft(delta(g));
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(d[i] - 1.0), 0.0, 1e-14);
    const auto c = dft(constant(g));
    EXPECT_NEAR(std::abs(c[0] - static_cast<double>(n)), 0.0, 1e-12);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_NEAR(std::abs(c[i]), 0.0, 1e-12);
  }
}

TEST(Fourier, InverseExamples) {
  const auto g = make_group({6});
  Spectrum ones(g, ComplexVector(6, 1.0));
  EXPECT_LT(max_diff(idft(ones), delta(g)), 1e-14);
  Spectrum spike(g);
  spike[0] = 6.0;
  EXPECT_LT(max_diff(idft(spike), constant(g)), 1e-14);
}

TEST(Fourier, FastMatchesNaiveOnZ12) {
  Rng rng(12);
  const auto g = make_group({12});
  const auto f = random_signal(g, rng);
  const auto fast = dft(f);
  const auto slow = dft_naive(f);
  EXPECT_LT(max_diff(fast, slow), 1e-10 * max_abs(slow));
}

TEST(Fourier, FastMatchesNaiveAcrossShapes) {
  Rng rng(7);
  // Primes above the radix limit take the chirp-z path.
  for (auto orders : std::vector<std::vector<std::int64_t>>{
           {1}, {2}, {3}, {30}, {64}, {67}, {97}, {128}, {2, 3, 5}, {8, 9}, {4, 4, 4}, {67, 2}, {1, 7}, {134}, {3, 131}, {1018}}) {
    const auto g = make_group(orders);
    const auto f = random_signal(g, rng);
    const auto slow = dft_naive(f);
    EXPECT_LT(max_diff(dft(f), slow), 1e-10 * max_abs(slow)) << g.cardinality();
    EXPECT_LT(max_diff(idft(slow), idft_naive(slow)), 1e-10 * max_abs(f));
  }
}

TEST(Fourier, RoundTripZ8xZ3) {
  Rng rng(83);
  const auto g = make_group({8, 3});
  const auto f = random_signal(g, rng);
  EXPECT_LT(max_diff(idft(dft(f)), f), 1e-10);
}

TEST(Fourier, Plancherel) {
  Rng rng(5);
  for (auto orders : std::vector<std::vector<std::int64_t>>{{16}, {2, 4}, {3, 3}, {5, 7}}) {
    const auto g = make_group(orders);
    const auto f = random_signal(g, rng);
    const auto h = random_signal(g, rng);
    const auto fh = dft(f);
    const auto hh = dft(h);
    Complex spectral = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) spectral += fh[i] * std::conj(hh[i]);
    spectral /= static_cast<double>(g.cardinality());
    EXPECT_NEAR(std::abs(spectral - inner_product(f, h)), 0.0, 1e-10 * std::abs(inner_product(f, f)));
    EXPECT_NEAR(fh.norm_squared() / static_cast<double>(g.cardinality()), f.norm_squared(), 1e-10 * f.norm_squared());
  }
}

TEST(Fourier, MultiplierExamples) {
  Rng rng(9);
  const auto g = make_group({10});
  const auto f = random_signal(g, rng);
  EXPECT_LT(max_diff(apply_multiplier(Spectrum(g, ComplexVector(10, 1.0)), f), f), 1e-12);
  EXPECT_LT(max_abs(apply_multiplier(Spectrum(g), f)), 1e-15);
  for (Index gamma = 0; gamma < 10; ++gamma) {
    const auto s = dft(delta(g, gamma));
    EXPECT_LT(max_diff(apply_multiplier(s, f), translate(gamma, f)), 1e-10);
  }
}

TEST(Fourier, MultiplierComposition) {
  Rng rng(10);
  const auto g = make_group({3, 4});
  const auto f = random_signal(g, rng);
  const auto s1 = dft(random_signal(g, rng));
  const auto s2 = dft(random_signal(g, rng));
  Spectrum prod(g);
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = s1[i] * s2[i];
  const auto direct = apply_multiplier(prod, f);
  EXPECT_LT(max_diff(apply_multiplier(s1, apply_multiplier(s2, f)), direct), 1e-10 * max_abs(direct));
}

TEST(Fourier, LengthValidation) {
  const auto g = make_group({4});
  EXPECT_THROW(Signal(g, ComplexVector(3)), DimensionMismatch);
  EXPECT_THROW(apply_multiplier(Spectrum(make_group({5})), Signal(g)), DimensionMismatch);
}
