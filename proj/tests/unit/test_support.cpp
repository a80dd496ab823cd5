#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sweep.hpp"

using namespace gti;
using namespace gti::testing;

// The generator must hit its targets, or the sweeps only exercise failures.
TEST(Support, ConstructedPairsHitTargets) {
  Rng rng(2024);
  for (const auto& orders : sweep_groups()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (auto target : {Target::kDual, Target::kOrthogonal, Target::kMultiplier}) {
        const auto c = make_case({orders, n, 3, 4}, target, rng);
        const auto theta = gramian_by_definition(c.F, c.H);
        const auto& g = c.F.group();
        const double scale = std::max(1.0, max_abs(theta));
        if (target == Target::kDual) EXPECT_LT(identity_residual(theta), 1e-9 * scale) << c.label;
        if (target == Target::kOrthogonal) EXPECT_LT(max_abs(theta), 1e-9 * scale) << c.label;
        // Multiplier: Θ commutes with every translation.
        for (Index s = 0; s < g.cardinality(); ++s) {
          ComplexMatrix shift = ComplexMatrix::Zero(theta.rows(), theta.cols());
          for (std::size_t ch = 0; ch < n; ++ch) {
            for (Index x = 0; x < g.cardinality(); ++x) {
              shift(static_cast<Eigen::Index>(ch * g.cardinality() + g.add(x, s)),
                    static_cast<Eigen::Index>(ch * g.cardinality() + x)) = 1.0;
            }
          }
          EXPECT_LT(max_abs(theta * shift - shift * theta), 1e-9 * scale) << c.label;
        }
      }
    }
  }
}

TEST(Support, PerturbedPairsMissTargets) {
  Rng rng(7);
  for (const auto& orders : sweep_groups()) {
    const auto c = make_case({orders, 1, 2, 4}, Target::kPerturbedDual, rng);
    EXPECT_GT(identity_residual(gramian_by_definition(c.F, c.H)), 1e-5) << c.label;
  }
}

TEST(Support, SweepIsDeterministic) {
  const auto a = make_sweep(99, 20);
  const auto b = make_sweep(99, 20);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(max_abs(gramian_by_definition(a[i].F, a[i].H) - gramian_by_definition(b[i].F, b[i].H)), 0.0);
  }
}

TEST(Support, AutomorphismGroupsAreClosed) {
  Rng rng(5);
  for (const auto& orders : sweep_groups()) {
    const auto g = make_group(orders);
    const auto dil = random_automorphism_group(g, rng, 6);
    for (const auto& a : dil) {
      for (const auto& b : dil) {
        std::vector<Index> composed(g.cardinality());
        for (Index x = 0; x < g.cardinality(); ++x) composed[x] = a.apply(b.apply(x));
        bool found = false;
        for (const auto& c : dil) found = found || c.permutation() == composed;
        EXPECT_TRUE(found);
      }
    }
  }
}
