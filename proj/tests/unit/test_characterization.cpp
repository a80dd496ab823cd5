#include <gtest/gtest.h>

#include <cmath>

#include "gti/characterization.hpp"
#include "gti/error.hpp"
#include "oracles.hpp"
#include "sweep.hpp"

using namespace gti;
using namespace gti::testing;

namespace {

SuperSystemDescriptor delta_system(const GroupSpec& g, double scale = 1.0) {
  Signal d = delta(g);
  d[0] = scale;
  return SuperSystemDescriptor(g, 1, {{whole_group(g), {{1.0, {d}}}}});
}

SuperSystemDescriptor zero_like(const SuperSystemDescriptor& s) { return scale_windows(s, 0.0); }

// N = 2, Γ = G, p ∈ {1, 2}: ĝ^{(n)}_p = c_{n,p} constant spectra, i.e. g = c δ.
SuperSystemDescriptor two_channel(double c22) {
  const auto g = make_group({4});
  Signal z(g);
  Signal d = delta(g);
  Signal d2 = delta(g);
  d2[0] = c22;
  return SuperSystemDescriptor(g, 2, {{whole_group(g), {{1.0, {d, z}}, {1.0, {z, d2}}}}});
}

SuperSystemDescriptor from_spectra(const Subgroup& gamma, const std::vector<Spectrum>& windows) {
  GtiLayer layer{gamma, {}};
  for (const auto& s : windows) layer.generators.push_back({1.0, {idft(s)}});
  return SuperSystemDescriptor(gamma.parent(), 1, {layer});
}

}  // namespace

TEST(TAlpha, DeltaSystem) {
  const auto g = make_group({5});
  const auto t = t_alpha_table(delta_system(g), delta_system(g));
  ASSERT_EQ(t.alphas, (std::vector<Index>{0}));
  for (Index xi = 0; xi < 5; ++xi) EXPECT_NEAR(std::abs(t.at(0, 0, 0)[xi] - 1.0), 0.0, 1e-14);
}

TEST(TAlpha, ZeroAnalysisWindows) {
  Rng rng(1);
  const auto c = make_case({{8}, 2, 2, 4}, Target::kRandom, rng);
  const auto t = t_alpha_table(c.F, zero_like(c.H));
  for (const auto& row : t.values) {
    for (const auto& s : row) {
      for (auto v : s.values()) EXPECT_EQ(v, Complex(0.0));
    }
  }
}

TEST(TAlpha, MatchesLiteralLoops) {
  Rng rng(2);
  const auto g = make_group({8});
  const auto gamma = subgroup_from_generators(g, {GroupElement{2}});
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<GtiLayer> fl{{gamma, {}}}, hl{{gamma, {}}};
    for (int p = 0; p < 3; ++p) {
      const double w = 0.5 + p;
      fl[0].generators.push_back({w, {random_signal(g, rng), random_signal(g, rng)}});
      hl[0].generators.push_back({w, {random_signal(g, rng), random_signal(g, rng)}});
    }
    const SuperSystemDescriptor F(g, 2, fl), H(g, 2, hl);
    const auto t = t_alpha_table(F, H);
    ASSERT_EQ(t.alphas, (std::vector<Index>{0, 4}));
    for (std::size_t a = 0; a < t.alphas.size(); ++a) {
      for (std::size_t n1 = 0; n1 < 2; ++n1) {
        for (std::size_t n2 = 0; n2 < 2; ++n2) {
          for (Index xi = 0; xi < 8; ++xi) {
            const auto ref = t_alpha_by_definition(F, H, t.alphas[a], n1, n2, xi);
            EXPECT_NEAR(std::abs(t.at(a, n1, n2)[xi] - ref), 0.0, 1e-10);
          }
        }
      }
    }
  }
}

TEST(TAlpha, UnionOfAnnihilatorsAndContributors) {
  const auto g = make_group({12});
  const auto a = subgroup_from_generators(g, {GroupElement{3}});  // ⊥ = ⟨4⟩
  const auto b = subgroup_from_generators(g, {GroupElement{2}});  // ⊥ = ⟨6⟩
  const SuperSystemDescriptor F(g, 1, {{a, {{1.0, {delta(g)}}}}, {b, {{1.0, {delta(g)}}}}});
  const auto t = t_alpha_table(F, F);
  EXPECT_EQ(t.alphas, (std::vector<Index>{0, 4, 6, 8}));
  EXPECT_EQ(t.contributing_layers[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(t.contributing_layers[1], (std::vector<std::size_t>{0}));
  EXPECT_EQ(t.contributing_layers[2], (std::vector<std::size_t>{1}));
  EXPECT_FALSE(t.find(5).has_value());
  EXPECT_EQ(t.find(6), std::optional<std::size_t>(2));
}

TEST(TAlpha, ScaleCovariance) {
  Rng rng(3);
  const auto c = make_case({{6}, 2, 2, 3}, Target::kRandom, rng);
  const Complex k(0.3, -1.7);
  const auto t0 = t_alpha_table(c.F, c.H);
  const auto t1 = t_alpha_table(scale_windows(c.F, k), scale_windows(c.H, 1.0 / std::conj(k)));
  for (std::size_t a = 0; a < t0.values.size(); ++a) {
    for (std::size_t e = 0; e < t0.values[a].size(); ++e) {
      for (Index xi = 0; xi < 6; ++xi) {
        EXPECT_NEAR(std::abs(t0.values[a][e][xi] - t1.values[a][e][xi]), 0.0, 1e-12 * (1 + std::abs(t0.values[a][e][xi])));
      }
    }
  }
}

TEST(Orthogonality, Examples) {
  const auto g = make_group({4});
  const auto zero = zero_like(delta_system(g));
  const auto v = check_orthogonality(delta_system(g), zero);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.max_residual, 0.0);

  const auto d = check_orthogonality(delta_system(g), delta_system(g));
  EXPECT_FALSE(d.pass);
  EXPECT_NEAR(d.max_residual, 1.0, 1e-14);
  ASSERT_FALSE(d.witnesses.empty());
  EXPECT_EQ(d.witnesses[0].alpha, GroupElement{0});
}

TEST(Orthogonality, UnitaryColumns) {
  // ĝ_p(ξ) = U(ξ)_{p,1}, ĥ_p(ξ) = U(ξ)_{p,2} with U(ξ) a rotation by θ(ξ) and a phase.
  const auto g = make_group({6});
  Spectrum g1(g), g2(g), h1(g), h2(g);
  for (Index xi = 0; xi < 6; ++xi) {
    const double th = 0.4 + 0.9 * static_cast<double>(xi);
    const Complex ph = std::polar(1.0, 0.3 * static_cast<double>(xi));
    g1[xi] = std::cos(th);
    g2[xi] = ph * std::sin(th);
    h1[xi] = -std::sin(th);
    h2[xi] = ph * std::cos(th);
  }
  const auto v = check_orthogonality(from_spectra(whole_group(g), {g1, g2}), from_spectra(whole_group(g), {h1, h2}));
  EXPECT_TRUE(v.pass) << v.max_residual;
}

TEST(SuperDuality, TrivialSuperParseval) {
  const auto F = two_channel(1.0);
  const auto v = check_super_duality(F, F);
  EXPECT_TRUE(v.pass);
  EXPECT_LT(v.max_residual, 1e-14);
  ASSERT_EQ(v.blocks.size(), 4u);
  for (const auto& b : v.blocks) EXPECT_TRUE(b.pass);
  EXPECT_TRUE(check_parseval_super(F).pass);
}

TEST(SuperDuality, ScaledChannelFails) {
  const auto F = two_channel(2.0);
  const auto v = check_super_duality(F, F);
  EXPECT_FALSE(v.pass);
  EXPECT_NEAR(v.max_residual, 3.0, 1e-12);
  ASSERT_FALSE(v.witnesses.empty());
  EXPECT_EQ(v.witnesses[0].h_channel, 1u);
  EXPECT_EQ(v.witnesses[0].g_channel, 1u);
  EXPECT_EQ(v.witnesses[0].alpha, GroupElement{0});
  for (const auto& b : v.blocks) {
    if (b.h_channel == 1 && b.g_channel == 1) {
      EXPECT_EQ(b.kind, BlockKind::kDuality);
      EXPECT_FALSE(b.pass);
    } else {
      EXPECT_TRUE(b.pass);
    }
  }
  EXPECT_FALSE(check_parseval_super(delta_system(make_group({4}), 2.0)).pass);
}

TEST(SuperDuality, DerivedPairOnZ8AgreesWithOracle) {
  Rng rng(4);
  for (auto target : {Target::kDual, Target::kPerturbedDual, Target::kDiagonalDual}) {
    const auto c = make_case({{8}, 2, 2, 4}, target, rng);
    const auto v = check_super_duality(c.F, c.H);
    const double oracle = identity_residual(gramian_by_definition(c.F, c.H));
    EXPECT_EQ(v.pass, oracle <= v.tolerance) << target_name(target) << " " << oracle;
    EXPECT_EQ(v.pass, target == Target::kDual);
  }
}

TEST(SuperDuality, WitnessesSortedAndCapped) {
  Rng rng(5);
  const auto c = make_case({{12}, 2, 2, 4}, Target::kRandom, rng);
  const auto v = check_super_duality(c.F, c.H, {std::nullopt, 7});
  ASSERT_EQ(v.witnesses.size(), 7u);
  for (std::size_t i = 1; i < v.witnesses.size(); ++i) EXPECT_GE(v.witnesses[i - 1].residual, v.witnesses[i].residual);
  EXPECT_DOUBLE_EQ(v.witnesses[0].residual, v.max_residual);
}

TEST(SuperDuality, ToleranceMonotone) {
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    const auto c = make_case({{6}, 1, 2, 4}, i % 2 ? Target::kPerturbedDual : Target::kDual, rng);
    bool passed_before = true;
    for (double tol : {1.0, 1e-2, 1e-4, 1e-6, 1e-9, 1e-12, 1e-15, 0.0}) {
      const bool pass = check_super_duality(c.F, c.H, {tol}).pass;
      EXPECT_TRUE(passed_before || !pass);
      passed_before = pass;
    }
  }
}

TEST(SuperDuality, DefaultToleranceScale) {
  const auto g = make_group({4});
  EXPECT_DOUBLE_EQ(default_tolerance(delta_system(g), delta_system(g)), 1e-9);
  // B_F = 9, B_H = 1 → 1e-9·3
  EXPECT_NEAR(default_tolerance(delta_system(g, 3.0), delta_system(g)), 3e-9, 1e-20);
  const auto big = make_group({300});
  EXPECT_DOUBLE_EQ(default_tolerance(delta_system(big, 5.0), delta_system(big)), 1e-9);
}

TEST(Parseval, CanonicalTightGaborWindow) {
  Rng rng(7);
  const auto g = make_group({12});
  const GaborSpec spec{{{random_signal(g, rng)}},
                       subgroup_from_generators(g, {GroupElement{3}}),
                       subgroup_from_generators(g, {GroupElement{2}})};
  const GaborSpec tight{gabor_canonical_tight(spec), spec.translations, spec.modulations};
  EXPECT_TRUE(check_parseval_super(gabor_system(tight)).pass);
}

TEST(Multiplier, Examples) {
  const auto g = make_group({6});
  const auto s = multiplier_symbol(delta_system(g), delta_system(g));
  for (Index xi = 0; xi < 6; ++xi) EXPECT_NEAR(std::abs(s[xi] - 1.0), 0.0, 1e-14);
  const auto z = multiplier_symbol(delta_system(g), zero_like(delta_system(g)));
  for (Index xi = 0; xi < 6; ++xi) EXPECT_EQ(z[xi], Complex(0.0));
}

TEST(Multiplier, SingleGeneratorFullLattice) {
  Rng rng(8);
  const auto g = make_group({8});
  const auto f = random_signal(g, rng);
  const auto h = random_signal(g, rng);
  const SuperSystemDescriptor F(g, 1, {{whole_group(g), {{1.0, {f}}}}});
  const SuperSystemDescriptor H(g, 1, {{whole_group(g), {{1.0, {h}}}}});
  const auto s = multiplier_symbol(F, H);
  const auto fh = dft_naive(f);
  const auto hh = dft_naive(h);
  for (Index xi = 0; xi < 8; ++xi) EXPECT_NEAR(std::abs(s[xi] - std::conj(hh[xi]) * fh[xi]), 0.0, 1e-10);
  const auto theta = gramian_by_definition(F, H);
  for (Index x = 0; x < 8; ++x) {
    const auto col = apply_multiplier(s, delta(g, x));
    for (Index y = 0; y < 8; ++y) EXPECT_NEAR(std::abs(theta(y, x) - col[y]), 0.0, 1e-10);
  }
}

TEST(Multiplier, RejectsNonInvariantPairs) {
  Rng rng(9);
  const auto g = make_group({8});
  const auto two = subgroup_from_generators(g, {GroupElement{2}});
  const SuperSystemDescriptor F(g, 1, {{two, {{1.0, {random_signal(g, rng)}}}}});
  const SuperSystemDescriptor H(g, 1, {{two, {{1.0, {random_signal(g, rng)}}}}});
  EXPECT_THROW(multiplier_symbol(F, H), NotAMultiplier);
  EXPECT_THROW(multiplier_symbol(two_channel(1.0), two_channel(1.0)), InvalidArgument);
}

TEST(Commutation, Examples) {
  const auto g = make_group({4});
  EXPECT_LT(commutation_defect(delta_system(g), delta_system(g)), 1e-14);
  Rng rng(10);
  const SuperSystemDescriptor F(g, 1, {{whole_group(g), {{1.0, {random_signal(g, rng)}}}}});
  const SuperSystemDescriptor H(g, 1, {{whole_group(g), {{1.0, {random_signal(g, rng)}}}}});
  EXPECT_LT(commutation_defect(F, H), 1e-12);
}

TEST(Commutation, EngineeredDefectOnZ4) {
  // Γ = ⟨2⟩, Γ^⊥ = {0, 2}; ĝ = 1_{ξ∈{2}}, ĥ = 1_{ξ∈{0}} makes t_2(0) = 1, t_0 ≡ 0.
  const auto g = make_group({4});
  const auto two = subgroup_from_generators(g, {GroupElement{2}});
  Spectrum gs(g), hs(g);
  gs[2] = 1.0;
  hs[0] = 1.0;
  const auto F = from_spectra(two, {gs});
  const auto H = from_spectra(two, {hs});
  const auto t = t_alpha_table(F, H);
  ASSERT_EQ(t.alphas, (std::vector<Index>{0, 2}));
  EXPECT_NEAR(std::abs(t.at(1, 0, 0)[0] - 1.0), 0.0, 1e-14);
  const double defect = commutation_defect(F, H);
  EXPECT_GT(defect, 0.1);

  // Independent check: Θ T_1 ≠ T_1 Θ on the oracle matrix.
  const auto theta = gramian_by_definition(F, H);
  double worst = 0.0;
  for (Index s = 0; s < 4; ++s) {
    ComplexMatrix shift = ComplexMatrix::Zero(4, 4);
    for (Index x = 0; x < 4; ++x) shift(g.add(x, s), x) = 1.0;
    worst = std::max(worst, (theta * shift - shift * theta).norm());
  }
  EXPECT_NEAR(worst, defect, 1e-12);
}

TEST(Wf, DualPairGivesConstantEnergy) {
  Rng rng(11);
  const auto c = make_case({{8}, 1, 2, 4}, Target::kDual, rng);
  const auto f = random_signal(c.F.group(), rng);
  const auto d = wf_diagnostic(c.F, c.H, f);
  const double e = f.norm_squared();
  for (auto w : d.w_values) EXPECT_NEAR(std::abs(w - e), 0.0, 1e-8 * e);
  for (std::size_t a = 0; a < d.alphas.size(); ++a) {
    EXPECT_NEAR(std::abs(d.w_hat[a] - (d.alphas[a] == 0 ? e : 0.0)), 0.0, 1e-8 * e);
  }
}

TEST(Wf, ZeroSignal) {
  Rng rng(12);
  const auto c = make_case({{8}, 1, 2, 4}, Target::kRandom, rng);
  const auto d = wf_diagnostic(c.F, c.H, Signal(c.F.group()));
  for (auto w : d.w_values) EXPECT_EQ(w, Complex(0.0));
  for (auto w : d.w_hat) EXPECT_EQ(w, Complex(0.0));
  EXPECT_EQ(d.series_residual, 0.0);
}

TEST(Wf, SeriesIdentityOnRandomPairs) {
  Rng rng(13);
  for (int i = 0; i < 5; ++i) {
    const auto c = make_case({{8}, 1 + static_cast<std::size_t>(i % 2), 3, 4}, Target::kRandom, rng);
    const auto f = random_super_signal(c.F.group(), c.F.channels(), rng);
    const auto d = wf_diagnostic(c.F, c.H, f);
    double scale = 0.0;
    for (auto w : d.w_values) scale = std::max(scale, std::abs(w));
    EXPECT_LE(d.series_residual, 1e-9 * std::max(1.0, scale));
    // Direct w against the definitional Gramian.
    const auto theta = gramian_by_definition(c.F, c.H);
    const auto& g = c.F.group();
    for (Index x = 0; x < g.cardinality(); ++x) {
      std::vector<Signal> shifted;
      for (const auto& ch : f.channels()) shifted.push_back(translate(x, ch));
      const auto v = SuperSignal(shifted).flatten();
      EXPECT_NEAR(std::abs(v.dot(theta * v) - d.w_values[x]), 0.0, 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST(LicSum, Examples) {
  const auto g = make_group({4});
  EXPECT_NEAR(dual_alpha_lic_sum(delta_system(g), delta_system(g), delta(g)), 1.0, 1e-14);
  EXPECT_EQ(dual_alpha_lic_sum(delta_system(g), delta_system(g), Signal(g)), 0.0);
  Rng rng(14);
  EXPECT_EQ(dual_alpha_lic_sum(delta_system(g), zero_like(delta_system(g)), random_signal(g, rng)), 0.0);
}

TEST(Structured, GaborDeltaReducesToDeltaSystem) {
  const auto g = make_group({6});
  const GaborSpec spec{{{delta(g)}}, whole_group(g), trivial_subgroup(g)};
  const auto v = check_gabor_duality(spec, spec);
  EXPECT_TRUE(v.pass);
  EXPECT_LT(v.max_residual, 1e-14);
}

TEST(Structured, WaveletIdentityWithSuperParsevalGenerators) {
  const auto g = make_group({4});
  Signal z(g);
  const WaveletSpec spec{{{delta(g), z}, {z, delta(g)}}, {identity_automorphism(g)}, whole_group(g)};
  EXPECT_TRUE(check_wavelet_duality(spec, spec).pass);
}

TEST(Structured, RandomGaborThreeWayAgreement) {
  Rng rng(15);
  const auto g = make_group({6});
  for (int i = 0; i < 6; ++i) {
    const GaborSpec F{{{random_signal(g, rng)}}, random_subgroup(g, rng), random_subgroup(g, rng)};
    GaborSpec H{{{random_signal(g, rng)}}, F.translations, F.modulations};
    if (i % 2 == 0 && frame_bounds(gabor_system(F)).is_frame()) H.windows = gabor_canonical_dual(F);
    const auto spec = check_gabor_duality(F, H);
    const auto generic = check_super_duality(gabor_system(F), gabor_system(H));
    const double oracle = identity_residual(gramian_by_definition(gabor_system(F), gabor_system(H)));
    EXPECT_NEAR(spec.max_residual, generic.max_residual, 1e-10);
    EXPECT_EQ(spec.pass, generic.pass);
    EXPECT_EQ(generic.pass, oracle <= generic.tolerance);
  }
}

TEST(Structured, MismatchedSpecsThrow) {
  const auto g = make_group({8});
  const GaborSpec a{{{delta(g)}}, whole_group(g), trivial_subgroup(g)};
  const GaborSpec b{{{delta(g)}}, subgroup_from_generators(g, {GroupElement{2}}), trivial_subgroup(g)};
  EXPECT_THROW(check_gabor_duality(a, b), StructureMismatch);
  const GaborSpec c{{{delta(g)}, {delta(g)}}, whole_group(g), trivial_subgroup(g)};
  EXPECT_THROW(check_gabor_duality(a, c), StructureMismatch);
  const WaveletSpec w1{{{delta(g)}}, {identity_automorphism(g)}, whole_group(g)};
  const WaveletSpec w2{{{delta(g)}}, {automorphism_from_matrix(g, {{3}})}, whole_group(g)};
  EXPECT_THROW(check_wavelet_duality(w1, w2), StructureMismatch);
}
