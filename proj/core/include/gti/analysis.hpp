#pragma once

// Dense, oracle-grade frame computations on L²(G)^(N).
//
// Super vectors are flattened channel-major: entry n·|G| + x holds f^{(n)}(x).
// Measures follow the library-wide convention: V(Γ_j) = |G|/|Γ_j| on each
// translation subgroup, μ_{P_j}(p) = the generator weight.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gti/fourier.hpp"
#include "gti/systems.hpp"

namespace gti {

/// Default limit on N·|G| for operations that build N|G| × N|G| matrices.
inline constexpr std::size_t kDefaultOracleCap = 256;

using ComplexMatrix = Eigen::MatrixXcd;

/// 𝐟 = ⊕_n f^{(n)}.
class SuperSignal {
 public:
  explicit SuperSignal(std::vector<Signal> channels);
  static SuperSignal zeros(const GroupSpec& group, std::size_t channels);
  static SuperSignal from_flat(const GroupSpec& group, std::size_t channels, const Eigen::VectorXcd& flat);

  const GroupSpec& group() const { return channels_.front().group(); }
  std::size_t channel_count() const { return channels_.size(); }
  const std::vector<Signal>& channels() const { return channels_; }
  std::vector<Signal>& channels() { return channels_; }
  const Signal& operator[](std::size_t n) const { return channels_[n]; }
  Signal& operator[](std::size_t n) { return channels_[n]; }

  double norm_squared() const;
  Eigen::VectorXcd flatten() const;

 private:
  std::vector<Signal> channels_;
};

/// Coefficients ⟨𝐟, T_γ 𝐠_{j,p}⟩ for one layer, values[p][i] at γ = elements()[i].
struct LayerCoefficients {
  double covolume = 1.0;
  std::vector<double> weights;
  std::vector<ComplexVector> values;
};

struct CoefficientMap {
  std::vector<LayerCoefficients> layers;

  std::size_t size() const;
};

/// entry(j,p,γ) = Σ_n ⟨f^{(n)}, T_γ g^{(n)}_{j,p}⟩, unweighted.
CoefficientMap analysis_coeffs(const SuperSystemDescriptor& system, const SuperSignal& f);

/// Σ_j V(Γ_j) Σ_p μ(p) Σ_γ c(j,p,γ) T_γ 𝐠_{j,p}.
SuperSignal synthesis(const SuperSystemDescriptor& system, const CoefficientMap& coefficients);

/// Matrix of synthesis ∘ analysis, assembled column by column.
ComplexMatrix frame_operator_matrix(const SuperSystemDescriptor& system,
                                    std::size_t cap = kDefaultOracleCap);

/// Θ𝐟 = Σ_j V(Γ_j) Σ_p μ(p) Σ_γ ⟨𝐟, T_γ 𝐡_{j,p}⟩ T_γ 𝐠_{j,p}, with 𝐠 from `F` and
/// 𝐡 from `H`, assembled as a weighted sum of rank-one outer products.
/// Identity iff (F, H) is a dual pair; zero iff they are orthogonal.
ComplexMatrix mixed_dual_gramian(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                                 std::size_t cap = kDefaultOracleCap);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  /// Conditioning-aware zero test: A > 1e-8·B.
  bool is_frame() const { return upper > 0.0 && lower > 1e-8 * upper; }
};

/// Extreme eigenvalues of the frame operator.
FrameBounds frame_bounds(const SuperSystemDescriptor& system, std::size_t cap = kDefaultOracleCap);

/// Throws StructureMismatch unless both systems share group, channel count,
/// layer subgroups, generator counts and weights.
void require_same_structure(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H);

/// A pair that has been checked to reproduce L²(G)^(N) (or explicitly waived).
class CertifiedPair {
 public:
  /// Certifies through the dense Gramian: max |Θ − I| ≤ tolerance.
  /// Throws CapExceeded above the cap, NotAFrame if the check fails.
  static CertifiedPair by_oracle(SuperSystemDescriptor F, SuperSystemDescriptor H, double tolerance,
                                 std::size_t cap = kDefaultOracleCap);
  /// Accepts a residual computed elsewhere (e.g. from the t_α fibers).
  static CertifiedPair from_residual(SuperSystemDescriptor F, SuperSystemDescriptor H, double residual,
                                     double tolerance);
  /// Skips certification (reporting mode); `certified()` is false.
  static CertifiedPair unchecked(SuperSystemDescriptor F, SuperSystemDescriptor H);

  const SuperSystemDescriptor& synthesis_system() const { return F_; }
  const SuperSystemDescriptor& analysis_system() const { return H_; }
  bool certified() const { return certified_; }
  double residual() const { return residual_; }

 private:
  CertifiedPair(SuperSystemDescriptor F, SuperSystemDescriptor H, bool certified, double residual);

  SuperSystemDescriptor F_;
  SuperSystemDescriptor H_;
  bool certified_;
  double residual_;
};

/// One coefficient stream for all N channels: analysis by H.
CoefficientMap multiplex_encode(const CertifiedPair& pair, const SuperSignal& signals);
/// Synthesis by F.
SuperSignal multiplex_decode(const CertifiedPair& pair, const CoefficientMap& coefficients);

/// Canonical dual windows S^{-1}ψ_j of a Gabor system. S commutes with T_γ
/// and M_χ for γ ∈ Γ, χ ∈ Λ, so the dual system is again Gabor on (Γ, Λ).
/// Throws NotAFrame when the lower bound is numerically zero.
WindowBank gabor_canonical_dual(const GaborSpec& spec, std::size_t cap = kDefaultOracleCap);

/// Canonical tight windows S^{-1/2}ψ_j; the resulting Gabor system is Parseval.
WindowBank gabor_canonical_tight(const GaborSpec& spec, std::size_t cap = kDefaultOracleCap);

}  // namespace gti
