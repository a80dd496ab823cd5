#pragma once

// Frequency-side characterizations of GTI and super-GTI systems.
//
// For systems F (windows g) and H (windows h) indexed by the same (J, P_j, Γ_j),
//
//   t^{(n1,n2)}_α(ξ) = Σ_{j : α ∈ Γ_j^⊥} Σ_p μ_{P_j}(p) conj(ĥ^{(n1)}_{j,p}(ξ)) ĝ^{(n2)}_{j,p}(ξ + α)
//
// for α in the union of the annihilators. The pair is
//   * orthogonal (Θ = 0)        iff every t vanishes,
//   * super-dual (Θ = I)        iff t^{(n,n)}_α = δ_{α,0} and t^{(n1,n2)}_α = 0 for n1 ≠ n2,
//   * translation invariant     iff t_α = 0 for every α ≠ 0, and then Θ has symbol t_0,
// where Θ𝐟 = Σ_j V(Γ_j) Σ_p μ(p) Σ_γ ⟨𝐟, T_γ𝐡_{j,p}⟩ T_γ𝐠_{j,p}.

#include <cstddef>
#include <optional>
#include <vector>

#include "gti/analysis.hpp"
#include "gti/fourier.hpp"
#include "gti/group.hpp"
#include "gti/systems.hpp"

namespace gti {

struct TAlphaTable {
  GroupSpec group;
  std::size_t channels = 1;
  /// Sorted union of the annihilators Γ_j^⊥.
  std::vector<Index> alphas;
  /// For each α, the layers j with α ∈ Γ_j^⊥.
  std::vector<std::vector<std::size_t>> contributing_layers;
  /// values[a][n1·N + n2] = t^{(n1,n2)}_{alphas[a]}, n1 indexing H and n2 indexing F.
  std::vector<std::vector<Spectrum>> values;

  std::optional<std::size_t> find(Index alpha) const;
  const Spectrum& at(std::size_t alpha_pos, std::size_t h_channel, std::size_t g_channel) const {
    return values[alpha_pos][h_channel * channels + g_channel];
  }
};

TAlphaTable t_alpha_table(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H);

struct Witness {
  std::size_t h_channel = 0;
  std::size_t g_channel = 0;
  GroupElement alpha;
  GroupElement xi;
  double residual = 0.0;
};

enum class BlockKind { kDuality, kOrthogonality };

/// Residual of one channel pair: t^{(n,n)} against δ_{α,0}, or t^{(n1,n2)} against 0.
struct BlockVerdict {
  std::size_t h_channel = 0;
  std::size_t g_channel = 0;
  BlockKind kind = BlockKind::kOrthogonality;
  bool pass = false;
  double max_residual = 0.0;
};

struct Verdict {
  bool pass = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Worst (channel pair, α, ξ) entries, residual descending, ties by (α, ξ).
  std::vector<Witness> witnesses;
  std::vector<BlockVerdict> blocks;
};

struct CheckOptions {
  /// Defaults to default_tolerance(F, H, cap).
  std::optional<double> tolerance;
  std::size_t top_k = 10;
  std::size_t cap = kDefaultOracleCap;
};

/// 1e-9 · max(1, B_F·B_H)^{1/2} with B the upper frame bounds when N·|G| is
/// within `cap`, plain 1e-9 otherwise.
double default_tolerance(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                         std::size_t cap = kDefaultOracleCap);

/// Residual table against a target; shared by the generic and structured checks.
Verdict evaluate_table(const TAlphaTable& table, BlockKind diagonal_target, double tolerance, std::size_t top_k);

/// Every t^{(n1,n2)}_α(ξ), α = 0 included, must vanish.
Verdict check_orthogonality(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                            const CheckOptions& options = {});

/// Diagonal t equal to δ_{α,0}, off-diagonal t zero. `blocks` carries the
/// per-channel duality and pairwise orthogonality sub-verdicts.
Verdict check_super_duality(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                            const CheckOptions& options = {});

/// check_super_duality(F, F).
Verdict check_parseval_super(const SuperSystemDescriptor& F, const CheckOptions& options = {});

/// s(ξ) = t_0(ξ) for N = 1. Throws NotAMultiplier when some t_α, α ≠ 0,
/// exceeds the tolerance, InvalidArgument for N ≠ 1.
Spectrum multiplier_symbol(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                           const CheckOptions& options = {});

/// max_x ‖Θ T_x − T_x Θ‖_F over the dense Gramian.
double commutation_defect(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                          std::size_t cap = kDefaultOracleCap);

struct WfDiagnostic {
  /// w_f(x) = ⟨Θ T_x f, T_x f⟩ for every x.
  ComplexVector w_values;
  /// ŵ_f(α) for α in `alphas` (the union of annihilators).
  std::vector<Index> alphas;
  ComplexVector w_hat;
  /// max_x |w_f(x) − Σ_α χ_α(x) ŵ_f(α)|.
  double series_residual = 0.0;
};

/// ŵ_𝐟(α) = (1/|G|) Σ_ξ Σ_{n1,n2} f̂^{(n1)}(ξ) conj(f̂^{(n2)}(ξ+α)) t^{(n1,n2)}_α(ξ).
WfDiagnostic wf_diagnostic(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const SuperSignal& f,
                           std::size_t cap = kDefaultOracleCap);
/// N = 1 convenience form.
WfDiagnostic wf_diagnostic(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const Signal& f,
                           std::size_t cap = kDefaultOracleCap);

/// Σ_j Σ_p μ(p) Σ_{α∈Γ_j^⊥} (1/|G|) Σ_ξ |f^(ξ) f^(ξ+α) ĝ_{j,p}(ξ) ĥ_{j,p}(ξ+α)|, N = 1.
double dual_alpha_lic_sum(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const Signal& f);

/// Specialized duality sums evaluated from the base windows:
///   Σ_{α: α̃ ∈ βΓ^⊥} Σ_j Σ_{χ∈Λ} conj(φ̂^{(n1)}_j(β^{-1}ξ − χ)) ψ̂^{(n2)}_j(β^{-1}(ξ + α̃) − χ)
/// with β = α*. F carries ψ, H carries φ. Throws StructureMismatch unless
/// Γ, Λ, 𝒜 and the window counts agree.
Verdict check_wavepacket_duality(const WavePacketSpec& F, const WavePacketSpec& H, const CheckOptions& options = {});
Verdict check_gabor_duality(const GaborSpec& F, const GaborSpec& H, const CheckOptions& options = {});
Verdict check_wavelet_duality(const WaveletSpec& F, const WaveletSpec& H, const CheckOptions& options = {});

/// The structured t table behind check_wavepacket_duality; contributing
/// indices refer to positions in the dilation list.
TAlphaTable wavepacket_t_alpha_table(const WavePacketSpec& F, const WavePacketSpec& H);

}  // namespace gti
