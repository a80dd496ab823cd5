#pragma once

// Translation, modulation and dilation operators, and the (super-)GTI system
// descriptors that the Gabor, wavelet and wave-packet constructors expand into.

#include <cstddef>
#include <vector>

#include "gti/fourier.hpp"
#include "gti/group.hpp"

namespace gti {

/// (T_γ f)(x) = f(x − γ).
Signal translate(Index gamma, const Signal& f);
Signal translate(const GroupElement& gamma, const Signal& f);

/// (M_χ f)(x) = χ(x) f(x).
Signal modulate(Index chi, const Signal& f);
Signal modulate(const GroupElement& chi, const Signal& f);

/// (D_α f)(x) = Δ(α)^{-1/2} f(α(x)), with Δ(α) = 1.
Signal dilate(const Automorphism& alpha, const Signal& f);

/// One element g_{j,p} = (g^{(1)}, ..., g^{(N)}) of P_j with its mass μ_{P_j}(p).
struct Generator {
  double weight = 1.0;
  std::vector<Signal> windows;
};

/// {T_γ g_{j,p} : γ ∈ Γ_j, p ∈ P_j}.
struct GtiLayer {
  Subgroup subgroup;
  std::vector<Generator> generators;
};

/// ⋃_j {⊕_n T_γ g^{(n)}_{j,p}}; N = 1 is an ordinary GTI system.
class SuperSystemDescriptor {
 public:
  /// Throws InvalidArgument / DimensionMismatch when a layer is inconsistent
  /// (wrong group, wrong channel count, negative weight, empty layer list).
  SuperSystemDescriptor(GroupSpec group, std::size_t channels, std::vector<GtiLayer> layers);

  const GroupSpec& group() const { return group_; }
  std::size_t channels() const { return channels_; }
  const std::vector<GtiLayer>& layers() const { return layers_; }
  std::size_t generator_count() const;
  /// Σ_j |P_j|·|Γ_j|: number of coefficients of the analysis operator.
  std::size_t coefficient_count() const;

 private:
  GroupSpec group_;
  std::size_t channels_;
  std::vector<GtiLayer> layers_;
};

/// windows[j][n] is ψ_j^{(n)}.
using WindowBank = std::vector<std::vector<Signal>>;

/// G(Ψ, Γ, Λ) = {T_γ M_χ ψ_j}.
struct GaborSpec {
  WindowBank windows;
  Subgroup translations;
  Subgroup modulations;
};

/// U(Ψ, 𝒜, Γ) = {D_α T_γ ψ_j}.
struct WaveletSpec {
  WindowBank windows;
  std::vector<Automorphism> dilations;
  Subgroup translations;
};

/// W(Ψ, 𝒜, Γ, Λ) = {D_α T_γ M_χ ψ_j}.
struct WavePacketSpec {
  WindowBank windows;
  std::vector<Automorphism> dilations;
  Subgroup translations;
  Subgroup modulations;
};

WavePacketSpec as_wavepacket(const GaborSpec& spec);
WavePacketSpec as_wavepacket(const WaveletSpec& spec);

/// Channel count of a window bank; throws InvalidArgument if ragged or empty.
std::size_t bank_channels(const WindowBank& windows);

/// One layer on Γ with generators M_χ ψ_j, (j, χ) ∈ J × Λ in j-major order.
SuperSystemDescriptor gabor_system(const GaborSpec& spec);
/// One layer per α on α^{-1}Γ with generators D_α ψ_j.
SuperSystemDescriptor wavelet_system(const WaveletSpec& spec);
/// One layer per α on α^{-1}Γ with generators D_α M_χ ψ_j (commutator
/// D_α T_γ = T_{α^{-1}γ} D_α).
SuperSystemDescriptor wavepacket_system(const WavePacketSpec& spec);

/// Same layers and weights, windows of channel `channel` only (N = 1).
SuperSystemDescriptor restrict_to_channel(const SuperSystemDescriptor& system, std::size_t channel);

/// Same structure, every window multiplied by `factor`.
SuperSystemDescriptor scale_windows(const SuperSystemDescriptor& system, Complex factor);

}  // namespace gti
