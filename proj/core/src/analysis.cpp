#include "gti/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gti/error.hpp"

namespace gti {

// ---------------------------------------------------------------------------
// SuperSignal

SuperSignal::SuperSignal(std::vector<Signal> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw InvalidArgument("super signal needs at least one channel");
  for (const auto& c : channels_) {
    if (!(c.group() == channels_.front().group())) throw DimensionMismatch("channels live on different groups");
  }
}

SuperSignal SuperSignal::zeros(const GroupSpec& group, std::size_t channels) {
  return SuperSignal(std::vector<Signal>(channels, Signal(group)));
}

SuperSignal SuperSignal::from_flat(const GroupSpec& group, std::size_t channels, const Eigen::VectorXcd& flat) {
  const std::size_t order = group.cardinality();
  if (static_cast<std::size_t>(flat.size()) != channels * order) {
    throw DimensionMismatch("flat vector has the wrong length for N·|G|");
  }
  auto out = zeros(group, channels);
  for (std::size_t n = 0; n < channels; ++n) {
    for (std::size_t x = 0; x < order; ++x) out[n][x] = flat(static_cast<Eigen::Index>(n * order + x));
  }
  return out;
}

double SuperSignal::norm_squared() const {
  double s = 0.0;
  for (const auto& c : channels_) s += c.norm_squared();
  return s;
}

Eigen::VectorXcd SuperSignal::flatten() const {
  const std::size_t order = group().cardinality();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(channels_.size() * order));
  for (std::size_t n = 0; n < channels_.size(); ++n) {
    for (std::size_t x = 0; x < order; ++x) v(static_cast<Eigen::Index>(n * order + x)) = channels_[n][x];
  }
  return v;
}

std::size_t CoefficientMap::size() const {
  std::size_t n = 0;
  for (const auto& layer : layers) {
    for (const auto& v : layer.values) n += v.size();
  }
  return n;
}

// ---------------------------------------------------------------------------
// Analysis / synthesis

namespace {

void require_compatible(const SuperSystemDescriptor& system, const SuperSignal& f) {
  if (!(system.group() == f.group())) throw DimensionMismatch("signal and system live on different groups");
  if (system.channels() != f.channel_count()) {
    throw DimensionMismatch("system has " + std::to_string(system.channels()) + " channels, signal has " +
                            std::to_string(f.channel_count()));
  }
}

void require_cap(std::size_t size, std::size_t cap) {
  if (size > cap) {
    throw CapExceeded("N·|G| = " + std::to_string(size) + " exceeds the oracle cap " + std::to_string(cap));
  }
}

}  // namespace

CoefficientMap analysis_coeffs(const SuperSystemDescriptor& system, const SuperSignal& f) {
  require_compatible(system, f);
  std::vector<Spectrum> f_hat;
  for (const auto& c : f.channels()) f_hat.push_back(dft(c));

  CoefficientMap out;
  for (const auto& layer : system.layers()) {
    LayerCoefficients lc;
    lc.covolume = static_cast<double>(layer.subgroup.covolume());
    for (const auto& gen : layer.generators) {
      // ⟨f, T_γ g⟩ = idft(f^ · conj(g^))(γ)
      Spectrum product(system.group());
      for (std::size_t n = 0; n < system.channels(); ++n) {
        const auto g_hat = dft(gen.windows[n]);
        for (std::size_t xi = 0; xi < product.size(); ++xi) product[xi] += f_hat[n][xi] * std::conj(g_hat[xi]);
      }
      const auto correlation = idft(product);
      ComplexVector values;
      values.reserve(layer.subgroup.size());
      for (const auto gamma : layer.subgroup.elements()) values.push_back(correlation[gamma]);
      lc.weights.push_back(gen.weight);
      lc.values.push_back(std::move(values));
    }
    out.layers.push_back(std::move(lc));
  }
  return out;
}

SuperSignal synthesis(const SuperSystemDescriptor& system, const CoefficientMap& coefficients) {
  if (coefficients.layers.size() != system.layers().size()) {
    throw DimensionMismatch("coefficient map has a different number of layers than the system");
  }
  const auto& group = system.group();
  std::vector<Spectrum> accum(system.channels(), Spectrum(group));
  for (std::size_t j = 0; j < system.layers().size(); ++j) {
    const auto& layer = system.layers()[j];
    const auto& lc = coefficients.layers[j];
    if (lc.values.size() != layer.generators.size()) {
      throw DimensionMismatch("layer " + std::to_string(j) + ": generator count mismatch in coefficients");
    }
    const double covolume = static_cast<double>(layer.subgroup.covolume());
    for (std::size_t p = 0; p < layer.generators.size(); ++p) {
      if (lc.values[p].size() != layer.subgroup.size()) {
        throw DimensionMismatch("layer " + std::to_string(j) + ", generator " + std::to_string(p) +
                                ": coefficient count differs from |Γ_j|");
      }
      // Σ_γ c(γ) T_γ g  has spectrum  c_ext^ · g^
      Signal extended(group);
      const auto& elements = layer.subgroup.elements();
      for (std::size_t i = 0; i < elements.size(); ++i) extended[elements[i]] = lc.values[p][i];
      const auto c_hat = dft(extended);
      const double scale = covolume * layer.generators[p].weight;
      for (std::size_t n = 0; n < system.channels(); ++n) {
        const auto g_hat = dft(layer.generators[p].windows[n]);
        for (std::size_t xi = 0; xi < c_hat.size(); ++xi) accum[n][xi] += scale * c_hat[xi] * g_hat[xi];
      }
    }
  }
  std::vector<Signal> channels;
  channels.reserve(accum.size());
  for (const auto& a : accum) channels.push_back(idft(a));
  return SuperSignal(std::move(channels));
}

// ---------------------------------------------------------------------------
// Dense operators

ComplexMatrix frame_operator_matrix(const SuperSystemDescriptor& system, std::size_t cap) {
  const std::size_t order = system.group().cardinality();
  const std::size_t dim = system.channels() * order;
  require_cap(dim, cap);
  ComplexMatrix S(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    auto e = SuperSignal::zeros(system.group(), system.channels());
    e[k / order][k % order] = 1.0;
    S.col(static_cast<Eigen::Index>(k)) = synthesis(system, analysis_coeffs(system, e)).flatten();
  }
  return S;
}

namespace {

// Columns T_γ 𝐰 (flattened) for γ ∈ Γ.
ComplexMatrix translate_columns(const Subgroup& subgroup, const std::vector<Signal>& windows) {
  const auto& group = subgroup.parent();
  const std::size_t order = group.cardinality();
  const auto& elements = subgroup.elements();
  ComplexMatrix cols = ComplexMatrix::Zero(static_cast<Eigen::Index>(windows.size() * order),
                                           static_cast<Eigen::Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t n = 0; n < windows.size(); ++n) {
      for (std::size_t x = 0; x < order; ++x) {
        cols(static_cast<Eigen::Index>(n * order + group.add(x, elements[i])), static_cast<Eigen::Index>(i)) =
            windows[n][x];
      }
    }
  }
  return cols;
}

}  // namespace

void require_same_structure(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H) {
  if (!(F.group() == H.group())) throw StructureMismatch("systems live on different groups");
  if (F.channels() != H.channels()) throw StructureMismatch("systems have different channel counts");
  if (F.layers().size() != H.layers().size()) throw StructureMismatch("systems have different layer counts");
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    const auto& a = F.layers()[j];
    const auto& b = H.layers()[j];
    const std::string where = "layer " + std::to_string(j);
    if (!(a.subgroup == b.subgroup)) throw StructureMismatch(where + ": translation subgroups differ");
    if (a.generators.size() != b.generators.size()) throw StructureMismatch(where + ": generator counts differ");
    for (std::size_t p = 0; p < a.generators.size(); ++p) {
      const double wa = a.generators[p].weight;
      const double wb = b.generators[p].weight;
      if (std::abs(wa - wb) > 1e-12 * std::max({1.0, std::abs(wa), std::abs(wb)})) {
        throw StructureMismatch(where + ", generator " + std::to_string(p) + ": weights differ");
      }
    }
  }
}

ComplexMatrix mixed_dual_gramian(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                                 std::size_t cap) {
  require_same_structure(F, H);
  const std::size_t dim = F.channels() * F.group().cardinality();
  require_cap(dim, cap);
  ComplexMatrix M = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    const auto& lf = F.layers()[j];
    const auto& lh = H.layers()[j];
    const double covolume = static_cast<double>(lf.subgroup.covolume());
    for (std::size_t p = 0; p < lf.generators.size(); ++p) {
      const auto U = translate_columns(lf.subgroup, lf.generators[p].windows);
      const auto V = translate_columns(lh.subgroup, lh.generators[p].windows);
      M.noalias() += (covolume * lf.generators[p].weight) * U * V.adjoint();
    }
  }
  return M;
}

FrameBounds frame_bounds(const SuperSystemDescriptor& system, std::size_t cap) {
  const ComplexMatrix S = frame_operator_matrix(system, cap);
  const ComplexMatrix hermitian = 0.5 * (S + S.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return FrameBounds{std::max(0.0, ev.minCoeff()), std::max(0.0, ev.maxCoeff())};
}

// ---------------------------------------------------------------------------
// Multiplexing

CertifiedPair::CertifiedPair(SuperSystemDescriptor F, SuperSystemDescriptor H, bool certified, double residual)
    : F_(std::move(F)), H_(std::move(H)), certified_(certified), residual_(residual) {}

CertifiedPair CertifiedPair::by_oracle(SuperSystemDescriptor F, SuperSystemDescriptor H, double tolerance,
                                       std::size_t cap) {
  const ComplexMatrix M = mixed_dual_gramian(F, H, cap);
  const ComplexMatrix I = ComplexMatrix::Identity(M.rows(), M.cols());
  const double residual = (M - I).cwiseAbs().maxCoeff();
  if (!(residual <= tolerance)) {
    throw NotAFrame("pair does not reproduce L2(G)^(N): max |Θ - I| = " + std::to_string(residual));
  }
  return CertifiedPair(std::move(F), std::move(H), true, residual);
}

CertifiedPair CertifiedPair::from_residual(SuperSystemDescriptor F, SuperSystemDescriptor H, double residual,
                                           double tolerance) {
  require_same_structure(F, H);
  if (!(residual <= tolerance)) {
    throw NotAFrame("pair does not reproduce L2(G)^(N): residual " + std::to_string(residual));
  }
  return CertifiedPair(std::move(F), std::move(H), true, residual);
}

CertifiedPair CertifiedPair::unchecked(SuperSystemDescriptor F, SuperSystemDescriptor H) {
  require_same_structure(F, H);
  return CertifiedPair(std::move(F), std::move(H), false, -1.0);
}

CoefficientMap multiplex_encode(const CertifiedPair& pair, const SuperSignal& signals) {
  return analysis_coeffs(pair.analysis_system(), signals);
}

SuperSignal multiplex_decode(const CertifiedPair& pair, const CoefficientMap& coefficients) {
  return synthesis(pair.synthesis_system(), coefficients);
}

// ---------------------------------------------------------------------------
// Canonical Gabor windows

namespace {

WindowBank apply_spectral_function(const GaborSpec& spec, std::size_t cap, double power) {
  const auto system = gabor_system(spec);
  const ComplexMatrix S = frame_operator_matrix(system, cap);
  const ComplexMatrix hermitian = 0.5 * (S + S.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  const auto& ev = solver.eigenvalues();
  const FrameBounds bounds{std::max(0.0, ev.minCoeff()), std::max(0.0, ev.maxCoeff())};
  if (!bounds.is_frame()) {
    throw NotAFrame("Gabor system is not a frame: lower bound " + std::to_string(bounds.lower) +
                    ", upper bound " + std::to_string(bounds.upper));
  }
  Eigen::VectorXd scaled(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) scaled(i) = std::pow(ev(i), power);
  const ComplexMatrix& Q = solver.eigenvectors();
  const ComplexMatrix op = Q * scaled.asDiagonal() * Q.adjoint();

  const auto& group = system.group();
  const std::size_t channels = system.channels();
  WindowBank out;
  for (const auto& psi : spec.windows) {
    const auto result = SuperSignal::from_flat(group, channels, op * SuperSignal(psi).flatten());
    out.push_back(result.channels());
  }
  return out;
}

}  // namespace

WindowBank gabor_canonical_dual(const GaborSpec& spec, std::size_t cap) {
  return apply_spectral_function(spec, cap, -1.0);
}

WindowBank gabor_canonical_tight(const GaborSpec& spec, std::size_t cap) {
  return apply_spectral_function(spec, cap, -0.5);
}

}  // namespace gti
