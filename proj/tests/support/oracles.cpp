#include "oracles.hpp"

#include <Eigen/Eigenvalues>

namespace gti::testing {

namespace {

Eigen::VectorXcd shifted_flat(const GroupSpec& group, const std::vector<Signal>& windows, Index gamma) {
  const std::size_t order = group.cardinality();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(windows.size() * order));
  for (std::size_t n = 0; n < windows.size(); ++n) {
    // (T_γ g)(x) = g(x − γ)
    for (Index x = 0; x < order; ++x) {
      v(static_cast<Eigen::Index>(n * order + x)) = windows[n][group.subtract(x, gamma)];
    }
  }
  return v;
}

}  // namespace

ComplexMatrix gramian_by_definition(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H) {
  const auto& group = F.group();
  const auto dim = static_cast<Eigen::Index>(F.channels() * group.cardinality());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    const auto& fl = F.layers()[j];
    const auto& hl = H.layers()[j];
    const double covolume = static_cast<double>(group.cardinality()) / static_cast<double>(fl.subgroup.size());
    for (std::size_t p = 0; p < fl.generators.size(); ++p) {
      const double w = covolume * fl.generators[p].weight;
      for (auto gamma : fl.subgroup.elements()) {
        const auto g = shifted_flat(group, fl.generators[p].windows, gamma);
        const auto h = shifted_flat(group, hl.generators[p].windows, gamma);
        out += w * g * h.adjoint();
      }
    }
  }
  return out;
}

ComplexMatrix frame_operator_by_definition(const SuperSystemDescriptor& F) { return gramian_by_definition(F, F); }

Complex t_alpha_by_definition(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, Index alpha,
                              std::size_t h_channel, std::size_t g_channel, Index xi) {
  const auto& group = F.group();
  Complex acc = 0.0;
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    const auto& fl = F.layers()[j];
    const auto& hl = H.layers()[j];
    bool annihilates = true;
    for (auto gamma : fl.subgroup.elements()) {
      if (group.pairing(alpha, gamma) != 0) annihilates = false;
    }
    if (!annihilates) continue;
    for (std::size_t p = 0; p < fl.generators.size(); ++p) {
      const auto g = dft_naive(fl.generators[p].windows[g_channel]);
      const auto h = dft_naive(hl.generators[p].windows[h_channel]);
      acc += fl.generators[p].weight * std::conj(h[xi]) * g[group.add(xi, alpha)];
    }
  }
  return acc;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double identity_residual(const ComplexMatrix& m) {
  return max_abs(m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

ComplexMatrix channel_block(const ComplexMatrix& m, std::size_t order, std::size_t row, std::size_t col) {
  const auto n = static_cast<Eigen::Index>(order);
  return m.block(static_cast<Eigen::Index>(row) * n, static_cast<Eigen::Index>(col) * n, n, n);
}

std::pair<double, double> hermitian_extremes(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace gti::testing
