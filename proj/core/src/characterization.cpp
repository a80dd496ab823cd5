#include "gti/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "gti/error.hpp"

namespace gti {

std::optional<std::size_t> TAlphaTable::find(Index alpha) const {
  const auto it = std::lower_bound(alphas.begin(), alphas.end(), alpha);
  if (it == alphas.end() || *it != alpha) return std::nullopt;
  return static_cast<std::size_t>(it - alphas.begin());
}

namespace {

// ξ ↦ ξ + α for every ξ.
std::vector<Index> shift_table(const GroupSpec& group, Index alpha) {
  std::vector<Index> shift(group.cardinality());
  for (Index xi = 0; xi < shift.size(); ++xi) shift[xi] = group.add(xi, alpha);
  return shift;
}

struct LayerSpectra {
  // [p][n]
  std::vector<std::vector<Spectrum>> g_hat;
  std::vector<std::vector<Spectrum>> h_hat;
  std::vector<double> weights;
};

std::vector<LayerSpectra> layer_spectra(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H) {
  std::vector<LayerSpectra> out;
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    LayerSpectra ls;
    for (std::size_t p = 0; p < F.layers()[j].generators.size(); ++p) {
      const auto& gf = F.layers()[j].generators[p];
      const auto& gh = H.layers()[j].generators[p];
      std::vector<Spectrum> g, h;
      for (std::size_t n = 0; n < F.channels(); ++n) {
        g.push_back(dft(gf.windows[n]));
        h.push_back(dft(gh.windows[n]));
      }
      ls.g_hat.push_back(std::move(g));
      ls.h_hat.push_back(std::move(h));
      ls.weights.push_back(gf.weight);
    }
    out.push_back(std::move(ls));
  }
  return out;
}

}  // namespace

TAlphaTable t_alpha_table(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H) {
  require_same_structure(F, H);
  const auto& group = F.group();
  const std::size_t N = F.channels();
  const std::size_t order = group.cardinality();

  TAlphaTable table{group, N, {}, {}, {}};
  std::vector<char> in_union(order, 0);
  for (const auto& layer : F.layers()) {
    for (const auto a : layer.subgroup.annihilator().elements()) in_union[a] = 1;
  }
  for (Index a = 0; a < order; ++a) {
    if (in_union[a]) table.alphas.push_back(a);
  }

  const auto spectra = layer_spectra(F, H);
  table.contributing_layers.resize(table.alphas.size());
  table.values.assign(table.alphas.size(), std::vector<Spectrum>(N * N, Spectrum(group)));
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    const Index alpha = table.alphas[a];
    const auto shift = shift_table(group, alpha);
    for (std::size_t j = 0; j < F.layers().size(); ++j) {
      if (!F.layers()[j].subgroup.annihilator().contains(alpha)) continue;
      table.contributing_layers[a].push_back(j);
      const auto& ls = spectra[j];
      for (std::size_t p = 0; p < ls.weights.size(); ++p) {
        const double w = ls.weights[p];
        for (std::size_t n1 = 0; n1 < N; ++n1) {
          const auto& h = ls.h_hat[p][n1];
          for (std::size_t n2 = 0; n2 < N; ++n2) {
            const auto& g = ls.g_hat[p][n2];
            auto& t = table.values[a][n1 * N + n2];
            for (Index xi = 0; xi < order; ++xi) t[xi] += w * std::conj(h[xi]) * g[shift[xi]];
          }
        }
      }
    }
  }
  return table;
}

double default_tolerance(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, std::size_t cap) {
  const std::size_t dim = F.channels() * F.group().cardinality();
  if (dim > cap) return 1e-9;
  const double bf = frame_bounds(F, cap).upper;
  const double bh = frame_bounds(H, cap).upper;
  return 1e-9 * std::sqrt(std::max(1.0, bf * bh));
}

Verdict evaluate_table(const TAlphaTable& table, BlockKind diagonal_target, double tolerance, std::size_t top_k) {
  const std::size_t N = table.channels;
  const std::size_t order = table.group.cardinality();
  Verdict verdict;
  verdict.tolerance = tolerance;

  std::vector<double> block_max(N * N, 0.0);

  struct Candidate {
    double residual;
    std::size_t a, xi, n1, n2;
  };
  const auto worse = [](const Candidate& l, const Candidate& r) {
    if (l.residual != r.residual) return l.residual > r.residual;
    return std::tie(l.a, l.xi, l.n1, l.n2) < std::tie(r.a, r.xi, r.n1, r.n2);
  };
  std::vector<Candidate> candidates;
  const auto trim = [&] {
    if (candidates.size() <= top_k) return;
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top_k), candidates.end(),
                     worse);
    candidates.resize(top_k);
  };

  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    const bool alpha_zero = table.alphas[a] == 0;
    for (std::size_t n1 = 0; n1 < N; ++n1) {
      for (std::size_t n2 = 0; n2 < N; ++n2) {
        const bool want_one = diagonal_target == BlockKind::kDuality && n1 == n2 && alpha_zero;
        const auto& t = table.at(a, n1, n2);
        double& bmax = block_max[n1 * N + n2];
        for (Index xi = 0; xi < order; ++xi) {
          const double r = std::abs(want_one ? t[xi] - 1.0 : t[xi]);
          bmax = std::max(bmax, r);
          if (top_k > 0) {
            candidates.push_back({r, a, xi, n1, n2});
            if (candidates.size() >= 4 * top_k + 64) trim();
          }
        }
      }
    }
  }
  trim();
  std::sort(candidates.begin(), candidates.end(), worse);

  for (const auto& c : candidates) {
    verdict.witnesses.push_back(
        {c.n1, c.n2, table.group.element(table.alphas[c.a]), table.group.element(c.xi), c.residual});
  }
  for (std::size_t n1 = 0; n1 < N; ++n1) {
    for (std::size_t n2 = 0; n2 < N; ++n2) {
      const double r = block_max[n1 * N + n2];
      const BlockKind kind = (diagonal_target == BlockKind::kDuality && n1 == n2) ? BlockKind::kDuality
                                                                                 : BlockKind::kOrthogonality;
      verdict.blocks.push_back({n1, n2, kind, r <= tolerance, r});
      verdict.max_residual = std::max(verdict.max_residual, r);
    }
  }
  verdict.pass = verdict.max_residual <= tolerance;
  return verdict;
}

namespace {

double resolve_tolerance(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const CheckOptions& o) {
  return o.tolerance ? *o.tolerance : default_tolerance(F, H, o.cap);
}

}  // namespace

Verdict check_orthogonality(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                            const CheckOptions& options) {
  const auto table = t_alpha_table(F, H);
  return evaluate_table(table, BlockKind::kOrthogonality, resolve_tolerance(F, H, options), options.top_k);
}

Verdict check_super_duality(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                            const CheckOptions& options) {
  const auto table = t_alpha_table(F, H);
  return evaluate_table(table, BlockKind::kDuality, resolve_tolerance(F, H, options), options.top_k);
}

Verdict check_parseval_super(const SuperSystemDescriptor& F, const CheckOptions& options) {
  return check_super_duality(F, F, options);
}

Spectrum multiplier_symbol(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H,
                           const CheckOptions& options) {
  if (F.channels() != 1) throw InvalidArgument("multiplier_symbol is defined for single-channel systems");
  const auto table = t_alpha_table(F, H);
  const double tol = resolve_tolerance(F, H, options);
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    if (table.alphas[a] == 0) continue;
    const auto& t = table.at(a, 0, 0);
    for (Index xi = 0; xi < t.size(); ++xi) {
      if (std::abs(t[xi]) > tol) {
        throw NotAMultiplier("t_alpha does not vanish at alpha index " + std::to_string(table.alphas[a]) +
                             ", xi index " + std::to_string(xi) + " (|t| = " + std::to_string(std::abs(t[xi])) +
                             "); the mixed dual Gramian does not commute with translations");
      }
    }
  }
  const auto zero = table.find(0);
  if (!zero) return Spectrum(F.group());
  return table.at(*zero, 0, 0);
}

double commutation_defect(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, std::size_t cap) {
  const ComplexMatrix theta = mixed_dual_gramian(F, H, cap);
  const auto& group = F.group();
  const std::size_t order = group.cardinality();
  const std::size_t N = F.channels();
  const auto idx = [order](std::size_t n, Index y) { return static_cast<Eigen::Index>(n * order + y); };

  double worst = 0.0;
  for (Index x = 0; x < order; ++x) {
    // (Θ T_x)[(n,z),(m,y)] = Θ[(n,z),(m,y+x)],  (T_x Θ)[(n,z),(m,y)] = Θ[(n,z−x),(m,y)]
    double sum = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      for (Index z = 0; z < order; ++z) {
        const Index z_back = group.subtract(z, x);
        for (std::size_t m = 0; m < N; ++m) {
          for (Index y = 0; y < order; ++y) {
            const Complex d = theta(idx(n, z), idx(m, group.add(y, x))) - theta(idx(n, z_back), idx(m, y));
            sum += std::norm(d);
          }
        }
      }
    }
    worst = std::max(worst, std::sqrt(sum));
  }
  return worst;
}

WfDiagnostic wf_diagnostic(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const SuperSignal& f,
                           std::size_t cap) {
  if (f.channel_count() != F.channels()) throw DimensionMismatch("test signal has the wrong channel count");
  if (!(f.group() == F.group())) throw DimensionMismatch("test signal lives on a different group");
  const auto& group = F.group();
  const std::size_t order = group.cardinality();
  const std::size_t channels = F.channels();
  const ComplexMatrix theta = mixed_dual_gramian(F, H, cap);
  const auto table = t_alpha_table(F, H);

  WfDiagnostic out;
  out.w_values.resize(order);
  Eigen::VectorXcd shifted(static_cast<Eigen::Index>(channels * order));
  for (Index x = 0; x < order; ++x) {
    for (std::size_t n = 0; n < channels; ++n) {
      for (Index y = 0; y < order; ++y) shifted(static_cast<Eigen::Index>(n * order + group.add(y, x))) = f[n][y];
    }
    const Eigen::VectorXcd image = theta * shifted;
    out.w_values[x] = shifted.dot(image);  // Σ image · conj(shifted)
  }

  std::vector<Spectrum> f_hat;
  for (const auto& c : f.channels()) f_hat.push_back(dft(c));
  const double inv_order = 1.0 / static_cast<double>(order);
  out.alphas = table.alphas;
  out.w_hat.resize(table.alphas.size());
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    const auto shift = shift_table(group, table.alphas[a]);
    Complex acc = 0.0;
    for (std::size_t n1 = 0; n1 < channels; ++n1) {
      for (std::size_t n2 = 0; n2 < channels; ++n2) {
        const auto& t = table.at(a, n1, n2);
        for (Index xi = 0; xi < order; ++xi) acc += f_hat[n1][xi] * std::conj(f_hat[n2][shift[xi]]) * t[xi];
      }
    }
    out.w_hat[a] = acc * inv_order;
  }

  const auto roots = unit_roots(group.exponent());
  for (Index x = 0; x < order; ++x) {
    Complex series = 0.0;
    for (std::size_t a = 0; a < table.alphas.size(); ++a) {
      series += roots[static_cast<std::size_t>(group.pairing(table.alphas[a], x))] * out.w_hat[a];
    }
    out.series_residual = std::max(out.series_residual, std::abs(out.w_values[x] - series));
  }
  return out;
}

WfDiagnostic wf_diagnostic(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const Signal& f,
                           std::size_t cap) {
  if (F.channels() != 1) throw InvalidArgument("a single test signal needs a single-channel system");
  return wf_diagnostic(F, H, SuperSignal({f}), cap);
}

double dual_alpha_lic_sum(const SuperSystemDescriptor& F, const SuperSystemDescriptor& H, const Signal& f) {
  require_same_structure(F, H);
  if (F.channels() != 1) throw InvalidArgument("dual_alpha_lic_sum is defined for single-channel systems");
  if (!(f.group() == F.group())) throw DimensionMismatch("test signal lives on a different group");
  const auto& group = F.group();
  const std::size_t order = group.cardinality();
  const auto f_hat = dft(f);
  const auto spectra = layer_spectra(F, H);
  double total = 0.0;
  for (std::size_t j = 0; j < F.layers().size(); ++j) {
    const auto& ls = spectra[j];
    for (const auto alpha : F.layers()[j].subgroup.annihilator().elements()) {
      const auto shift = shift_table(group, alpha);
      for (std::size_t p = 0; p < ls.weights.size(); ++p) {
        const auto& g = ls.g_hat[p][0];
        const auto& h = ls.h_hat[p][0];
        double acc = 0.0;
        for (Index xi = 0; xi < order; ++xi) {
          acc += std::abs(f_hat[xi] * f_hat[shift[xi]] * g[xi] * h[shift[xi]]);
        }
        total += ls.weights[p] * acc / static_cast<double>(order);
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Structured systems

namespace {

void require_same_wavepacket_structure(const WavePacketSpec& F, const WavePacketSpec& H) {
  if (!(F.translations == H.translations)) throw StructureMismatch("translation subgroups differ");
  if (!(F.modulations == H.modulations)) throw StructureMismatch("modulation subgroups differ");
  if (F.dilations.size() != H.dilations.size()) throw StructureMismatch("dilation sets differ in size");
  for (std::size_t i = 0; i < F.dilations.size(); ++i) {
    if (F.dilations[i].matrix() != H.dilations[i].matrix()) {
      throw StructureMismatch("dilation " + std::to_string(i) + " differs");
    }
  }
  if (F.windows.size() != H.windows.size()) throw StructureMismatch("window counts differ");
  if (bank_channels(F.windows) != bank_channels(H.windows)) throw StructureMismatch("channel counts differ");
}

}  // namespace

TAlphaTable wavepacket_t_alpha_table(const WavePacketSpec& F, const WavePacketSpec& H) {
  require_same_wavepacket_structure(F, H);
  const auto& group = F.translations.parent();
  const std::size_t order = group.cardinality();
  const std::size_t N = bank_channels(F.windows);
  const auto& gamma_perp = F.translations.annihilator();

  // Γ_α^⊥ = βΓ^⊥ membership per dilation.
  std::vector<std::vector<char>> member(F.dilations.size(), std::vector<char>(order, 0));
  std::vector<char> in_union(order, 0);
  for (std::size_t d = 0; d < F.dilations.size(); ++d) {
    for (const auto eta : gamma_perp.elements()) {
      const Index a = F.dilations[d].adjoint_apply(eta);
      member[d][a] = 1;
      in_union[a] = 1;
    }
  }

  std::vector<std::vector<Spectrum>> psi_hat, phi_hat;  // [j][n]
  for (std::size_t j = 0; j < F.windows.size(); ++j) {
    std::vector<Spectrum> ps, ph;
    for (std::size_t n = 0; n < N; ++n) {
      ps.push_back(dft(F.windows[j][n]));
      ph.push_back(dft(H.windows[j][n]));
    }
    psi_hat.push_back(std::move(ps));
    phi_hat.push_back(std::move(ph));
  }

  TAlphaTable table{group, N, {}, {}, {}};
  for (Index a = 0; a < order; ++a) {
    if (in_union[a]) table.alphas.push_back(a);
  }
  table.contributing_layers.resize(table.alphas.size());
  table.values.assign(table.alphas.size(), std::vector<Spectrum>(N * N, Spectrum(group)));

  const auto& chis = F.modulations.elements();
  for (std::size_t a = 0; a < table.alphas.size(); ++a) {
    const Index alpha_tilde = table.alphas[a];
    for (std::size_t d = 0; d < F.dilations.size(); ++d) {
      if (!member[d][alpha_tilde]) continue;
      table.contributing_layers[a].push_back(d);
      const auto& dil = F.dilations[d];
      const double mass = 1.0 / dil.modulus();
      for (Index xi = 0; xi < order; ++xi) {
        const Index base = dil.adjoint_apply_inverse(xi);
        const Index moved = dil.adjoint_apply_inverse(group.add(xi, alpha_tilde));
        for (const auto chi : chis) {
          const Index u = group.subtract(base, chi);
          const Index v = group.subtract(moved, chi);
          for (std::size_t j = 0; j < F.windows.size(); ++j) {
            for (std::size_t n1 = 0; n1 < N; ++n1) {
              const Complex left = mass * std::conj(phi_hat[j][n1][u]);
              for (std::size_t n2 = 0; n2 < N; ++n2) {
                table.values[a][n1 * N + n2][xi] += left * psi_hat[j][n2][v];
              }
            }
          }
        }
      }
    }
  }
  return table;
}

Verdict check_wavepacket_duality(const WavePacketSpec& F, const WavePacketSpec& H, const CheckOptions& options) {
  const auto table = wavepacket_t_alpha_table(F, H);
  double tol = 0.0;
  if (options.tolerance) {
    tol = *options.tolerance;
  } else {
    const std::size_t dim = bank_channels(F.windows) * F.translations.parent().cardinality();
    tol = dim > options.cap ? 1e-9 : default_tolerance(wavepacket_system(F), wavepacket_system(H), options.cap);
  }
  return evaluate_table(table, BlockKind::kDuality, tol, options.top_k);
}

Verdict check_gabor_duality(const GaborSpec& F, const GaborSpec& H, const CheckOptions& options) {
  return check_wavepacket_duality(as_wavepacket(F), as_wavepacket(H), options);
}

Verdict check_wavelet_duality(const WaveletSpec& F, const WaveletSpec& H, const CheckOptions& options) {
  return check_wavepacket_duality(as_wavepacket(F), as_wavepacket(H), options);
}

}  // namespace gti
