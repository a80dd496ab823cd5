#include "gti/systems.hpp"

#include <cmath>
#include <string>

#include "gti/error.hpp"

namespace gti {

Signal translate(Index gamma, const Signal& f) {
  const auto& group = f.group();
  if (gamma >= group.cardinality()) throw DimensionMismatch("translation outside the group");
  Signal out(group);
  for (Index x = 0; x < group.cardinality(); ++x) out[group.add(x, gamma)] = f[x];
  return out;
}

Signal translate(const GroupElement& gamma, const Signal& f) {
  return translate(f.group().index_of(gamma), f);
}

Signal modulate(Index chi, const Signal& f) {
  const auto& group = f.group();
  if (chi >= group.cardinality()) throw DimensionMismatch("character outside the dual group");
  const auto roots = unit_roots(group.exponent());
  Signal out(group);
  for (Index x = 0; x < group.cardinality(); ++x) {
    out[x] = roots[static_cast<std::size_t>(group.pairing(chi, x))] * f[x];
  }
  return out;
}

Signal modulate(const GroupElement& chi, const Signal& f) {
  return modulate(f.group().index_of(chi), f);
}

Signal dilate(const Automorphism& alpha, const Signal& f) {
  if (!(alpha.parent() == f.group())) throw DimensionMismatch("automorphism acts on a different group");
  const double scale = 1.0 / std::sqrt(alpha.modulus());
  Signal out(f.group());
  for (Index x = 0; x < f.size(); ++x) out[x] = scale * f[alpha.apply(x)];
  return out;
}

SuperSystemDescriptor::SuperSystemDescriptor(GroupSpec group, std::size_t channels,
                                             std::vector<GtiLayer> layers)
    : group_(std::move(group)), channels_(channels), layers_(std::move(layers)) {
  if (channels_ == 0) throw InvalidArgument("a system needs at least one channel");
  if (layers_.empty()) throw InvalidArgument("a system needs at least one layer");
  for (std::size_t j = 0; j < layers_.size(); ++j) {
    const auto& layer = layers_[j];
    if (!(layer.subgroup.parent() == group_)) {
      throw DimensionMismatch("layer " + std::to_string(j) + ": subgroup lives on a different group");
    }
    for (std::size_t p = 0; p < layer.generators.size(); ++p) {
      const auto& gen = layer.generators[p];
      const std::string where = "layer " + std::to_string(j) + ", generator " + std::to_string(p);
      if (!(gen.weight >= 0.0)) throw InvalidArgument(where + ": weight must be nonnegative");
      if (gen.windows.size() != channels_) {
        throw DimensionMismatch(where + ": expected " + std::to_string(channels_) + " windows, got " +
                                std::to_string(gen.windows.size()));
      }
      for (const auto& w : gen.windows) {
        if (!(w.group() == group_)) throw DimensionMismatch(where + ": window on a different group");
      }
    }
  }
}

std::size_t SuperSystemDescriptor::generator_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.generators.size();
  return n;
}

std::size_t SuperSystemDescriptor::coefficient_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.generators.size() * layer.subgroup.size();
  return n;
}

std::size_t bank_channels(const WindowBank& windows) {
  if (windows.empty()) throw InvalidArgument("window bank is empty");
  const std::size_t n = windows.front().size();
  if (n == 0) throw InvalidArgument("window bank has no channels");
  for (std::size_t j = 0; j < windows.size(); ++j) {
    if (windows[j].size() != n) {
      throw InvalidArgument("mismatched channel counts: window " + std::to_string(j) + " has " +
                            std::to_string(windows[j].size()) + " channels, expected " + std::to_string(n));
    }
  }
  return n;
}

WavePacketSpec as_wavepacket(const GaborSpec& spec) {
  const auto& group = spec.translations.parent();
  return WavePacketSpec{spec.windows, {identity_automorphism(group)}, spec.translations, spec.modulations};
}

WavePacketSpec as_wavepacket(const WaveletSpec& spec) {
  const auto& group = spec.translations.parent();
  return WavePacketSpec{spec.windows, spec.dilations, spec.translations, trivial_subgroup(group)};
}

SuperSystemDescriptor wavepacket_system(const WavePacketSpec& spec) {
  const auto& group = spec.translations.parent();
  if (!(spec.modulations.parent() == group)) throw DimensionMismatch("Γ and Λ live on different groups");
  const std::size_t channels = bank_channels(spec.windows);
  if (spec.dilations.empty()) throw InvalidArgument("dilation set is empty");

  std::vector<GtiLayer> layers;
  layers.reserve(spec.dilations.size());
  for (const auto& alpha : spec.dilations) {
    if (!(alpha.parent() == group)) throw DimensionMismatch("automorphism acts on a different group");
    GtiLayer layer{preimage(alpha, spec.translations), {}};
    layer.generators.reserve(spec.windows.size() * spec.modulations.size());
    for (const auto& psi : spec.windows) {
      for (const auto chi : spec.modulations.elements()) {
        Generator gen{1.0 / alpha.modulus(), {}};
        gen.windows.reserve(channels);
        for (const auto& w : psi) gen.windows.push_back(dilate(alpha, modulate(chi, w)));
        layer.generators.push_back(std::move(gen));
      }
    }
    layers.push_back(std::move(layer));
  }
  return SuperSystemDescriptor(group, channels, std::move(layers));
}

SuperSystemDescriptor gabor_system(const GaborSpec& spec) { return wavepacket_system(as_wavepacket(spec)); }

SuperSystemDescriptor wavelet_system(const WaveletSpec& spec) { return wavepacket_system(as_wavepacket(spec)); }

SuperSystemDescriptor restrict_to_channel(const SuperSystemDescriptor& system, std::size_t channel) {
  if (channel >= system.channels()) throw InvalidArgument("channel index out of range");
  std::vector<GtiLayer> layers;
  for (const auto& layer : system.layers()) {
    GtiLayer out{layer.subgroup, {}};
    for (const auto& gen : layer.generators) out.generators.push_back({gen.weight, {gen.windows[channel]}});
    layers.push_back(std::move(out));
  }
  return SuperSystemDescriptor(system.group(), 1, std::move(layers));
}

SuperSystemDescriptor scale_windows(const SuperSystemDescriptor& system, Complex factor) {
  std::vector<GtiLayer> layers = system.layers();
  for (auto& layer : layers) {
    for (auto& gen : layer.generators) {
      for (auto& w : gen.windows) {
        for (auto& v : w.values()) v *= factor;
      }
    }
  }
  return SuperSystemDescriptor(system.group(), system.channels(), std::move(layers));
}

}  // namespace gti
