#include "gti_cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gti/error.hpp"

namespace gti::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) fail(where, "expected an integer");
  return node.get<std::int64_t>();
}

double as_real(const json& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  return node.get<double>();
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

GroupElement parse_element(const GroupSpec& group, const json& node, const std::string& where) {
  std::vector<std::int64_t> raw;
  if (node.is_number_integer()) {
    raw.push_back(node.get<std::int64_t>());
  } else if (node.is_array()) {
    for (std::size_t k = 0; k < node.size(); ++k) raw.push_back(as_int(node[k], where + "[" + std::to_string(k) + "]"));
  } else {
    fail(where, "expected a residue tuple");
  }
  if (raw.size() != group.rank()) {
    fail(where, "tuple has " + std::to_string(raw.size()) + " residues, group rank is " + std::to_string(group.rank()));
  }
  return group.reduce(raw);
}

Subgroup parse_subgroup(const GroupSpec& group, const json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected a list of residue tuples");
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < node.size(); ++i) {
    gens.push_back(parse_element(group, node[i], where + "[" + std::to_string(i) + "]"));
  }
  return subgroup_from_generators(group, std::move(gens));
}

Automorphism parse_automorphism(const GroupSpec& group, const json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected an integer matrix");
  IntMatrix m;
  for (std::size_t r = 0; r < node.size(); ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!node[r].is_array()) fail(row_where, "expected a matrix row");
    std::vector<std::int64_t> row;
    for (std::size_t c = 0; c < node[r].size(); ++c) {
      row.push_back(as_int(node[r][c], row_where + "[" + std::to_string(c) + "]"));
    }
    m.push_back(std::move(row));
  }
  try {
    return automorphism_from_matrix(group, std::move(m));
  } catch (const gti::Error& e) {
    fail(where, e.what());
  }
}

json element_json(const GroupElement& x) { return json(x.residues); }

json subgroup_json(const Subgroup& s) {
  json out = json::array();
  for (const auto& g : s.generators()) out.push_back(element_json(g));
  return out;
}

// One entry of a window bank: a window when N = 1, else a list of N windows.
std::vector<Signal> parse_channel_list(const GroupSpec& group, std::size_t channels, const json& node,
                                       const std::string& where, std::uint64_t seed) {
  std::vector<Signal> out;
  if (node.is_array()) {
    if (node.size() != channels) {
      fail(where, "expected " + std::to_string(channels) + " windows, got " + std::to_string(node.size()));
    }
    for (std::size_t n = 0; n < node.size(); ++n) {
      out.push_back(parse_window(group, node[n], where + "[" + std::to_string(n) + "]", seed));
    }
  } else {
    if (channels != 1) fail(where, "expected a list of " + std::to_string(channels) + " windows");
    out.push_back(parse_window(group, node, where, seed));
  }
  return out;
}

WindowBank parse_bank(const GroupSpec& group, std::size_t channels, const json& spec, const std::string& where,
                      std::uint64_t seed) {
  WindowBank bank;
  if (spec.contains("window")) {
    bank.push_back(parse_channel_list(group, channels, spec["window"], where + ".window", seed));
    return bank;
  }
  const auto& node = field(spec, "windows", where);
  if (!node.is_array() || node.empty()) fail(where + ".windows", "expected a nonempty list");
  for (std::size_t j = 0; j < node.size(); ++j) {
    bank.push_back(parse_channel_list(group, channels, node[j], where + ".windows[" + std::to_string(j) + "]", seed));
  }
  return bank;
}

std::vector<Automorphism> parse_dilations(const GroupSpec& group, const json& spec, const std::string& where) {
  const auto& node = field(spec, "automorphism_matrices", where);
  if (!node.is_array() || node.empty()) fail(where + ".automorphism_matrices", "expected a nonempty list");
  std::vector<Automorphism> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(parse_automorphism(group, node[i], where + ".automorphism_matrices[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<GtiLayer> parse_layers(const GroupSpec& group, std::size_t channels, const json& node,
                                   std::uint64_t seed) {
  if (!node.is_array() || node.empty()) fail("layers", "expected a nonempty list");
  std::vector<GtiLayer> layers;
  for (std::size_t j = 0; j < node.size(); ++j) {
    const std::string lw = "layers[" + std::to_string(j) + "]";
    const auto& ln = node[j];
    GtiLayer layer{parse_subgroup(group, field(ln, "subgroup_generators", lw), lw + ".subgroup_generators"), {}};
    const auto& gens = field(ln, "generators", lw);
    if (!gens.is_array()) fail(lw + ".generators", "expected a list");
    for (std::size_t p = 0; p < gens.size(); ++p) {
      const std::string gw = lw + ".generators[" + std::to_string(p) + "]";
      Generator gen;
      if (gens[p].contains("weight")) gen.weight = as_real(gens[p]["weight"], gw + ".weight");
      if (!(gen.weight >= 0.0)) fail(gw + ".weight", "must be nonnegative");
      if (gens[p].contains("window")) {
        gen.windows = parse_channel_list(group, channels, gens[p]["window"], gw + ".window", seed);
      } else {
        const auto& wn = field(gens[p], "windows", gw);
        if (!wn.is_array()) fail(gw + ".windows", "expected a list");
        gen.windows = parse_channel_list(group, channels, wn, gw + ".windows", seed);
      }
      layer.generators.push_back(std::move(gen));
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<std::int64_t> parse_residue_list(const std::string& text, const std::string& where) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(where, "bad residue \"" + tok + "\"");
    }
  }
  return out;
}

}  // namespace

Signal random_window(const GroupSpec& group, std::uint64_t seed) {
  std::uint64_t state = seed;
  Signal w(group);
  auto unit = [&] { return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-52 - 1.0; };
  for (auto& v : w.values()) {
    const double re = unit();
    const double im = unit();
    v = Complex(re, im);
  }
  return w;
}

Signal parse_window(const GroupSpec& group, const json& node, const std::string& where, std::uint64_t seed) {
  if (node.is_string()) {
    const auto text = node.get<std::string>();
    if (text == "delta") return delta(group);
    if (text == "constant") return constant(group);
    if (text == "random") return random_window(group, seed ^ fnv1a(where));
    if (text.rfind("random:", 0) == 0) {
      const auto arg = text.substr(7);
      try {
        std::size_t used = 0;
        const auto s = std::stoull(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
        return random_window(group, s);
      } catch (const std::exception&) {
        fail(where, "bad random seed \"" + arg + "\"");
      }
    }
    if (text.rfind("indicator:", 0) == 0) {
      std::vector<GroupElement> gens;
      std::stringstream ss(text.substr(10));
      std::string part;
      while (std::getline(ss, part, ';')) {
        if (part.empty()) continue;
        auto raw = parse_residue_list(part, where);
        if (raw.size() != group.rank()) fail(where, "indicator generator \"" + part + "\" has the wrong rank");
        gens.push_back(group.reduce(raw));
      }
      const auto sub = subgroup_from_generators(group, std::move(gens));
      Signal w(group);
      for (auto x : sub.elements()) w[x] = 1.0;
      return w;
    }
    fail(where, "unknown window shorthand \"" + text + "\"");
  }
  if (!node.is_object()) fail(where, "expected {re, im} or a shorthand string");
  const auto& re = field(node, "re", where);
  if (!re.is_array() || re.size() != group.cardinality()) {
    fail(where + ".re", "expected " + std::to_string(group.cardinality()) + " samples, got " +
                            std::to_string(re.is_array() ? re.size() : 0));
  }
  Signal w(group);
  for (std::size_t x = 0; x < re.size(); ++x) w[x] = as_real(re[x], where + ".re[" + std::to_string(x) + "]");
  if (node.contains("im")) {
    const auto& im = node["im"];
    if (!im.is_array() || im.size() != group.cardinality()) {
      fail(where + ".im", "expected " + std::to_string(group.cardinality()) + " samples, got " +
                              std::to_string(im.is_array() ? im.size() : 0));
    }
    for (std::size_t x = 0; x < im.size(); ++x) {
      w[x] = Complex(w[x].real(), as_real(im[x], where + ".im[" + std::to_string(x) + "]"));
    }
  }
  return w;
}

json serialize_window(const Signal& w) {
  json re = json::array();
  json im = json::array();
  for (const auto& v : w.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

LoadedConfig parse_config(const json& doc, const ParseOptions& options) {
  try {
    if (!doc.is_object()) fail("<root>", "expected an object");
    const auto& gn = field(doc, "group", "<root>");
    if (!gn.is_array()) fail("group", "expected a list of orders");
    std::vector<std::int64_t> orders;
    for (std::size_t k = 0; k < gn.size(); ++k) orders.push_back(as_int(gn[k], "group[" + std::to_string(k) + "]"));
    GroupSpec group = [&] {
      try {
        return make_group(orders);
      } catch (const gti::Error& e) {
        fail("group", e.what());
      }
    }();

    std::size_t channels = 1;
    if (doc.contains("channels")) {
      const auto c = as_int(doc["channels"], "channels");
      if (c < 1) fail("channels", "must be at least 1");
      channels = static_cast<std::size_t>(c);
    }
    const std::uint64_t seed = options.seed;

    int forms = 0;
    for (const char* k : {"layers", "gabor", "wavelet", "wavepacket"}) forms += doc.contains(k) ? 1 : 0;
    if (forms != 1) fail("<root>", "expected exactly one of layers, gabor, wavelet, wavepacket");

    if (doc.contains("layers")) {
      auto layers = parse_layers(group, channels, doc["layers"], seed);
      try {
        return {SuperSystemDescriptor(group, channels, std::move(layers)), StructuredKind::kNone, std::nullopt};
      } catch (const gti::Error& e) {
        fail("layers", e.what());
      }
    }

    const char* key = doc.contains("gabor") ? "gabor" : doc.contains("wavelet") ? "wavelet" : "wavepacket";
    const auto& spec = doc[key];
    const std::string where = key;
    if (!spec.is_object()) fail(where, "expected an object");
    WavePacketSpec wp{parse_bank(group, channels, spec, where, seed),
                      {identity_automorphism(group)},
                      parse_subgroup(group, field(spec, "translation_generators", where),
                                     where + ".translation_generators"),
                      trivial_subgroup(group)};
    StructuredKind kind = StructuredKind::kGabor;
    if (where != "wavelet") {
      wp.modulations = parse_subgroup(group, field(spec, "modulation_generators", where),
                                      where + ".modulation_generators");
    }
    if (where != "gabor") {
      wp.dilations = parse_dilations(group, spec, where);
      kind = where == "wavelet" ? StructuredKind::kWavelet : StructuredKind::kWavePacket;
    }
    try {
      auto system = wavepacket_system(wp);
      return {std::move(system), kind, std::move(wp)};
    } catch (const gti::Error& e) {
      fail(where, e.what());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

LoadedConfig load_config(const std::string& path, const ParseOptions& options) {
  return parse_config(read_json_file(path), options);
}

json serialize_system(const SuperSystemDescriptor& system) {
  json layers = json::array();
  for (const auto& layer : system.layers()) {
    json gens = json::array();
    for (const auto& gen : layer.generators) {
      json windows = json::array();
      for (const auto& w : gen.windows) windows.push_back(serialize_window(w));
      gens.push_back(json{{"weight", gen.weight}, {"windows", std::move(windows)}});
    }
    layers.push_back(json{{"subgroup_generators", subgroup_json(layer.subgroup)}, {"generators", std::move(gens)}});
  }
  return json{{"group", system.group().orders()}, {"channels", system.channels()}, {"layers", std::move(layers)}};
}

json serialize_gabor(const GaborSpec& spec) {
  const std::size_t channels = bank_channels(spec.windows);
  json windows = json::array();
  for (const auto& psi : spec.windows) {
    json chans = json::array();
    for (const auto& w : psi) chans.push_back(serialize_window(w));
    windows.push_back(std::move(chans));
  }
  return json{{"group", spec.translations.parent().orders()},
              {"channels", channels},
              {"gabor",
               {{"windows", std::move(windows)},
                {"translation_generators", subgroup_json(spec.translations)},
                {"modulation_generators", subgroup_json(spec.modulations)}}}};
}

json serialize_signals(const SuperSignal& f) {
  json chans = json::array();
  for (const auto& c : f.channels()) chans.push_back(serialize_window(c));
  return json{{"group", f.group().orders()}, {"channels", std::move(chans)}};
}

SuperSignal parse_signals(const json& doc) {
  try {
    const auto& gn = field(doc, "group", "<root>");
    std::vector<std::int64_t> orders;
    for (std::size_t k = 0; k < gn.size(); ++k) orders.push_back(as_int(gn[k], "group[" + std::to_string(k) + "]"));
    const auto group = make_group(orders);
    const auto& cn = field(doc, "channels", "<root>");
    if (!cn.is_array() || cn.empty()) fail("channels", "expected a nonempty list of signals");
    std::vector<Signal> chans;
    for (std::size_t n = 0; n < cn.size(); ++n) {
      chans.push_back(parse_window(group, cn[n], "channels[" + std::to_string(n) + "]"));
    }
    return SuperSignal(std::move(chans));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed signal file: ") + e.what());
  }
}

json serialize_coefficients(const CoefficientMap& c) {
  json layers = json::array();
  for (const auto& layer : c.layers) {
    json values = json::array();
    for (const auto& v : layer.values) {
      json re = json::array();
      json im = json::array();
      for (const auto& z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      values.push_back(json{{"re", std::move(re)}, {"im", std::move(im)}});
    }
    layers.push_back(json{{"values", std::move(values)}});
  }
  return json{{"layers", std::move(layers)}};
}

CoefficientMap parse_coefficients(const SuperSystemDescriptor& system, const json& doc) {
  try {
    const auto& ln = field(doc, "layers", "<root>");
    if (!ln.is_array() || ln.size() != system.layers().size()) {
      fail("layers", "expected " + std::to_string(system.layers().size()) + " layers");
    }
    CoefficientMap out;
    for (std::size_t j = 0; j < ln.size(); ++j) {
      const std::string lw = "layers[" + std::to_string(j) + "]";
      const auto& layer = system.layers()[j];
      LayerCoefficients lc;
      lc.covolume = static_cast<double>(layer.subgroup.covolume());
      for (const auto& g : layer.generators) lc.weights.push_back(g.weight);
      const auto& vn = field(ln[j], "values", lw);
      if (!vn.is_array() || vn.size() != layer.generators.size()) {
        fail(lw + ".values", "expected " + std::to_string(layer.generators.size()) + " coefficient vectors");
      }
      for (std::size_t p = 0; p < vn.size(); ++p) {
        const std::string pw = lw + ".values[" + std::to_string(p) + "]";
        const auto& re = field(vn[p], "re", pw);
        const std::size_t m = layer.subgroup.size();
        if (!re.is_array() || re.size() != m) fail(pw + ".re", "expected " + std::to_string(m) + " values");
        ComplexVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = as_real(re[i], pw + ".re");
        if (vn[p].contains("im")) {
          const auto& im = vn[p]["im"];
          if (!im.is_array() || im.size() != m) fail(pw + ".im", "expected " + std::to_string(m) + " values");
          for (std::size_t i = 0; i < m; ++i) v[i] = Complex(v[i].real(), as_real(im[i], pw + ".im"));
        }
        lc.values.push_back(std::move(v));
      }
      out.layers.push_back(std::move(lc));
    }
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed coefficient file: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot write");
  out << doc.dump(2) << '\n';
}

std::string digest(const json& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(doc.dump())));
  return buf;
}

bool identical(const SuperSystemDescriptor& a, const SuperSystemDescriptor& b) {
  if (!(a.group() == b.group()) || a.channels() != b.channels() || a.layers().size() != b.layers().size()) {
    return false;
  }
  for (std::size_t j = 0; j < a.layers().size(); ++j) {
    const auto& la = a.layers()[j];
    const auto& lb = b.layers()[j];
    if (!(la.subgroup == lb.subgroup) || la.subgroup.generators() != lb.subgroup.generators()) return false;
    if (la.generators.size() != lb.generators.size()) return false;
    for (std::size_t p = 0; p < la.generators.size(); ++p) {
      const auto& ga = la.generators[p];
      const auto& gb = lb.generators[p];
      if (ga.weight != gb.weight) return false;
      for (std::size_t n = 0; n < ga.windows.size(); ++n) {
        if (ga.windows[n].values() != gb.windows[n].values()) return false;
      }
    }
  }
  return true;
}

}  // namespace gti::cli
