#include "gti/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "gti/error.hpp"

namespace gti {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::string describe(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw InvalidArgument("group needs at least one cyclic factor");
  for (const auto n : orders_) {
    if (n < 1) throw InvalidArgument("cyclic order must be >= 1, got " + std::to_string(n));
    if (cardinality_ > kMaxGroupOrder / static_cast<Index>(n)) {
      throw InvalidArgument("group " + describe(orders_) + " exceeds the enumeration cap 2^22");
    }
    cardinality_ *= static_cast<Index>(n);
    exponent_ = std::lcm(exponent_, n);
  }
  strides_.assign(orders_.size(), 1);
  for (std::size_t k = orders_.size(); k-- > 1;) {
    strides_[k - 1] = strides_[k] * static_cast<Index>(orders_[k]);
  }
  pairing_weights_.reserve(orders_.size());
  for (const auto n : orders_) pairing_weights_.push_back(exponent_ / n);
}

bool GroupSpec::is_valid(const GroupElement& x) const {
  if (x.residues.size() != orders_.size()) return false;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    if (x.residues[k] < 0 || x.residues[k] >= orders_[k]) return false;
  }
  return true;
}

Index GroupSpec::index_of(const GroupElement& x) const {
  if (!is_valid(x)) {
    throw DimensionMismatch("element " + describe(x.residues) + " is not in group " +
                            describe(orders_));
  }
  Index i = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    i += static_cast<Index>(x.residues[k]) * strides_[k];
  }
  return i;
}

GroupElement GroupSpec::element(Index i) const {
  GroupElement x;
  x.residues.resize(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    x.residues[k] = static_cast<Residue>((i / strides_[k]) % static_cast<Index>(orders_[k]));
  }
  return x;
}

GroupElement GroupSpec::reduce(std::span<const std::int64_t> raw) const {
  if (raw.size() != orders_.size()) {
    throw DimensionMismatch("tuple of length " + std::to_string(raw.size()) + " for group of rank " +
                            std::to_string(orders_.size()));
  }
  GroupElement x;
  x.residues.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) x.residues[k] = floor_mod(raw[k], orders_[k]);
  return x;
}

Index GroupSpec::add(Index a, Index b) const {
  Index out = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    const Index n = static_cast<Index>(orders_[k]);
    Index r = (a / strides_[k]) % n + (b / strides_[k]) % n;
    if (r >= n) r -= n;
    out += r * strides_[k];
  }
  return out;
}

Index GroupSpec::negate(Index a) const {
  Index out = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    const Index n = static_cast<Index>(orders_[k]);
    const Index r = (a / strides_[k]) % n;
    out += (r == 0 ? 0 : n - r) * strides_[k];
  }
  return out;
}

Index GroupSpec::subtract(Index a, Index b) const { return add(a, negate(b)); }

std::int64_t GroupSpec::pairing(Index xi, Index x) const {
  std::int64_t e = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    const Index n = static_cast<Index>(orders_[k]);
    const auto a = static_cast<std::int64_t>((xi / strides_[k]) % n);
    const auto b = static_cast<std::int64_t>((x / strides_[k]) % n);
    e = (e + ((a * b) % orders_[k]) * pairing_weights_[k]) % exponent_;
  }
  return e;
}

GroupSpec make_group(std::vector<std::int64_t> orders) { return GroupSpec(std::move(orders)); }

std::complex<double> character_eval(const GroupSpec& group, const GroupElement& xi,
                                    const GroupElement& x) {
  return character_eval(group, group.index_of(xi), group.index_of(x));
}

std::complex<double> character_eval(const GroupSpec& group, Index xi, Index x) {
  const auto e = group.pairing(xi, x);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) /
                       static_cast<double>(group.exponent());
  return std::polar(1.0, angle);
}

std::vector<std::complex<double>> unit_roots(std::int64_t exponent) {
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(exponent));
  for (std::int64_t e = 0; e < exponent; ++e) {
    roots[static_cast<std::size_t>(e)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(exponent));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Subgroup

struct Subgroup::Cache {
  std::once_flag once;
  std::unique_ptr<Subgroup> annihilator;
};

Subgroup::Subgroup(GroupSpec parent, std::vector<GroupElement> generators,
                   std::vector<Index> elements, std::vector<char> membership)
    : parent_(std::move(parent)),
      generators_(std::move(generators)),
      elements_(std::move(elements)),
      membership_(std::move(membership)),
      cache_(std::make_shared<Cache>()) {}

bool Subgroup::contains(const GroupElement& x) const {
  return parent_.is_valid(x) && contains(parent_.index_of(x));
}

const Subgroup& Subgroup::annihilator() const {
  std::call_once(cache_->once, [this] {
    const Index order = parent_.cardinality();
    std::vector<Index> gen_indices;
    gen_indices.reserve(generators_.size());
    for (const auto& g : generators_) gen_indices.push_back(parent_.index_of(g));

    std::vector<Index> members;
    for (Index xi = 0; xi < order; ++xi) {
      const bool kills = std::all_of(gen_indices.begin(), gen_indices.end(),
                                     [&](Index g) { return parent_.pairing(xi, g) == 0; });
      if (kills) members.push_back(xi);
    }
    std::vector<char> membership(order, 0);
    for (const auto m : members) membership[m] = 1;
    auto gens = generating_set(parent_, members);
    cache_->annihilator = std::unique_ptr<Subgroup>(
        new Subgroup(parent_, std::move(gens), std::move(members), std::move(membership)));
  });
  return *cache_->annihilator;
}

namespace {

// Breadth-first closure of {0} under x -> x + g.
std::vector<char> closure(const GroupSpec& group, const std::vector<Index>& gens) {
  std::vector<char> member(group.cardinality(), 0);
  std::deque<Index> queue{0};
  member[0] = 1;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    for (const auto g : gens) {
      const Index y = group.add(x, g);
      if (!member[y]) {
        member[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return member;
}

}  // namespace

Subgroup subgroup_from_generators(const GroupSpec& group, std::vector<GroupElement> gens) {
  std::vector<Index> gen_indices;
  gen_indices.reserve(gens.size());
  for (const auto& g : gens) gen_indices.push_back(group.index_of(g));
  auto member = closure(group, gen_indices);
  std::vector<Index> elements;
  for (Index i = 0; i < member.size(); ++i) {
    if (member[i]) elements.push_back(i);
  }
  return Subgroup(group, std::move(gens), std::move(elements), std::move(member));
}

Subgroup whole_group(const GroupSpec& group) {
  std::vector<GroupElement> gens;
  for (std::size_t k = 0; k < group.rank(); ++k) {
    GroupElement e;
    e.residues.assign(group.rank(), 0);
    e.residues[k] = group.orders()[k] > 1 ? 1 : 0;
    gens.push_back(std::move(e));
  }
  return subgroup_from_generators(group, std::move(gens));
}

Subgroup trivial_subgroup(const GroupSpec& group) { return subgroup_from_generators(group, {}); }

Subgroup annihilator(const GroupSpec& group, const Subgroup& subgroup) {
  if (!(subgroup.parent() == group)) throw DimensionMismatch("subgroup does not belong to this group");
  return subgroup.annihilator();
}

std::vector<GroupElement> generating_set(const GroupSpec& group, std::span<const Index> elements) {
  std::vector<Index> chosen;
  std::vector<char> member(group.cardinality(), 0);
  member[0] = 1;
  for (const auto e : elements) {
    if (member[e]) continue;
    chosen.push_back(e);
    member = closure(group, chosen);
  }
  std::vector<GroupElement> out;
  out.reserve(chosen.size());
  for (const auto c : chosen) out.push_back(group.element(c));
  return out;
}

// ---------------------------------------------------------------------------
// Automorphism

namespace {

Index apply_matrix(const GroupSpec& group, const IntMatrix& m, Index x) {
  const auto v = group.element(x);
  const std::size_t d = group.rank();
  std::vector<std::int64_t> out(d, 0);
  for (std::size_t k = 0; k < d; ++k) {
    const std::int64_t n = group.orders()[k];
    std::int64_t acc = 0;
    for (std::size_t l = 0; l < d; ++l) acc = (acc + floor_mod(m[k][l], n) * v.residues[l]) % n;
    out[k] = acc;
  }
  return group.index_of(group.reduce(out));
}

}  // namespace

GroupElement Automorphism::apply(const GroupElement& x) const {
  return parent_.element(apply(parent_.index_of(x)));
}

Automorphism automorphism_from_matrix(const GroupSpec& group, IntMatrix matrix) {
  const std::size_t d = group.rank();
  if (matrix.size() != d) {
    throw InvalidArgument("automorphism matrix has " + std::to_string(matrix.size()) +
                          " rows, group rank is " + std::to_string(d));
  }
  for (const auto& row : matrix) {
    if (row.size() != d) throw InvalidArgument("automorphism matrix is not square");
  }
  const auto& n = group.orders();
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      if (floor_mod(matrix[k][l] % n[k] * (n[l] % n[k]), n[k]) != 0) {
        throw InvalidArgument("matrix entry (" + std::to_string(k) + "," + std::to_string(l) +
                              ") violates A_kl*n_l = 0 mod n_k; not a homomorphism");
      }
    }
  }

  Automorphism alpha(group);
  alpha.matrix_ = std::move(matrix);
  alpha.adjoint_.assign(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      // β_lk = A_kl n_l / n_k, integral by the congruence above.
      const std::int64_t a = floor_mod(alpha.matrix_[k][l], n[k]);
      alpha.adjoint_[l][k] = floor_mod(a * n[l] / n[k], n[l]);
    }
  }

  const Index order = group.cardinality();
  alpha.forward_.resize(order);
  alpha.inverse_.assign(order, order);
  alpha.adjoint_forward_.resize(order);
  alpha.adjoint_inverse_.assign(order, order);
  for (Index x = 0; x < order; ++x) {
    const Index y = apply_matrix(group, alpha.matrix_, x);
    if (alpha.inverse_[y] != order) {
      throw InvalidArgument("matrix map is not bijective: two elements map to " +
                            describe(group.element(y).residues));
    }
    alpha.forward_[x] = y;
    alpha.inverse_[y] = x;
  }
  for (Index xi = 0; xi < order; ++xi) {
    const Index eta = apply_matrix(group, alpha.adjoint_, xi);
    alpha.adjoint_forward_[xi] = eta;
    alpha.adjoint_inverse_[eta] = xi;
  }
  return alpha;
}

Automorphism identity_automorphism(const GroupSpec& group) {
  IntMatrix id(group.rank(), std::vector<std::int64_t>(group.rank(), 0));
  for (std::size_t k = 0; k < group.rank(); ++k) id[k][k] = 1;
  return automorphism_from_matrix(group, std::move(id));
}

Subgroup preimage(const Automorphism& alpha, const Subgroup& subgroup) {
  if (!(alpha.parent() == subgroup.parent())) throw DimensionMismatch("automorphism/subgroup group mismatch");
  const auto& group = subgroup.parent();
  std::vector<GroupElement> gens;
  gens.reserve(subgroup.generators().size());
  for (const auto& g : subgroup.generators()) {
    gens.push_back(group.element(alpha.apply_inverse(group.index_of(g))));
  }
  return subgroup_from_generators(group, std::move(gens));
}

Subgroup adjoint_image(const Automorphism& alpha, const Subgroup& dual_subgroup) {
  if (!(alpha.parent() == dual_subgroup.parent())) throw DimensionMismatch("automorphism/subgroup group mismatch");
  const auto& group = dual_subgroup.parent();
  std::vector<GroupElement> gens;
  gens.reserve(dual_subgroup.generators().size());
  for (const auto& g : dual_subgroup.generators()) {
    gens.push_back(group.element(alpha.adjoint_apply(group.index_of(g))));
  }
  return subgroup_from_generators(group, std::move(gens));
}

}  // namespace gti
