#pragma once

// Finite abelian groups G = Z_{n_1} x ... x Z_{n_d}, their duals, subgroups,
// annihilators and automorphisms.
//
// The dual group is identified with G through the pairing
//   χ_ξ(x) = exp(2πi Σ_k ξ_k x_k / n_k),
// so dual elements use the same residue tuples and the same flat indices.
// Every set-valued result (subgroups, annihilators) is computed in exact
// integer arithmetic.

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace gti {

using Index = std::size_t;
using Residue = std::int64_t;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Largest |G| accepted; every operation enumerates the group.
inline constexpr Index kMaxGroupOrder = Index{1} << 22;

struct GroupElement {
  std::vector<Residue> residues;

  GroupElement() = default;
  GroupElement(std::initializer_list<Residue> r) : residues(r) {}
  explicit GroupElement(std::vector<Residue> r) : residues(std::move(r)) {}

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

class GroupSpec {
 public:
  /// Throws InvalidArgument on an empty list, a non-positive order, or
  /// |G| > kMaxGroupOrder.
  explicit GroupSpec(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Index cardinality() const { return cardinality_; }
  /// Least common multiple of the orders; characters take values in the
  /// exponent-th roots of unity.
  std::int64_t exponent() const { return exponent_; }

  bool is_valid(const GroupElement& x) const;
  /// Lexicographic index, first coordinate most significant.
  Index index_of(const GroupElement& x) const;
  GroupElement element(Index i) const;
  /// Reduces arbitrary integers componentwise into range.
  GroupElement reduce(std::span<const std::int64_t> raw) const;

  Index add(Index a, Index b) const;
  Index subtract(Index a, Index b) const;
  Index negate(Index a) const;

  /// Integer e in [0, exponent) with χ_ξ(x) = exp(2πi e / exponent).
  std::int64_t pairing(Index xi, Index x) const;

  bool operator==(const GroupSpec& other) const { return orders_ == other.orders_; }

 private:
  std::vector<std::int64_t> orders_;
  std::vector<Index> strides_;
  std::vector<std::int64_t> pairing_weights_;  // exponent / n_k
  Index cardinality_ = 1;
  std::int64_t exponent_ = 1;
};

GroupSpec make_group(std::vector<std::int64_t> orders);

/// χ_ξ(x). Throws DimensionMismatch if either tuple is invalid for G.
std::complex<double> character_eval(const GroupSpec& group, const GroupElement& xi,
                                    const GroupElement& x);
std::complex<double> character_eval(const GroupSpec& group, Index xi, Index x);

/// exp(2πi e / exponent) for e in [0, exponent), tabulated once per call site.
std::vector<std::complex<double>> unit_roots(std::int64_t exponent);

class Subgroup {
 public:
  const GroupSpec& parent() const { return parent_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  /// Sorted flat indices, always containing 0.
  const std::vector<Index>& elements() const { return elements_; }
  Index size() const { return elements_.size(); }
  /// V(Γ) = |G| / |Γ|; an integer for finite groups.
  Index covolume() const { return parent_.cardinality() / elements_.size(); }

  bool contains(Index x) const { return membership_[x] != 0; }
  bool contains(const GroupElement& x) const;

  /// Γ^⊥ as a subgroup of the (self-identified) dual. Cached.
  const Subgroup& annihilator() const;

  bool operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
  }

 private:
  friend Subgroup subgroup_from_generators(const GroupSpec&, std::vector<GroupElement>);

  Subgroup(GroupSpec parent, std::vector<GroupElement> generators, std::vector<Index> elements,
           std::vector<char> membership);

  struct Cache;

  GroupSpec parent_;
  std::vector<GroupElement> generators_;
  std::vector<Index> elements_;
  std::vector<char> membership_;
  std::shared_ptr<Cache> cache_;
};

/// Additive closure of `gens` (breadth first). An empty list gives {0}.
Subgroup subgroup_from_generators(const GroupSpec& group, std::vector<GroupElement> gens);
Subgroup whole_group(const GroupSpec& group);
Subgroup trivial_subgroup(const GroupSpec& group);

/// Γ^⊥ = {ξ : χ_ξ(γ) = 1 ∀γ ∈ Γ}, decided by Σ_k ξ_k γ_k L/n_k ≡ 0 (mod L).
Subgroup annihilator(const GroupSpec& group, const Subgroup& subgroup);

/// Greedy generating set for an arbitrary subgroup given by its elements.
std::vector<GroupElement> generating_set(const GroupSpec& group, std::span<const Index> elements);

class Automorphism {
 public:
  const GroupSpec& parent() const { return parent_; }
  const IntMatrix& matrix() const { return matrix_; }
  /// β = α*: character(ξ, A x) = character(β ξ, x).
  const IntMatrix& adjoint_matrix() const { return adjoint_; }

  Index apply(Index x) const { return forward_[x]; }
  Index apply_inverse(Index x) const { return inverse_[x]; }
  Index adjoint_apply(Index xi) const { return adjoint_forward_[xi]; }
  Index adjoint_apply_inverse(Index xi) const { return adjoint_inverse_[xi]; }
  GroupElement apply(const GroupElement& x) const;

  /// Δ(α); counting measure is preserved by a bijection.
  double modulus() const { return 1.0; }

  const std::vector<Index>& permutation() const { return forward_; }
  const std::vector<Index>& inverse_permutation() const { return inverse_; }

 private:
  friend Automorphism automorphism_from_matrix(const GroupSpec&, IntMatrix);

  explicit Automorphism(GroupSpec parent) : parent_(std::move(parent)) {}

  GroupSpec parent_;
  IntMatrix matrix_;
  IntMatrix adjoint_;
  std::vector<Index> forward_;
  std::vector<Index> inverse_;
  std::vector<Index> adjoint_forward_;
  std::vector<Index> adjoint_inverse_;
};

/// Validates A_{kl} n_l ≡ 0 (mod n_k) and bijectivity. Throws InvalidArgument.
Automorphism automorphism_from_matrix(const GroupSpec& group, IntMatrix matrix);
Automorphism identity_automorphism(const GroupSpec& group);

/// α^{-1}Γ.
Subgroup preimage(const Automorphism& alpha, const Subgroup& subgroup);
/// βΛ for a subgroup Λ of the dual.
Subgroup adjoint_image(const Automorphism& alpha, const Subgroup& dual_subgroup);

}  // namespace gti
