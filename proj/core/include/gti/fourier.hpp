#pragma once

// Fourier transform on G = Z_{n_1} x ... x Z_{n_d}.
//
//   f^(ξ) = Σ_x f(x) conj(χ_ξ(x))          (counting measure on G)
//   f(x)  = (1/|G|) Σ_ξ F(ξ) χ_ξ(x)         (|G|^{-1} counting on Ĝ)
//
// With this normalization Parseval reads Σ|f|² = (1/|G|) Σ|f^|².

#include <complex>
#include <span>
#include <vector>

#include "gti/group.hpp"

namespace gti {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct SpatialDomain {};
struct FrequencyDomain {};

/// Complex function on the elements of a group, lexicographically indexed.
/// The tag keeps space-side and frequency-side vectors from mixing.
template <class Domain>
class GroupFunction {
 public:
  explicit GroupFunction(GroupSpec group)
      : group_(std::move(group)), values_(group_.cardinality()) {}

  GroupFunction(GroupSpec group, ComplexVector values);

  const GroupSpec& group() const { return group_; }
  std::size_t size() const { return values_.size(); }

  const ComplexVector& values() const { return values_; }
  ComplexVector& values() { return values_; }

  Complex& operator[](Index i) { return values_[i]; }
  const Complex& operator[](Index i) const { return values_[i]; }

  double norm_squared() const;

  bool operator==(const GroupFunction&) const = default;

 private:
  GroupSpec group_;
  ComplexVector values_;
};

using Signal = GroupFunction<SpatialDomain>;
using Spectrum = GroupFunction<FrequencyDomain>;

extern template class GroupFunction<SpatialDomain>;
extern template class GroupFunction<FrequencyDomain>;

/// Σ_x a(x) conj(b(x)).
Complex inner_product(const Signal& a, const Signal& b);

Signal delta(const GroupSpec& group, Index at = 0);
Signal constant(const GroupSpec& group, Complex value = 1.0);

/// kMaxRadix go through Bluestein's chirp-z on a power-of-two length.
/// kMaxRadix are transformed by the direct O(n²) sum.
Spectrum dft(const Signal& f);
Signal idft(const Spectrum& spectrum);

/// Reference O(|G|²) transforms evaluated from exact integer phases.
Spectrum dft_naive(const Signal& f);
Signal idft_naive(const Spectrum& spectrum);

inline constexpr std::int64_t kMaxRadix = 64;

/// idft(symbol · dft(f)).
Signal apply_multiplier(const Spectrum& symbol, const Signal& f);

}  // namespace gti
