#include "gti/fourier.hpp"

#include <memory>
#include <numbers>
#include <string>

#include "gti/error.hpp"

namespace gti {

template <class Domain>
GroupFunction<Domain>::GroupFunction(GroupSpec group, ComplexVector values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.cardinality()) {
    throw DimensionMismatch("vector of length " + std::to_string(values_.size()) +
                            " on a group of order " + std::to_string(group_.cardinality()));
  }
}

template <class Domain>
double GroupFunction<Domain>::norm_squared() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s;
}

template class GroupFunction<SpatialDomain>;
template class GroupFunction<FrequencyDomain>;

Complex inner_product(const Signal& a, const Signal& b) {
  if (!(a.group() == b.group())) throw DimensionMismatch("inner product across different groups");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Signal delta(const GroupSpec& group, Index at) {
  Signal f(group);
  f[at] = 1.0;
  return f;
}

Signal constant(const GroupSpec& group, Complex value) {
  return Signal(group, ComplexVector(group.cardinality(), value));
}

namespace {

std::vector<std::int64_t> factorize(std::int64_t n) {
  std::vector<std::int64_t> factors;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

// Forward transform of one axis of length n (kernel exp(-2πi jk/n)).
// Mixed radix when every prime factor is small, otherwise Bluestein's
// chirp-z over a power-of-two plan.
class AxisPlan {
 public:
  explicit AxisPlan(std::int64_t n) : n_(static_cast<std::size_t>(n)), factors_(factorize(n)) {
    twiddles_.resize(n_);
    for (std::size_t e = 0; e < n_; ++e) {
      twiddles_[e] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(e) /
                                         static_cast<double>(n_));
    }
    bool chirp = false;
    for (const auto p : factors_) chirp = chirp || p > kMaxRadix;
    scratch_.resize(n_);
    if (chirp) {
      init_chirp();
    } else if (!factors_.empty()) {
      butterfly_.resize(static_cast<std::size_t>(factors_.back()));
    }
  }

  void run(Complex* data) {
    if (n_ == 1) return;
    if (pow2_) {
      run_chirp(data);
      return;
    }
    recurse(data, 1, scratch_.data(), n_, 0);
    std::copy(scratch_.begin(), scratch_.end(), data);
  }

 private:
  void init_chirp() {
    std::size_t m = 1;
    while (m < 2 * n_ - 1) m <<= 1;
    pow2_ = std::make_unique<AxisPlan>(static_cast<std::int64_t>(m));
    // j² reduced mod 2n keeps the phase argument small.
    chirp_.resize(n_);
    const auto two_n = 2 * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      const auto e = (j * j) % two_n;
      chirp_[j] = std::polar(1.0, -std::numbers::pi * static_cast<double>(e) / static_cast<double>(n_));
    }
    kernel_.assign(m, Complex(0.0));
    kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) kernel_[j] = kernel_[m - j] = std::conj(chirp_[j]);
    pow2_->run(kernel_.data());
    work_.resize(m);
  }

  void run_chirp(Complex* data) {
    const std::size_t m = work_.size();
    std::fill(work_.begin(), work_.end(), Complex(0.0));
    for (std::size_t j = 0; j < n_; ++j) work_[j] = data[j] * chirp_[j];
    pow2_->run(work_.data());
    // Inverse through the forward plan: conj(F(conj(x))).
    for (std::size_t k = 0; k < m; ++k) work_[k] = std::conj(work_[k] * kernel_[k]);
    pow2_->run(work_.data());
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) data[k] = chirp_[k] * std::conj(work_[k]) * scale;
  }

  // Decimation in time: out[0..n) = DFT_n of in[0], in[stride], ...
  void recurse(const Complex* in, std::size_t stride, Complex* out, std::size_t n, std::size_t level) {
    if (n == 1) {
      out[0] = in[0];
      return;
    }
    const auto p = static_cast<std::size_t>(factors_[level]);
    const std::size_t m = n / p;
    for (std::size_t r = 0; r < p; ++r) recurse(in + r * stride, stride * p, out + r * m, m, level + 1);

    const std::size_t step = n_ / n;  // W_n^e = W_N^{e·step}
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t q = 0; q < p; ++q) {
        Complex acc = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
          acc += out[r * m + k] * twiddles_[((r * (k + q * m)) % n) * step];
        }
        butterfly_[q] = acc;
      }
      for (std::size_t q = 0; q < p; ++q) out[q * m + k] = butterfly_[q];
    }
  }

  std::size_t n_;
  std::vector<std::int64_t> factors_;
  ComplexVector twiddles_;
  ComplexVector scratch_;
  ComplexVector butterfly_;
  std::unique_ptr<AxisPlan> pow2_;
  ComplexVector chirp_;
  ComplexVector kernel_;
  ComplexVector work_;
};

void forward_in_place(const GroupSpec& group, ComplexVector& values) {
  const auto& orders = group.orders();
  const std::size_t total = group.cardinality();
  std::size_t inner = total;
  ComplexVector line;
  for (const auto order : orders) {
    const auto n = static_cast<std::size_t>(order);
    inner /= n;
    if (n == 1) continue;
    AxisPlan plan(order);
    line.resize(n);
    const std::size_t block = n * inner;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t i = 0; i < inner; ++i) {
        for (std::size_t t = 0; t < n; ++t) line[t] = values[base + i + t * inner];
        plan.run(line.data());
        for (std::size_t t = 0; t < n; ++t) values[base + i + t * inner] = line[t];
      }
    }
  }
}

}  // namespace

Spectrum dft(const Signal& f) {
  ComplexVector v = f.values();
  forward_in_place(f.group(), v);
  return Spectrum(f.group(), std::move(v));
}

Signal idft(const Spectrum& spectrum) {
  // conj(DFT(conj F)) / |G|
  ComplexVector v(spectrum.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(spectrum[i]);
  forward_in_place(spectrum.group(), v);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& x : v) x = std::conj(x) * scale;
  return Signal(spectrum.group(), std::move(v));
}

Spectrum dft_naive(const Signal& f) {
  const auto& group = f.group();
  const auto roots = unit_roots(group.exponent());
  const auto order = group.cardinality();
  Spectrum out(group);
  for (Index xi = 0; xi < order; ++xi) {
    Complex acc = 0.0;
    for (Index x = 0; x < order; ++x) acc += f[x] * std::conj(roots[static_cast<std::size_t>(group.pairing(xi, x))]);
    out[xi] = acc;
  }
  return out;
}

Signal idft_naive(const Spectrum& spectrum) {
  const auto& group = spectrum.group();
  const auto roots = unit_roots(group.exponent());
  const auto order = group.cardinality();
  Signal out(group);
  for (Index x = 0; x < order; ++x) {
    Complex acc = 0.0;
    for (Index xi = 0; xi < order; ++xi) acc += spectrum[xi] * roots[static_cast<std::size_t>(group.pairing(xi, x))];
    out[x] = acc / static_cast<double>(order);
  }
  return out;
}

Signal apply_multiplier(const Spectrum& symbol, const Signal& f) {
  if (!(symbol.group() == f.group())) throw DimensionMismatch("multiplier symbol and signal live on different groups");
  auto spectrum = dft(f);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= symbol[i];
  return idft(spectrum);
}

}  // namespace gti
