#pragma once

#include <stdexcept>
#include <string>

namespace gti {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad orders, out-of-range residues, negative weights, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live on different groups or have different ranks/lengths.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Two systems are not indexed by the same (J, P_j, Γ_j) data.
class StructureMismatch : public Error {
 public:
  using Error::Error;
};

/// A dense oracle was requested on a space larger than the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The lower frame bound is numerically zero.
class NotAFrame : public Error {
 public:
  using Error::Error;
};

/// Some t_α with α ≠ 0 does not vanish, so the Gramian has no symbol.
class NotAMultiplier : public Error {
 public:
  using Error::Error;
};

}  // namespace gti
