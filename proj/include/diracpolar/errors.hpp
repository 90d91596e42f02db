#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracpolar {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Spinor with Theta^2 + Phi^2 ~ 0: no polar form exists.
struct SingularSpinor : Error {
  using Error::Error;
};

/// Bilinear contraction came out with a non-negligible imaginary part.
struct NonRealBilinear : Error {
  using Error::Error;
};

/// Polar data violates its norm/orthogonality invariants.
struct InvalidPolarData : Error {
  using Error::Error;
};

/// Matrix is not (close to) an element of the spin group.
struct NotSpinGroup : Error {
  using Error::Error;
};

/// Expression text could not be parsed.
struct ParseError : Error {
  std::size_t offset;
  std::vector<std::string> expected;
  ParseError(std::size_t off, std::vector<std::string> exp, const std::string& msg)
      : Error(msg), offset(off), expected(std::move(exp)) {}
};

/// Point violates the chart's domain guard.
struct OutOfDomain : Error {
  using Error::Error;
};

/// Tetrad determinant vanishes at the evaluation point.
struct DegenerateTetrad : Error {
  using Error::Error;
};

/// Vector field fails the Killing equation beyond tolerance.
struct NotKilling : Error {
  using Error::Error;
};

/// Field is not weakly Lie-invariant at the requested point.
struct NotWeaklyInvariant : Error {
  using Error::Error;
};

/// Scenario file is malformed or inconsistent.
struct InvalidScenario : Error {
  using Error::Error;
};

}  // namespace diracpolar
