#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bgpa {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative tolerance for modulus and eigen checks.
inline constexpr double kDefaultTolerance = 1e-9;
/// Convergence threshold for the Perron power iteration.
inline constexpr double kPowerIterationThreshold = 1e-13;
/// Absolute tolerance for left/right trace gaps (after dividing by the modulus).
inline constexpr double kTraceGapTolerance = 1e-8;
/// Relative eigenvalue gap used when splitting central elements.
inline constexpr double kClusterGap = 1e-6;

enum class Parity { Even, Odd };

/// Shading of a box space: `Plus` spaces are based at even vertices.
enum class Sign { Plus, Minus };

constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
constexpr Parity parity_of(Sign s) { return s == Sign::Plus ? Parity::Even : Parity::Odd; }
constexpr Sign sign_of(Parity p) { return p == Parity::Even ? Sign::Plus : Sign::Minus; }

inline std::string_view to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }
inline std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

class Error : public std::runtime_error {
 public:
  enum class Kind {
    InvalidGraph,
    Disconnected,
    InvalidArgument,
    InvalidAutomorphism,
    NotClosed,
    BoundExceeded,
    Precondition,
    Io,
  };

  Error(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(Error::Kind kind);

}  // namespace bgpa
