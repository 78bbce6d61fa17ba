#pragma once

#include <stdexcept>
#include <string>

namespace sbsfield {

/// Frequency or angular quadrature could not reach the requested tolerance.
struct QuadratureFailure : std::runtime_error {
  explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

/// omega - k.v0 vanished: superluminal or degenerate mode input.
struct DopplerSingularity : std::domain_error {
  explicit DopplerSingularity(const std::string& what) : std::domain_error(what) {}
};

/// Fock-space truncation too small for the requested state/displacement.
struct TruncationTooSmall : std::domain_error {
  explicit TruncationTooSmall(const std::string& what) : std::domain_error(what) {}
};

/// A supposed density matrix has eigenvalues significantly below zero.
struct NumericalIndefiniteness : std::runtime_error {
  explicit NumericalIndefiniteness(const std::string& what) : std::runtime_error(what) {}
};

/// Polarization frame is rank deficient (e.g. antipodal patch centers).
struct DegenerateFrame : std::domain_error {
  explicit DegenerateFrame(const std::string& what) : std::domain_error(what) {}
};

/// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sbsfield
