#pragma once

#include <stdexcept>
#include <string>

namespace noonqfi {

/// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense representation requested beyond the memory guard.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Coherence block has vanishing trace; the SLD is undefined.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model has no shipped Lindblad realization (or the requested n-body form).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decay rate evaluated at a flagged pole of the Lorentzian rate.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Fixed-step integration drifted beyond the trace tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t step, double t)
      : std::runtime_error(what), step_(step), t_(t) {}
  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t step_;
  double t_;
};

/// Scenario file could not be parsed or validated. line() is 0 when the
/// problem is not tied to a specific line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Channel snapshot failed the complete-positivity test in strict mode.
class PhysicalityError : public std::runtime_error {
 public:
  PhysicalityError(const std::string& what, double t, double min_eigenvalue)
      : std::runtime_error(what), t_(t), min_eigenvalue_(min_eigenvalue) {}
  double time() const noexcept { return t_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double t_;
  double min_eigenvalue_;
};

}  // namespace noonqfi
