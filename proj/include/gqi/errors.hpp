#pragma once

#include <stdexcept>
#include <string>

namespace gqi {

/// Input has the wrong shape (non-square, odd dimension, bad mode index).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Williamson (or related) factorization failed; carries the offending eigenvalue.
class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, double offending)
      : std::runtime_error(what), offending_eigenvalue(offending) {}
  double offending_eigenvalue;
};

/// A metric term with a ~1 symplectic eigenvalue was excited by a nonzero coefficient.
class SingularMetricError : public std::runtime_error {
 public:
  SingularMetricError(const std::string& what, const std::string& term)
      : std::runtime_error(what), term_name(term) {}
  std::string term_name;
};

/// Fock cutoff too small for the requested construction; carries the measured deficit.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, double measured_deficit)
      : std::runtime_error(what), deficit(measured_deficit) {}
  double deficit;
};

}  // namespace gqi
