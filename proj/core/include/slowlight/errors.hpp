#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slowlight {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or configuration; nothing was computed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The computation was attempted but cannot be trusted or completed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GridError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Closed-form figures of merit only exist for Γ₂ = Γ₃ and equal strengths.
class AsymmetricMediumError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TruncationRiskError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Raised by the time-domain solver when the requested discretisation is too
// coarse. Carries the settings that would have been accepted.
class ResolutionError : public NumericalError {
 public:
  ResolutionError(const std::string& what, std::size_t required_nz, double max_dt_ps)
      : NumericalError(what), required_nz_(required_nz), max_dt_ps_(max_dt_ps) {}

  std::size_t required_nz() const noexcept { return required_nz_; }
  double max_dt_ps() const noexcept { return max_dt_ps_; }

 private:
  std::size_t required_nz_;
  double max_dt_ps_;
};

class AmbiguityError : public NumericalError {
 public:
  AmbiguityError(const std::string& what, std::vector<double> candidates)
      : NumericalError(what), candidates_(std::move(candidates)) {}

  const std::vector<double>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<double> candidates_;
};

}  // namespace slowlight
