#pragma once

#include <stdexcept>
#include <string>

namespace condphoton {

/// Argument outside the mathematical domain of an operation (negative mean
/// photon number, n_t <= 0, k = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A double-precision result left the representable range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// The conditioning event has (numerically) zero probability.
class ImpossibleOutcome : public std::runtime_error {
 public:
  ImpossibleOutcome(const std::string& what, double probability)
      : std::runtime_error(what), probability_(probability) {}
  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// A closed form was requested for a state/detector pair it does not cover.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated Fock-space construction lost more norm than allowed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double deviation)
      : std::runtime_error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

}  // namespace condphoton
