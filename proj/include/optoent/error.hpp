#ifndef OPTOENT_ERROR_HPP
#define OPTOENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace optoent {

// Base for every failure the library reports.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid physical input (nonpositive length, negative temperature, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

// Malformed configuration file or command-line override.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Drift matrix has an eigenvalue with nonnegative real part.
class StabilityError : public Error {
public:
  StabilityError(const std::string& what, double spectral_abscissa)
      : Error(what), spectral_abscissa_(spectral_abscissa) {}
  double spectral_abscissa() const noexcept { return spectral_abscissa_; }

private:
  double spectral_abscissa_;
};

// Iterative solve ran out of budget. Carries the last iterate.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double last_iterate)
      : Error(what), last_iterate_(last_iterate) {}
  double last_iterate() const noexcept { return last_iterate_; }

private:
  double last_iterate_;
};

// Singular or badly conditioned linear algebra, or an unphysical matrix.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what, double condition_estimate = 0.0)
      : Error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

private:
  double condition_estimate_;
};

// Critical-temperature search found no E_N > 0 to E_N = 0 transition.
class NoCrossingError : public Error {
public:
  using Error::Error;
};

}  // namespace optoent

#endif  // OPTOENT_ERROR_HPP
