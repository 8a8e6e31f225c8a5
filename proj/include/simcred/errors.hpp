#pragma once

#include <stdexcept>
#include <string>

namespace simcred {

// Root of every failure raised by the library. Callers that only care about
// "did the assessment go wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (non-positive threshold, eta_pass outside (0,1), empty band, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A reference quantity that a relative threshold is built from is zero
// (both performance values zero, flat experimental curve, flat Bode curve).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Two series share no abscissa span of positive length.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Spectral estimation cannot produce a meaningful result.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Malformed or missing input data. The message carries file/line context.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace simcred
