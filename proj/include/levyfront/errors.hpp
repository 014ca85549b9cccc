// Error hierarchy shared by all solver components.  Every failure that is
// detectable up front (bad parameters, unmet preconditions, insufficient
// resolution) throws a typed exception carrying a human-readable message;
// the command line driver maps these to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace levyfront {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Invalid model parameters (exponent out of range, negative saturation, ...).
class SpecError : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent user input (configs, file paths, CLI values).
class InputError : public Error {
public:
  using Error::Error;
};

// Requested feature combination is recognized but not available.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

// Grid too coarse for the requested exponent; message suggests a finer size.
class ResolutionError : public Error {
public:
  using Error::Error;
};

// A quantity that must stay positive (eigenfunction, density, increment)
// lost positivity beyond tolerance.
class PositivityError : public Error {
public:
  using Error::Error;
};

// An iterative solver exhausted its iteration budget before converging.
class IterationError : public Error {
public:
  using Error::Error;
};

// Problem sits in a regime where the requested object does not exist
// (e.g. no positive steady state when the principal eigenvalue is >= 0).
class RegimeError : public Error {
public:
  using Error::Error;
};

// A sequence required to be monotone failed the check.
class MonotonicityError : public Error {
public:
  using Error::Error;
};

// Explicit time step exceeds the stability bound of the stiff part.
class StepSizeError : public Error {
public:
  using Error::Error;
};

// Unknown time stepping scheme name.
class SchemeError : public Error {
public:
  using Error::Error;
};

// The computational domain is too small for the requested run (front or
// mass reached the artificial boundary region).
class TruncationError : public Error {
public:
  using Error::Error;
};

// A computed value left its admissible range.
class RangeError : public Error {
public:
  using Error::Error;
};

// Least-squares fit rejected (too few points or poor correlation).
class FitError : public Error {
public:
  using Error::Error;
};

// Config file missing required keys or holding values of the wrong type.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Filesystem failures (unreadable input, unwritable output directory).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace levyfront
