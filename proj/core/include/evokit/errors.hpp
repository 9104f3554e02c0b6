#pragma once

#include <stdexcept>
#include <string>

namespace evokit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class HermiticityError : public Error {
public:
  using Error::Error;
};

class UnitarityError : public Error {
public:
  using Error::Error;
};

class DegenerateGapError : public Error {
public:
  using Error::Error;
};

class SingleGroupError : public Error {
public:
  using Error::Error;
};

class ContourFailure : public Error {
public:
  using Error::Error;
};

class OrderOverflow : public Error {
public:
  using Error::Error;
};

class QuadratureFailure : public Error {
public:
  using Error::Error;
};

class AverageNonConvergent : public Error {
public:
  using Error::Error;
};

class GridTooCoarse : public Error {
public:
  using Error::Error;
};

class PeriodMismatch : public Error {
public:
  using Error::Error;
};

class ModeMismatch : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace evokit
