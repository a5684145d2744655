#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

/// Degrees-of-freedom table, N -> K.
using KTable = std::map<int, long long>;

// Tolerances shared across modules.
inline constexpr double kLinalgTol = 1e-12;
inline constexpr double kPurityTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kRankRelTol = 1e-9;
inline constexpr double kMinSingular = 1e-9;
inline constexpr double kConditionCutoff = 1e9;

enum class TheoryKind { Classical, Quantum };

std::string to_string(TheoryKind kind);
TheoryKind theory_kind_from_string(const std::string& s);

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NoSignature : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

class ImpureState : public Error {
 public:
  using Error::Error;
};

class InvalidExperiment : public Error {
 public:
  using Error::Error;
};

class NotIncreasing : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpt
