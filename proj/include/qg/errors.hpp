#ifndef QG_ERRORS_HPP
#define QG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};
struct PoleAtClassicalPoint : Error {
  PoleAtClassicalPoint() : Error("pole at the classical point s = 1") {}
};
struct EvaluationPole : Error {
  EvaluationPole() : Error("denominator vanishes at the evaluation point") {}
};
struct BadDimension : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct NotImplemented : Error {
  using Error::Error;
};
struct NonReducible : Error {
  using Error::Error;
};
struct AnnihilationFailure : Error {
  using Error::Error;
};
struct ConstraintViolation : Error {
  using Error::Error;
};

}  // namespace qg

#endif
