#pragma once
//! \file errors.hpp
//! Exception type shared by all modules.

#include <stdexcept>
#include <string>

namespace penrose {

enum class ErrorKind {
  domain,        // argument outside the admissible set
  precondition,  // data does not satisfy a stage's hypotheses
  construction,  // family parameters admit no horizon
  numeric,       // derivative or quadrature failure
  asymptotics,   // tail extrapolation did not settle
  singularity,   // rho' vanished where the equation needs it nonzero
  blowup,        // Jang slope reached |v| = 1 in the interior
  stiffness,     // step size underflow
  flow,          // IMCF or conformal flow lost its horizon
  io
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace penrose
