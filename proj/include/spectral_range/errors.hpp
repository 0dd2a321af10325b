#pragma once

#include <stdexcept>
#include <string>

namespace spectral_range {

/// Which characterization clause an infeasible request violates.
enum class Clause {
  AboveUpperBound,           // Perron root / eigenvalue modulus beyond M(B) = mu(B)
  BelowLowerBound,           // Perron root below m(B)
  UpperEndpointNotAttained,  // no final class with mu = nu = M(B)
  LowerEndpointNotAttained,  // anticritical final classes are not all balanced
  ZeroRequiresAcyclic,       // rho = 0 only for acyclic graphs
  OutsideDegenerateRange,    // eta(B) or sigma(B) collapses to a single value
  ModulusNotOnCircle,        // unicyclic class: moduli fixed to mu(B)
  ModulusOutsideDisk,        // multicyclic class: |lambda| beyond the punctured disk
  ZeroNotInSpectrum,         // exactly one nonzero generalized diagonal product
  SumVisualizationRange,     // level outside [mu(A), rho(A)]
  InverseSumVisualizationRange,
};

const char* clause_name(Clause clause);
const char* clause_statement(Clause clause);

/// A well-formed request for which no matrix exists. The CLI maps this to exit code 2.
class InfeasibleError : public std::domain_error {
 public:
  InfeasibleError(Clause clause, const std::string& detail);
  Clause clause() const noexcept { return clause_; }

 private:
  Clause clause_;
};

/// An iterative construction ran out of budget, or its output failed post-hoc verification.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectral_range
