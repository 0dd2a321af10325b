#include "spectral_range/errors.hpp"

namespace spectral_range {

const char* clause_name(Clause clause) {
  switch (clause) {
    case Clause::AboveUpperBound: return "above-upper-bound";
    case Clause::BelowLowerBound: return "below-lower-bound";
    case Clause::UpperEndpointNotAttained: return "upper-endpoint-not-attained";
    case Clause::LowerEndpointNotAttained: return "lower-endpoint-not-attained";
    case Clause::ZeroRequiresAcyclic: return "zero-requires-acyclic";
    case Clause::OutsideDegenerateRange: return "outside-degenerate-range";
    case Clause::ModulusNotOnCircle: return "modulus-not-on-circle";
    case Clause::ModulusOutsideDisk: return "modulus-outside-disk";
    case Clause::ZeroNotInSpectrum: return "zero-not-in-spectrum";
    case Clause::SumVisualizationRange: return "sum-visualization-range";
    case Clause::InverseSumVisualizationRange: return "inverse-sum-visualization-range";
  }
  return "unknown";
}

const char* clause_statement(Clause clause) {
  switch (clause) {
    case Clause::AboveUpperBound:
      return "eta(B) is contained in [m(B), M(B)] with M(B) = mu(B)";
    case Clause::BelowLowerBound:
      return "eta(B) is contained in [m(B), M(B)] with m(B) = max over final classes of nu(B_i)";
    case Clause::UpperEndpointNotAttained:
      return "M(B) is attained iff some final class B_i has mu(B_i) = nu(B_i) = M(B)";
    case Clause::LowerEndpointNotAttained:
      return "m(B) > 0 is attained iff mu(B_i) = nu(B_i) = m(B) for every final class attaining the maximum";
    case Clause::ZeroRequiresAcyclic:
      return "m(B) = 0 is attained iff the graph of B is acyclic";
    case Clause::OutsideDegenerateRange:
      return "if m(B) = M(B) then eta(B) = {m(B)}";
    case Clause::ModulusNotOnCircle:
      return "for unicyclic B, sigma(B) is the circle |s| = mu(B)";
    case Clause::ModulusOutsideDisk:
      return "for multicyclic B, sigma(B)\\{0} is the punctured disk of radius mu(B), closed iff nu(B) = mu(B)";
    case Clause::ZeroNotInSpectrum:
      return "0 is in sigma(B) iff the number of nonzero generalized diagonal products of B is not 1";
    case Clause::SumVisualizationRange:
      return "an a-sum visualization of irreducible A exists iff a lies in [mu(A), rho(A)]";
    case Clause::InverseSumVisualizationRange:
      return "an inverse a-sum visualization exists iff 1/a lies in [1/nu(A), rho(A^[-1])]";
  }
  return "";
}

InfeasibleError::InfeasibleError(Clause clause, const std::string& detail)
    : std::domain_error(std::string(clause_name(clause)) + ": " + detail + " (" + clause_statement(clause) + ")"),
      clause_(clause) {}

}  // namespace spectral_range
