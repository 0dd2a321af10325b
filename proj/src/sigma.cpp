#include "spectral_range/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral_range/errors.hpp"

namespace spectral_range {

namespace {

bool same_radius(double r, double s) { return std::abs(r - s) <= kRadiusTolerance * std::max(r, s); }

bool balanced(const CycleMeanReport& means) { return same_radius(means.mu, means.nu); }

std::string describe_modulus(Complex lambda) {
  std::ostringstream out;
  out.precision(17);
  out << "|lambda| = " << std::abs(lambda);
  return out.str();
}

ComplexMatrix to_complex(const Matrix& a) { return a.cast<Complex>(); }

// Extends an eigenvector of the class block `s` of `c` to the whole matrix. Classes
// reachable from s get zero; classes that reach s are solved upstream one block at a time.
std::optional<ComplexVector> extend_class_eigenvector(const ComplexMatrix& c, const FrobeniusForm& form,
                                                      std::size_t s, const ComplexVector& local, Complex lambda) {
  ComplexVector v = ComplexVector::Zero(c.rows());
  const auto& own = form.classes[s];
  for (std::size_t k = 0; k < own.size(); ++k) v(own[k]) = local(static_cast<Eigen::Index>(k));
  for (std::size_t u = s + 1; u < form.class_count(); ++u) {
    const auto& nodes = form.classes[u];
    ComplexVector rhs = c(nodes, Eigen::all) * v;
    if (rhs.cwiseAbs().maxCoeff() == 0.0) continue;
    const auto m = static_cast<Eigen::Index>(nodes.size());
    const ComplexMatrix block = lambda * ComplexMatrix::Identity(m, m) - c(nodes, nodes);
    const ComplexVector solved = block.partialPivLu().solve(rhs);
    if (!solved.allFinite() || (block * solved - rhs).cwiseAbs().maxCoeff() > 1e-10 * rhs.cwiseAbs().maxCoeff())
      return std::nullopt;
    for (Eigen::Index k = 0; k < m; ++k) v(nodes[k]) = solved(k);
  }
  const double scale = v.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) return std::nullopt;
  v /= scale;
  if ((c * v - lambda * v).cwiseAbs().maxCoeff() > kWitnessResidualTolerance) return std::nullopt;
  return v;
}

EigenWitness checked(EigenWitness witness, const RowUniformMatrix& b, const char* what) {
  if (auto problem = witness.check(b); !problem.empty())
    throw ConvergenceError(std::string(what) + ": witness failed verification: " + problem);
  return witness;
}

RowUniformMatrix scale_rows(const RowUniformMatrix& b, const std::vector<int>& rows, double factor) {
  Vector values = b.row_values();
  for (int i : rows) values(i) *= factor;
  return RowUniformMatrix(b.support(), values);
}

EigenWitness realize_unicyclic(const RowUniformMatrix& b, Complex lambda) {
  const double r = std::abs(lambda);
  const Complex phase = lambda / r;
  const Eigen::Index n = b.size();
  const Digraph graph = support_graph(b);
  EigenWitness witness;
  witness.matrix = ComplexMatrix::Zero(n, n);
  witness.eigenvalue = lambda;
  ComplexVector v(n);
  // Walk the Hamiltonian cycle: c_{i,next} v_next = lambda v_i.
  int i = 0;
  v(0) = 1.0;
  for (Eigen::Index step = 0; step < n; ++step) {
    const int next = graph[i].front();
    witness.matrix(i, next) = b.row_value(i) * phase;
    if (next != 0) v(next) = r * v(i) / b.row_value(i);
    i = next;
  }
  witness.eigenvector = v / v.cwiseAbs().maxCoeff();
  return witness;
}

// |lambda| <= nu(B) (or otherwise outside eta(B)): rescale row t to reach a matrix H whose
// Perron range holds |lambda|, then restore row t's modulus sum with an imaginary pair
// that cancels in (Cv)_t.
EigenWitness realize_by_row_perturbation(const RowUniformMatrix& b, Complex lambda) {
  const double r = std::abs(lambda);
  const Digraph graph = support_graph(b);
  const int n = static_cast<int>(graph.size());
  int t = -1;
  for (int v = 0; v < n && t == -1; ++v)
    if (graph[v].size() >= 2) t = v;
  if (t == -1) throw std::logic_error("realize_eigenvalue: multicyclic matrix without a branching row");
  const std::vector<int> alpha = *shortest_cycle_through(graph, t);
  double log_mean = 0.0;
  for (int v : alpha) log_mean += std::log(b.row_value(v));
  const double ell = static_cast<double>(alpha.size());
  const double c = std::exp(log_mean / ell);
  const double z0 = c > r ? std::pow(r / c, ell) : 1.0;

  auto holds = [&](double z) { return z > 0.0 && z <= 1.0 && describe_eta(scale_rows(b, {t}, z)).contains(r); };
  double z = z0;
  if (!holds(z)) {
    bool found = false;
    double epsilon = 1e-3;
    for (int halving = 0; halving <= kMaxEpsilonHalvings && !found; ++halving, epsilon /= 2) {
      for (double candidate : {z0 * (1.0 + epsilon), z0 * (1.0 - epsilon)}) {
        if (holds(candidate)) {
          z = candidate;
          found = true;
          break;
        }
      }
    }
    if (!found) throw ConvergenceError("realize_eigenvalue: no row rescaling puts |lambda| inside eta(H)");
  }

  const RowUniformMatrix h = scale_rows(b, {t}, z);
  const Matrix e = realize_perron_root(h, r).matrix;
  const Vector v = perron_vector(e);
  const int k = graph[t][0];
  const int l = graph[t][1];
  const double bt = b.row_value(t);
  double rest = 0.0;
  for (int s : graph[t])
    if (s != k && s != l) rest += e(t, s);
  auto defect = [&](double x) { return rest + std::hypot(e(t, k), x / v(k)) + std::hypot(e(t, l), x / v(l)) - bt; };
  double lo = 0.0, hi = bt * std::max(v(k), v(l));
  for (int step = 0; step < 200 && hi - lo > 0.0; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double d = defect(mid);
    if (std::abs(d) <= 1e-12 * bt) {
      lo = hi = mid;
      break;
    }
    (d < 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);

  EigenWitness witness;
  witness.matrix = to_complex(e);
  witness.matrix(t, k) -= Complex(0.0, x / v(k));
  witness.matrix(t, l) += Complex(0.0, x / v(l));
  witness.matrix *= lambda / r;
  witness.eigenvalue = lambda;
  witness.eigenvector = v.cast<Complex>();
  return witness;
}

EigenWitness realize_irreducible(const RowUniformMatrix& b, Complex lambda) {
  const double r = std::abs(lambda);
  const CycleMeanReport means = cycle_means(b.dense());
  if (classify_cyclic(b) == Cyclicity::Unicyclic) {
    if (!same_radius(r, means.mu))
      throw InfeasibleError(Clause::ModulusNotOnCircle, describe_modulus(lambda) + ", mu(B) = " + std::to_string(means.mu));
    return checked(realize_unicyclic(b, lambda), b, "realize_eigenvalue");
  }
  const bool closed = balanced(means);
  if (r > means.mu * (1.0 + kRadiusTolerance) || (!closed && r >= means.mu * (1.0 - kEndpointTolerance)))
    throw InfeasibleError(Clause::ModulusOutsideDisk,
                          describe_modulus(lambda) + ", mu(B) = " + std::to_string(means.mu) +
                              (closed ? " (closed disk)" : " (open disk)"));
  if (closed && same_radius(r, means.mu)) {
    // Balanced: every split has Perron root mu(B).
    const Matrix e = b.uniform_split();
    EigenWitness witness{to_complex(e) * (lambda / means.mu), lambda, perron_vector(e).cast<Complex>()};
    return checked(witness, b, "realize_eigenvalue");
  }
  if (describe_eta(b).contains(r)) {
    const Matrix e = realize_perron_root(b, r).matrix;
    EigenWitness witness{to_complex(e) * (lambda / r), lambda, perron_vector(e).cast<Complex>()};
    return checked(witness, b, "realize_eigenvalue");
  }
  return checked(realize_by_row_perturbation(b, lambda), b, "realize_eigenvalue");
}

// Nodes of class `nodes` with an edge leaving it.
std::vector<int> exit_rows(const Digraph& graph, const std::vector<int>& nodes, const FrobeniusForm& form) {
  std::vector<int> rows;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int v = nodes[k];
    for (int w : graph[v])
      if (form.class_of[w] != form.class_of[v]) {
        rows.push_back(static_cast<int>(k));
        break;
      }
  }
  return rows;
}

}  // namespace

void ModulusSet::canonicalize() {
  std::sort(circles.begin(), circles.end());
  std::vector<double> kept;
  for (double r : circles) {
    if (disk) {
      const bool on_boundary = same_radius(r, disk->radius);
      if (r < disk->radius && !on_boundary) continue;
      if (on_boundary && disk->boundary == Boundary::Closed) continue;
      if (on_boundary) r = disk->radius;
    }
    if (!kept.empty() && same_radius(kept.back(), r)) continue;
    kept.push_back(r);
  }
  circles = std::move(kept);
}

bool ModulusSet::contains(Complex lambda) const {
  const double r = std::abs(lambda);
  if (r == 0.0) return zero_included;
  for (double c : circles)
    if (same_radius(r, c)) return true;
  if (!disk) return false;
  if (disk->boundary == Boundary::Closed) return r <= disk->radius * (1.0 + kRadiusTolerance);
  return r < disk->radius && !same_radius(r, disk->radius);
}

bool ModulusSet::approx_equal(const ModulusSet& other, double relative_tolerance) const {
  auto close = [&](double x, double y) { return std::abs(x - y) <= relative_tolerance * std::max(x, y); };
  if (zero_included != other.zero_included || disk.has_value() != other.disk.has_value()) return false;
  if (disk && (disk->boundary != other.disk->boundary || !close(disk->radius, other.disk->radius))) return false;
  if (circles.size() != other.circles.size()) return false;
  for (std::size_t k = 0; k < circles.size(); ++k)
    if (!close(circles[k], other.circles[k])) return false;
  return true;
}

std::string EigenWitness::check(const RowUniformMatrix& b) const {
  if (matrix.rows() != b.size() || matrix.cols() != b.size()) return "witness has the wrong dimension";
  if (!matrix.allFinite()) return "witness has non-finite entries";
  if (!aux_complex(matrix).approx_equal(b, 1e-9)) return "aux of the witness differs from B";
  std::ostringstream problem;
  problem.precision(6);
  if (eigenvector) {
    const double norm = eigenvector->cwiseAbs().maxCoeff();
    const double residual = (matrix * *eigenvector - eigenvalue * *eigenvector).cwiseAbs().maxCoeff();
    if (!(norm > 0.0) || residual > kWitnessResidualTolerance * norm) {
      problem << "eigen-residual " << residual << " exceeds tolerance";
      return problem.str();
    }
    return {};
  }
  const ComplexMatrix shifted = matrix - eigenvalue * ComplexMatrix::Identity(matrix.rows(), matrix.cols());
  const double scale = shifted.cwiseAbs().rowwise().sum().prod();
  const double det = std::abs(shifted.partialPivLu().determinant());
  if (det > kWitnessResidualTolerance * scale) {
    problem << "|det(C - lambda I)| = " << det << " exceeds tolerance";
    return problem.str();
  }
  return {};
}

const char* to_string(DiagonalProductCount count) {
  switch (count) {
    case DiagonalProductCount::Zero: return "zero";
    case DiagonalProductCount::One: return "one";
    case DiagonalProductCount::Many: return "many";
  }
  return "";
}

const char* to_string(Cyclicity cyclicity) {
  return cyclicity == Cyclicity::Unicyclic ? "unicyclic" : "multicyclic";
}

DiagonalProductCount diagonal_product_count(const RowUniformMatrix& b) {
  const Digraph graph = support_graph(b);
  const auto matching = perfect_matching(graph);
  if (!matching) return DiagonalProductCount::Zero;
  // A second perfect matching exists iff one survives the removal of some matched edge.
  for (std::size_t i = 0; i < graph.size(); ++i) {
    Digraph reduced = graph;
    auto& row = reduced[i];
    row.erase(std::find(row.begin(), row.end(), (*matching)[i]));
    if (perfect_matching(reduced)) return DiagonalProductCount::Many;
  }
  return DiagonalProductCount::One;
}

ZeroMembership zero_in_sigma(const RowUniformMatrix& b) {
  ZeroMembership result;
  const DiagonalProductCount count = diagonal_product_count(b);
  if (count == DiagonalProductCount::One) return result;
  result.member = true;
  if (count == DiagonalProductCount::Zero) {
    // Every generalized diagonal product vanishes, so any split is singular.
    result.witness = EigenWitness{to_complex(b.uniform_split()), Complex(0.0), std::nullopt};
    result.witness = checked(*result.witness, b, "zero_in_sigma");
    return result;
  }

  // Put a nonzero diagonal product on the diagonal: column k of BP is column sigma(k) of B.
  const Eigen::Index n = b.size();
  const std::vector<int> sigma = *perfect_matching(support_graph(b));
  SupportMask permuted(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) permuted(i, k) = b.support()(i, sigma[k]);
  const RowUniformMatrix bp(permuted, b.row_values());
  const FrobeniusForm form = frobenius_form(bp);
  std::size_t target = form.class_count();
  for (std::size_t c = 0; c < form.class_count() && target == form.class_count(); ++c)
    if (form.classes[c].size() > 1) target = c;
  if (target == form.class_count()) throw std::logic_error("zero_in_sigma: no class of size > 1 after permutation");

  // Roots-of-unity phases over each row's in-class targets make the class block annihilate 1.
  ComplexMatrix cp = to_complex(bp.uniform_split());
  for (int k : form.classes[target]) {
    std::vector<int> targets;
    for (int l = 0; l < n; ++l)
      if (permuted(k, l) && form.class_of[l] == static_cast<int>(target)) targets.push_back(l);
    const double count_k = static_cast<double>(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j)
      cp(k, targets[j]) *= std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j + 1) / count_k);
  }
  const auto local = ComplexVector::Ones(static_cast<Eigen::Index>(form.classes[target].size()));
  const auto null_permuted = extend_class_eigenvector(cp, form, target, local, Complex(0.0));

  EigenWitness witness;
  witness.matrix = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) witness.matrix.col(sigma[k]) = cp.col(k);
  witness.eigenvalue = 0.0;
  if (null_permuted) {
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(sigma[k]) = (*null_permuted)(k);
    witness.eigenvector = v;
  }
  result.witness = checked(witness, b, "zero_in_sigma");
  return result;
}

Cyclicity classify_cyclic(const RowUniformMatrix& b) {
  if (!is_irreducible(b)) throw std::invalid_argument("classify_cyclic: matrix is reducible");
  return b.support().count() == b.size() ? Cyclicity::Unicyclic : Cyclicity::Multicyclic;
}

ModulusSet sigma_irreducible(const RowUniformMatrix& b) {
  const Cyclicity cyclicity = classify_cyclic(b);
  const CycleMeanReport means = cycle_means(b.dense());
  ModulusSet set;
  if (cyclicity == Cyclicity::Unicyclic)
    set.circles.push_back(means.mu);
  else
    set.disk = Disk{means.mu, balanced(means) ? Boundary::Closed : Boundary::Open};
  return set;
}

ModulusSet sigma_tilde(const RowUniformMatrix& b, const std::vector<int>& k) {
  if (k.empty()) throw std::invalid_argument("sigma_tilde: index set K is empty");
  for (int i : k)
    if (i < 0 || i >= b.size()) throw std::invalid_argument("sigma_tilde: index out of range");
  if (!is_irreducible(b)) throw std::invalid_argument("sigma_tilde: matrix is reducible");
  ModulusSet set;
  set.disk = Disk{cycle_means(b.dense()).mu, Boundary::Open};
  return set;
}

ModulusSet sigma_describe(const RowUniformMatrix& b) {
  const FrobeniusForm form = frobenius_form(b);
  const Digraph graph = support_graph(b);
  ModulusSet set;
  set.zero_included = zero_in_sigma(b).member;

  // M~(B): largest mu over transient classes and final multicyclic classes.
  double m_tilde = 0.0;
  bool attained_closed = false;
  std::vector<double> unicyclic_means;
  for (std::size_t c = 0; c < form.class_count(); ++c) {
    if (form.is_trivial(c)) continue;
    const RowUniformMatrix block = principal_submatrix(b, form.classes[c]);
    const CycleMeanReport means = cycle_means(block.dense());
    if (form.is_final(c) && classify_cyclic(block) == Cyclicity::Unicyclic) {
      unicyclic_means.push_back(means.mu);
      continue;
    }
    const bool closed = form.is_final(c) && balanced(means);
    if (same_radius(means.mu, m_tilde)) {
      attained_closed = attained_closed || closed;
      m_tilde = std::max(m_tilde, means.mu);
    } else if (means.mu > m_tilde) {
      m_tilde = means.mu;
      attained_closed = closed;
    }
  }
  if (m_tilde > 0.0) set.disk = Disk{m_tilde, attained_closed ? Boundary::Closed : Boundary::Open};
  for (double mu : unicyclic_means) {
    const bool kept = attained_closed ? mu > m_tilde && !same_radius(mu, m_tilde) : mu >= m_tilde || same_radius(mu, m_tilde);
    if (kept) set.circles.push_back(mu);
  }
  set.canonicalize();
  return set;
}

EigenWitness realize_eigenvalue(const RowUniformMatrix& b, Complex lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw std::invalid_argument("realize_eigenvalue: lambda must be finite");
  if (lambda == Complex(0.0)) {
    ZeroMembership zero = zero_in_sigma(b);
    if (!zero.member)
      throw InfeasibleError(Clause::ZeroNotInSpectrum, "B has exactly one nonzero generalized diagonal product");
    return *zero.witness;
  }
  if (is_irreducible(b)) return realize_irreducible(b, lambda);

  const double r = std::abs(lambda);
  const FrobeniusForm form = frobenius_form(b);
  const Digraph graph = support_graph(b);
  for (std::size_t s = 0; s < form.class_count(); ++s) {
    if (form.is_trivial(s)) continue;
    const auto& nodes = form.classes[s];
    const RowUniformMatrix block = principal_submatrix(b, nodes);
    const CycleMeanReport means = cycle_means(block.dense());
    RowUniformMatrix h = block;
    if (form.is_final(s)) {
      if (!sigma_irreducible(block).contains(lambda)) continue;
    } else {
      if (!(r < means.mu) || same_radius(r, means.mu)) continue;
      // Rows with an exit shed some modulus mass onto the edges leaving the class.
      const std::vector<int> k = exit_rows(graph, nodes, form);
      if (classify_cyclic(block) == Cyclicity::Unicyclic) {
        const double z = std::pow(r / means.mu, static_cast<double>(nodes.size()) / static_cast<double>(k.size()));
        h = scale_rows(block, k, z);
      } else {
        double delta = 0.5;
        h = scale_rows(block, k, 1.0 - delta);
        while (!sigma_irreducible(h).contains(lambda) && delta > 1e-12) {
          delta /= 2;
          h = scale_rows(block, k, 1.0 - delta);
        }
        if (!sigma_irreducible(h).contains(lambda)) continue;
      }
    }
    const EigenWitness local = realize_irreducible(h, lambda);

    ComplexMatrix c = to_complex(b.uniform_split());
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      const int i = nodes[p];
      double used = 0.0;
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        c(i, nodes[q]) = local.matrix(p, q);
        used += std::abs(local.matrix(p, q));
      }
      std::vector<int> outside;
      for (int j : graph[i])
        if (form.class_of[j] != static_cast<int>(s)) outside.push_back(j);
      for (int j : outside) c(i, j) = (b.row_value(i) - used) / static_cast<double>(outside.size());
    }
    EigenWitness witness{c, lambda, std::nullopt};
    if (local.eigenvector) witness.eigenvector = extend_class_eigenvector(c, form, s, *local.eigenvector, lambda);
    return checked(witness, b, "realize_eigenvalue");
  }
  std::ostringstream detail;
  detail.precision(17);
  detail << describe_modulus(lambda) << " is not the modulus of an eigenvalue of any class";
  throw InfeasibleError(Clause::ModulusOutsideDisk, detail.str());
}

GammaRegularity gamma_regularity(const RowUniformMatrix& b) {
  if (classify_cyclic(b) != Cyclicity::Multicyclic)
    throw std::invalid_argument("gamma_regularity: matrix must be multicyclic");
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (b.support()(i, i)) throw std::invalid_argument("gamma_regularity: diagonal must be zero");
  const CycleMeanReport means = cycle_means(b.dense());
  GammaRegularity result;
  const bool mu_below = means.mu < 1.0 && !same_radius(means.mu, 1.0);
  const bool nu_below = means.nu < 1.0 && !same_radius(means.nu, 1.0);
  if (mu_below || (same_radius(means.mu, 1.0) && nu_below)) {
    result.regular = true;
    return result;
  }
  result.witness = realize_eigenvalue(b, Complex(1.0));
  return result;
}

}  // namespace spectral_range
