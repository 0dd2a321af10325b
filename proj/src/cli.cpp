#include "spectral_range/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>

#include "spectral_range/errors.hpp"
#include "spectral_range/io.hpp"
#include "spectral_range/oracle.hpp"

namespace spectral_range::cli {

namespace {

using io::Json;

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  Json diagnostics = Json::object();

  Json to_json() const {
    return {{"command", command}, {"inputs", inputs}, {"result", result}, {"diagnostics", diagnostics}};
  }
};

Json one_based(const std::vector<int>& nodes) {
  Json out = Json::array();
  for (int v : nodes) out.push_back(v + 1);
  return out;
}

std::vector<int> parse_cycle(const std::string& text) {
  std::vector<int> cycle;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      cycle.push_back(v - 1);
    } catch (const std::exception&) {
      throw std::invalid_argument("--cycle expects comma-separated 1-based node indices, got '" + text + "'");
    }
  }
  if (cycle.empty()) throw std::invalid_argument("--cycle is empty");
  return cycle;
}

Complex parse_complex(const std::string& text) {
  std::stringstream in(text);
  std::string re, im;
  std::getline(in, re, ',');
  std::getline(in, im);
  try {
    std::size_t used_re = 0, used_im = 0;
    const double r = std::stod(re, &used_re);
    const double i = im.empty() ? 0.0 : std::stod(im, &used_im);
    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(text);
    return {r, i};
  } catch (const std::exception&) {
    throw std::invalid_argument("--lambda expects re,im, got '" + text + "'");
  }
}

Json critical_json(const CriticalGraph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges) edges.push_back({i + 1, j + 1});
  return {{"nodes", one_based(g.nodes)}, {"edges", edges}, {"strict_nodes", one_based(g.strict_nodes)}};
}

Json sunflower_json(const SunflowerSubgraph& s, const RowUniformMatrix& b) {
  Json out_edges = Json::array();
  for (const auto& e : s.out_edge) out_edges.push_back(e ? Json(*e + 1) : Json(nullptr));
  Json cycles = Json::array();
  for (const auto& c : s.cycles()) cycles.push_back(one_based(c));
  const Matrix m = s.to_matrix(b);
  return {{"out_edge", out_edges}, {"cycles", cycles}, {"matrix", io::to_json(m)}, {"mu", cycle_means(m).mu}};
}

Json witness_json(const EigenWitness& w) {
  return {{"eigenvalue", io::complex_to_json(w.eigenvalue)},
          {"matrix", io::to_json(w.matrix)},
          {"eigenvector", w.eigenvector ? io::vector_to_json(*w.eigenvector) : Json(nullptr)}};
}

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("SPECTRAL_RANGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("SPECTRAL_RANGE_SEED must be an unsigned integer");
    }
  }
  return seed;
}

double relative_gap(double x, double y) {
  const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
  return std::abs(x - y) / scale;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perron roots and eigenvalues of matrices with prescribed graph and row sums", "spectral-range"};
  app.require_subcommand(1);
  Report report;
  std::function<void()> action;

  std::string matrix_path, second_path;
  double level = 0.0, target = 0.0;
  std::string lambda_text = "0,0";
  std::vector<std::string> cycle_texts;
  bool strict = false, anti = false, inverse = false, minimal = false, maximal = false;
  int trials = 0, samples = 200, max_n = 7;
  std::uint64_t seed = 1;

  auto* aux_cmd = app.add_subcommand("aux", "auxiliary (row-uniform) matrix of A");
  aux_cmd->add_option("matrix", matrix_path, "CSV or JSON matrix (real or complex)")->required();
  aux_cmd->callback([&] {
    action = [&] {
      const io::LoadedMatrix a = io::read_matrix_file(matrix_path);
      report.inputs = {{"matrix", matrix_path}, {"complex", a.is_complex}};
      const RowUniformMatrix b = a.is_complex ? aux_complex(a.value) : aux(a.real);
      report.result = {{"row_uniform", io::to_json(b)}, {"dense", io::to_json(b.dense())}};
    };
  });

  auto* fnf_cmd = app.add_subcommand("fnf", "Frobenius normal form");
  fnf_cmd->add_option("matrix", matrix_path)->required();
  fnf_cmd->callback([&] {
    action = [&] {
      const Matrix a = io::read_real_matrix_file(matrix_path);
      report.inputs = {{"matrix", matrix_path}};
      const FrobeniusForm form = frobenius_form(a);
      Json classes = Json::array();
      for (std::size_t c = 0; c < form.class_count(); ++c)
        classes.push_back({{"nodes", one_based(form.classes[c])},
                           {"kind", form.is_trivial(c) ? "trivial" : "nontrivial"},
                           {"access", form.is_final(c) ? "final" : "transient"}});
      report.result = {{"permutation", one_based(form.permutation)},
                       {"classes", classes},
                       {"irreducible", form.irreducible()},
                       {"permuted", io::to_json(permute_symmetric(a, form.permutation))}};
    };
  });

  auto* means_cmd = app.add_subcommand("means", "geometric cycle means and (anti)critical graphs");
  means_cmd->add_option("matrix", matrix_path)->required();
  means_cmd->callback([&] {
    action = [&] {
      const Matrix a = io::read_real_matrix_file(matrix_path);
      require_nonnegative(a);
      report.inputs = {{"matrix", matrix_path}};
      const CycleMeanReport means = cycle_means(a);
      report.result = {{"mu", means.mu}, {"nu", means.nu}, {"has_cycle", means.has_cycle}};
      if (means.has_cycle) {
        report.result["critical"] = critical_json(critical_graph(a, Level::Max));
        report.result["anticritical"] = critical_json(critical_graph(a, Level::Min));
      }
      report.diagnostics = {{"critical_tolerance", kCriticalTolerance}};
    };
  });

  auto* vis_cmd = app.add_subcommand("visualize", "diagonal similarity bounding entries by mu (or nu)");
  vis_cmd->add_option("matrix", matrix_path)->required();
  auto* strict_flag = vis_cmd->add_flag("--strict", strict, "equality exactly on critical edges");
  vis_cmd->add_flag("--anti", anti, "strict antivisualization (entries >= nu)")->excludes(strict_flag);
  vis_cmd->callback([&] {
    action = [&] {
      const Matrix a = io::read_real_matrix_file(matrix_path);
      require_nonnegative(a);
      report.inputs = {{"matrix", matrix_path}, {"mode", anti ? "anti" : strict ? "strict" : "plain"}};
      const ScalingVector x =
          anti ? strict_antivisualizing_vector(a) : strict ? strict_visualizing_vector(a) : visualizing_vector(a);
      report.result = {{"scaling", io::vector_to_json(x)}, {"scaled", io::to_json(diagonal_similarity(a, x))}};
      report.diagnostics = {{"tight_tolerance", kTightTolerance}, {"slack_margin", kSlackMargin}};
    };
  });

  auto* sum_cmd = app.add_subcommand("sum-visualize", "diagonal similarity with entries <= level and row sums >= level");
  sum_cmd->add_option("matrix", matrix_path)->required();
  sum_cmd->add_option("--level", level, "the level a")->required();
  sum_cmd->add_flag("--inverse", inverse, "entries >= level and reciprocal row sums >= 1");
  sum_cmd->callback([&] {
    action = [&] {
      const Matrix a = io::read_real_matrix_file(matrix_path);
      report.inputs = {{"matrix", matrix_path}, {"level", level}, {"inverse", inverse}};
      SumVisualizeOptions options;
      long iterates = 0;
      options.observer = [&](const Vector&) { ++iterates; };
      const ScalingVector x = inverse ? sum_visualize_inverse(a, level, options) : sum_visualize(a, level, options);
      report.result = {{"scaling", io::vector_to_json(x)}, {"scaled", io::to_json(diagonal_similarity(a, x))}};
      report.diagnostics = {{"iterates", iterates},
                            {"step_tolerance", options.step_tolerance},
                            {"verify_tolerance", options.verify_tolerance}};
    };
  });

  auto* sun_cmd = app.add_subcommand("sunflower", "sunflower subgraphs of a row-uniform matrix");
  sun_cmd->add_option("rumatrix", matrix_path)->required();
  auto* cycle_opt = sun_cmd->add_option("--cycle", cycle_texts, "cycle as 1-based nodes, e.g. 1,2 (repeatable)");
  auto* min_flag = sun_cmd->add_flag("--minimal", minimal, "thin sunflower through minimum-mean cycles");
  sun_cmd->add_flag("--maximal", maximal, "sunflower through a maximum-mean cycle")->excludes(min_flag)->excludes(cycle_opt);
  min_flag->excludes(cycle_opt);
  sun_cmd->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      report.inputs = {{"rumatrix", matrix_path}, {"cycles", cycle_texts}};
      const ExtremalParams params = extremal_params(b);
      SunflowerSubgraph s;
      if (minimal) {
        s = minimal_sunflower(b);
      } else if (maximal) {
        s = maximal_sunflower(b);
      } else {
        if (cycle_texts.empty()) throw std::invalid_argument("sunflower: give --cycle, --minimal or --maximal");
        std::vector<std::vector<int>> cycles;
        for (const auto& text : cycle_texts) cycles.push_back(parse_cycle(text));
        s = (cycles.size() == 1 && is_irreducible(b)) ? simple_sunflower(b, cycles.front()) : thin_sunflower(b, cycles);
      }
      report.result = sunflower_json(s, b);
      report.result["M"] = params.M;
      report.result["m"] = params.m;
    };
  });

  auto* eta_cmd = app.add_subcommand("eta", "Perron roots of nonnegative A with aux(A) = B");
  eta_cmd->require_subcommand(1);
  auto* eta_describe = eta_cmd->add_subcommand("describe", "the interval eta(B)");
  eta_describe->add_option("rumatrix", matrix_path)->required();
  eta_describe->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      report.inputs = {{"rumatrix", matrix_path}};
      const PerronRange r = describe_eta(b);
      report.result = {{"lower", r.lower},
                       {"upper", r.upper},
                       {"lower_attained", r.lower_attained},
                       {"upper_attained", r.upper_attained},
                       {"degenerate", r.degenerate}};
      report.diagnostics = {{"endpoint_tolerance", kEndpointTolerance}};
    };
  });
  auto* eta_realize = eta_cmd->add_subcommand("realize", "A with aux(A) = B and rho(A) = target");
  eta_realize->add_option("rumatrix", matrix_path)->required();
  eta_realize->add_option("--target", target)->required();
  eta_realize->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      report.inputs = {{"rumatrix", matrix_path}, {"target", target}};
      const PerronRealization r = realize_perron_root(b, target);
      report.result = {{"matrix", io::to_json(r.matrix)}, {"rho", r.rho}, {"path", to_string(r.path)}};
      if (r.closed_form) {
        report.result["closed_form"] = {{"matrix", io::to_json(r.closed_form->matrix)},
                                        {"row", r.closed_form->row + 1},
                                        {"max_target", r.closed_form->max_target + 1},
                                        {"min_target", r.closed_form->min_target + 1},
                                        {"y", r.closed_form->y},
                                        {"eigenvector", io::vector_to_json(r.closed_form->eigenvector)}};
      }
      report.diagnostics = {{"epsilon_halvings", r.epsilon_halvings}, {"bisection_steps", r.bisection_steps}};
    };
  });
  auto* eta_verify = eta_cmd->add_subcommand("verify", "check that a matrix realizes a target Perron root");
  eta_verify->add_option("rumatrix", matrix_path)->required();
  eta_verify->add_option("matrix", second_path)->required();
  eta_verify->add_option("--target", target)->required();
  eta_verify->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      const Matrix a = io::read_real_matrix_file(second_path);
      report.inputs = {{"rumatrix", matrix_path}, {"matrix", second_path}, {"target", target}};
      require_nonnegative(a);
      const bool aux_ok = a.rows() == b.size() && aux(a).approx_equal(b, 1e-9);
      const double rho = perron_root(a);
      const bool rho_ok = std::abs(rho - target) <= 1e-6 * std::max(target, 1.0);
      report.result = {{"aux_matches", aux_ok}, {"rho", rho}, {"rho_matches", rho_ok}, {"valid", aux_ok && rho_ok}};
    };
  });

  auto* sigma_cmd = app.add_subcommand("sigma", "eigenvalues of complex A with aux(|A|) = B");
  sigma_cmd->require_subcommand(1);
  auto* sigma_describe_cmd = sigma_cmd->add_subcommand("describe", "the set sigma(B) by moduli");
  sigma_describe_cmd->add_option("rumatrix", matrix_path)->required();
  sigma_describe_cmd->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      report.inputs = {{"rumatrix", matrix_path}};
      report.result = io::to_json(sigma_describe(b));
      report.diagnostics = {{"radius_tolerance", kRadiusTolerance}};
    };
  });
  auto* sigma_zero = sigma_cmd->add_subcommand("zero", "is 0 in sigma(B), with a singular witness");
  sigma_zero->add_option("rumatrix", matrix_path)->required();
  sigma_zero->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      report.inputs = {{"rumatrix", matrix_path}};
      const ZeroMembership z = zero_in_sigma(b);
      report.result = {{"member", z.member},
                       {"diagonal_products", to_string(diagonal_product_count(b))},
                       {"witness", z.witness ? witness_json(*z.witness) : Json(nullptr)}};
    };
  });
  auto* sigma_realize = sigma_cmd->add_subcommand("realize", "complex C with aux(|C|) = B and eigenvalue lambda");
  sigma_realize->add_option("rumatrix", matrix_path)->required();
  sigma_realize->add_option("--lambda", lambda_text, "re,im")->required();
  sigma_realize->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      const Complex lambda = parse_complex(lambda_text);
      report.inputs = {{"rumatrix", matrix_path}, {"lambda", io::complex_to_json(lambda)}};
      report.result = witness_json(realize_eigenvalue(b, lambda));
      report.diagnostics = {{"residual_tolerance", kWitnessResidualTolerance}};
    };
  });
  auto* sigma_verify = sigma_cmd->add_subcommand("verify", "check an eigenvalue witness against B");
  sigma_verify->add_option("rumatrix", matrix_path)->required();
  sigma_verify->add_option("matrix", second_path)->required();
  sigma_verify->add_option("--lambda", lambda_text, "re,im")->required();
  sigma_verify->callback([&] {
    action = [&] {
      const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
      const io::LoadedMatrix c = io::read_matrix_file(second_path);
      const Complex lambda = parse_complex(lambda_text);
      report.inputs = {{"rumatrix", matrix_path}, {"matrix", second_path}, {"lambda", io::complex_to_json(lambda)}};
      const std::string problem = EigenWitness{c.value, lambda, std::nullopt}.check(b);
      report.result = {{"valid", problem.empty()}, {"problem", problem}};
    };
  });

  auto* ch_cmd = app.add_subcommand("camion-hoffman", "is every E with |E| = A nonsingular?");
  ch_cmd->add_option("matrix", matrix_path)->required();
  ch_cmd->callback([&] {
    action = [&] {
      const Matrix a = io::read_real_matrix_file(matrix_path);
      report.inputs = {{"matrix", matrix_path}};
      const RegularityVerdict verdict = decide(a);
      report.result = io::to_json(verdict);
      report.result["m_matrix"] = m_matrix_check(a);
      report.diagnostics = {{"decision_tolerance", kDecisionTolerance}};
    };
  });

  auto* oracle_cmd = app.add_subcommand("oracle", "cross-check production algorithms against brute force");
  std::string check_name;
  oracle_cmd->add_option("check", check_name, "cycle-means | diagonal-products | sunflowers | eta-sampling")
      ->required()
      ->check(CLI::IsMember({"cycle-means", "diagonal-products", "sunflowers", "eta-sampling"}));
  oracle_cmd->add_option("rumatrix", matrix_path, "input for eta-sampling");
  oracle_cmd->add_option("--trials", trials, "random instances (default depends on the check)");
  oracle_cmd->add_option("--samples", samples, "preimages for eta-sampling");
  oracle_cmd->add_option("--max-n", max_n, "largest random dimension");
  oracle_cmd->add_option("--seed", seed, "RNG seed (SPECTRAL_RANGE_SEED overrides)");
  oracle_cmd->callback([&] {
    action = [&] {
      const std::uint64_t used_seed = effective_seed(seed);
      std::mt19937_64 rng(used_seed);
      report.inputs = {{"check", check_name}, {"seed", used_seed}, {"max_n", max_n}};
      int failures = 0, count = 0;
      double worst = 0.0;
      oracle::RandomSupportOptions options;
      options.max_n = max_n;
      if (check_name == "cycle-means") {
        count = trials > 0 ? trials : 100;
        for (int t = 0; t < count; ++t) {
          const Matrix a = oracle::random_nonnegative(rng, options);
          const auto brute = oracle::enumerate_cycle_means(a);
          const auto fast = cycle_means(a);
          const double gap = std::max(relative_gap(brute.mu, fast.mu), relative_gap(brute.nu, fast.nu));
          worst = std::max(worst, gap);
          failures += gap > 1e-10;
        }
      } else if (check_name == "diagonal-products") {
        count = trials > 0 ? trials : 100;
        for (int t = 0; t < count; ++t) {
          const RowUniformMatrix b = oracle::random_row_uniform(rng, options);
          const std::size_t n = oracle::enumerate_diagonal_products(b).count();
          const auto expected = n == 0 ? DiagonalProductCount::Zero
                                : n == 1 ? DiagonalProductCount::One
                                         : DiagonalProductCount::Many;
          failures += diagonal_product_count(b) != expected;
        }
      } else if (check_name == "sunflowers") {
        count = trials > 0 ? trials : 30;
        options.max_n = std::min(max_n, 5);
        for (int t = 0; t < count; ++t) {
          const RowUniformMatrix b = oracle::random_row_uniform(rng, options);
          const auto all = oracle::enumerate_sunflowers(b);
          const ExtremalParams params = extremal_params(b);
          const double gap = std::max(relative_gap(all.max_mu, params.M), relative_gap(all.min_mu, params.m));
          worst = std::max(worst, gap);
          failures += gap > 1e-10;
        }
      } else {
        if (matrix_path.empty()) throw std::invalid_argument("oracle eta-sampling needs a row-uniform matrix file");
        const RowUniformMatrix b = io::read_row_uniform_file(matrix_path);
        const PerronRange range = describe_eta(b);
        report.inputs["rumatrix"] = matrix_path;
        count = samples;
        for (int s = 0; s < count; ++s) {
          const double rho = perron_root(oracle::random_aux_preimage(b, rng()));
          const bool inside = rho >= range.lower - 1e-9 && rho <= range.upper + 1e-9;
          failures += !inside;
        }
      }
      report.result = {{"instances", count}, {"failures", failures}, {"passed", failures == 0}};
      report.diagnostics = {{"worst_relative_gap", worst}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    report.command = sub->get_name();
    for (const CLI::App* nested : sub->get_subcommands()) report.command += " " + nested->get_name();
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message, const char* clause = nullptr) {
    Json error = {{"kind", kind}, {"message", message}};
    if (clause) error["clause"] = clause;
    out << Json{{"command", report.command}, {"inputs", report.inputs}, {"error", error}}.dump(2) << "\n";
    err << "spectral-range: " << message << "\n";
    return code;
  };
  try {
    const auto start = std::chrono::steady_clock::now();
    action();
    report.diagnostics["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } catch (const InfeasibleError& e) {
    return fail(kInfeasible, "infeasible", e.what(), clause_name(e.clause()));
  } catch (const ConvergenceError& e) {
    return fail(kNumericalFailure, "numerical", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kInputError, "input", e.what());
  } catch (const std::domain_error& e) {
    return fail(kInputError, "input", e.what());
  } catch (const std::exception& e) {
    return fail(kNumericalFailure, "internal", e.what());
  }
  out << report.to_json().dump(2) << "\n";
  if (report.result.is_object() && report.result.contains("passed") && !report.result["passed"].get<bool>())
    return kInputError;
  return kOk;
}

}  // namespace spectral_range::cli
