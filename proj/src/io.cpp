#include "spectral_range/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spectral_range::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size())
    throw std::invalid_argument("CSV line " + std::to_string(line) + ": '" + t + "' is not a number");
  return value;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool looks_like_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

int read_n(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("matrix JSON needs an integer field \"n\"");
  const int n = j["n"].get<int>();
  if (n <= 0) throw std::invalid_argument("matrix JSON: n must be positive");
  return n;
}

double real_of(const Json& x) {
  if (!x.is_number()) throw std::invalid_argument("matrix JSON: entry is not a number");
  return x.get<double>();
}

}  // namespace

Matrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string token;
    while (std::getline(fields, token, ',')) row.push_back(parse_real(token, line_number));
    if (!line.empty() && trim(line).back() == ',')
      throw std::invalid_argument("CSV line " + std::to_string(line_number) + ": trailing comma");
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw std::invalid_argument("CSV matrix is empty");
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw std::invalid_argument("CSV row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

LoadedMatrix matrix_from_json(const Json& j) {
  const int n = read_n(j);
  if (!j.contains("entries") || !j["entries"].is_array() || static_cast<int>(j["entries"].size()) != n)
    throw std::invalid_argument("matrix JSON: \"entries\" must be an array of n rows");
  LoadedMatrix out;
  out.value = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j["entries"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i + 1) + " does not have n entries");
    for (int k = 0; k < n; ++k) {
      const Json& x = row[k];
      if (x.is_array()) {
        if (x.size() != 2) throw std::invalid_argument("matrix JSON: complex entries are [re, im] pairs");
        out.value(i, k) = Complex(real_of(x[0]), real_of(x[1]));
        out.is_complex = true;
      } else {
        out.value(i, k) = real_of(x);
      }
    }
  }
  if (!out.is_complex) out.real = out.value.real();
  return out;
}

LoadedMatrix read_matrix_file(const std::string& path) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) return matrix_from_json(parse_json(text, path));
  std::istringstream in(text);
  LoadedMatrix out;
  out.real = read_csv(in);
  out.value = out.real.cast<Complex>();
  return out;
}

Matrix read_real_matrix_file(const std::string& path) {
  LoadedMatrix loaded = read_matrix_file(path);
  if (loaded.is_complex) throw std::invalid_argument("'" + path + "' holds a complex matrix; a real one is required");
  return loaded.real;
}

Json to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(number(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", a.rows()}, {"entries", std::move(rows)}};
}

Json to_json(const ComplexMatrix& c) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < c.cols(); ++j) row.push_back(complex_to_json(c(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", c.rows()}, {"entries", std::move(rows)}};
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

RowUniformMatrix row_uniform_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries")) {
    const LoadedMatrix dense = matrix_from_json(j);
    if (dense.is_complex) throw std::invalid_argument("row-uniform matrix must be real");
    return RowUniformMatrix::from_dense(dense.real);
  }
  const int n = read_n(j);
  if (!j.contains("support") || !j["support"].is_array())
    throw std::invalid_argument("row-uniform JSON needs \"support\": [[i, j], ...]");
  if (!j.contains("row_value") || !j["row_value"].is_array() || static_cast<int>(j["row_value"].size()) != n)
    throw std::invalid_argument("row-uniform JSON needs \"row_value\" with n numbers");
  SupportMask support = SupportMask::Constant(n, n, false);
  for (const Json& edge : j["support"]) {
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() || !edge[1].is_number_integer())
      throw std::invalid_argument("row-uniform JSON: support entries are [i, j] integer pairs");
    const int r = edge[0].get<int>(), c = edge[1].get<int>();
    if (r < 1 || r > n || c < 1 || c > n)
      throw std::invalid_argument("row-uniform JSON: support index out of range 1..n");
    support(r - 1, c - 1) = true;
  }
  Vector values(n);
  for (int i = 0; i < n; ++i) values(i) = real_of(j["row_value"][i]);
  return RowUniformMatrix(std::move(support), std::move(values));
}

RowUniformMatrix read_row_uniform_file(const std::string& path) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) return row_uniform_from_json(parse_json(text, path));
  std::istringstream in(text);
  return RowUniformMatrix::from_dense(read_csv(in));
}

Json to_json(const RowUniformMatrix& b) {
  Json support = Json::array();
  for (Eigen::Index i = 0; i < b.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (b.support()(i, j)) support.push_back({i + 1, j + 1});
  return {{"n", b.size()}, {"support", std::move(support)}, {"row_value", vector_to_json(b.row_values())}};
}

Json to_json(const ModulusSet& set) {
  Json out;
  if (set.disk)
    out["disk"] = {{"radius", number(set.disk->radius)},
                   {"boundary", set.disk->boundary == Boundary::Closed ? "closed" : "open"}};
  else
    out["disk"] = nullptr;
  out["circles"] = Json::array();
  for (double r : set.circles) out["circles"].push_back(number(r));
  out["zero"] = set.zero_included;
  return out;
}

ModulusSet modulus_set_from_json(const Json& j) {
  ModulusSet set;
  if (!j.is_object() || !j.contains("circles") || !j.contains("zero") || !j.contains("disk"))
    throw std::invalid_argument("modulus set JSON needs \"disk\", \"circles\" and \"zero\"");
  if (!j["disk"].is_null()) {
    const std::string boundary = j["disk"].at("boundary").get<std::string>();
    if (boundary != "open" && boundary != "closed") throw std::invalid_argument("disk boundary must be open or closed");
    set.disk = Disk{j["disk"].at("radius").get<double>(), boundary == "closed" ? Boundary::Closed : Boundary::Open};
  }
  for (const Json& r : j["circles"]) set.circles.push_back(r.get<double>());
  set.zero_included = j["zero"].get<bool>();
  return set;
}

Json to_json(const RegularityVerdict& verdict) {
  Json out;
  out["regular"] = verdict.regular;
  out["boundary"] = verdict.boundary;
  out["permutation"] = Json::array();
  for (int p : verdict.permutation) out["permutation"].push_back(p + 1);
  out["test_radius"] = number(verdict.test_radius);
  out["unit_diagonal_scaling"] = vector_to_json(verdict.unit_diagonal_scaling);
  if (verdict.certificate)
    out["certificate"] = {{"dominance_scaling", vector_to_json(verdict.certificate->dominance_scaling)},
                          {"margin", number(verdict.certificate->margin)}};
  else
    out["certificate"] = nullptr;
  out["witness"] = verdict.witness ? to_json(*verdict.witness) : Json(nullptr);
  return out;
}

}  // namespace spectral_range::io
