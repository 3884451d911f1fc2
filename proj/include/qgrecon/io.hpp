#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "qgrecon/verify.hpp"

namespace qgr {

using json = nlohmann::json;

/// Raised for malformed or unreadable input files (CLI exit code 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

// ---- complex / matrix encoding: [re, im] pairs, row-major rows ----

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a complex number as a two-element [re, im] array");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const json& j, long rows, long cols) {
  if (!j.is_array() || static_cast<long>(j.size()) != rows)
    throw InputError("matrix: expected " + std::to_string(rows) + " rows, found " +
                     std::to_string(j.is_array() ? j.size() : 0));
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      throw InputError("matrix: row " + std::to_string(i) + " has " +
                       std::to_string(row.is_array() ? row.size() : 0) +
                       " entries, expected " + std::to_string(cols));
    for (long k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[k]);
  }
  return m;
}

namespace detail {

inline void require_format(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  if (!j.contains("format") || !j["format"].is_number_integer() ||
      j["format"].get<int>() != kFormatVersion)
    throw InputError(std::string(what) + ": missing or unsupported \"format\" field");
}

inline int get_int(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InputError(std::string(what) + ": missing integer field \"" + key + "\"");
  return j[key].get<int>();
}

}  // namespace detail

// ---- operator files ----

inline json operator_to_json(const InterOp& t, bool with_format = true) {
  json j;
  if (with_format) j["format"] = kFormatVersion;
  j["dim"] = t.dim;
  j["source_power"] = t.source_power;
  j["target_power"] = t.target_power;
  j["matrix"] = matrix_to_json(t.mat);
  return j;
}

inline InterOp operator_from_json(const json& j, bool with_format = true) {
  if (with_format) detail::require_format(j, "operator");
  int d = detail::get_int(j, "dim", "operator");
  int k = detail::get_int(j, "source_power", "operator");
  int l = detail::get_int(j, "target_power", "operator");
  if (d < 1 || k < 0 || l < 0) throw InputError("operator: bad grading");
  if (!j.contains("matrix")) throw InputError("operator: missing \"matrix\"");
  try {
    return InterOp(d, k, l, matrix_from_json(j["matrix"], power_dim(d, l), power_dim(d, k)));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("operator: ") + e.what());
  }
}

// ---- generator files ----

inline json generators_to_json(int dim, const InterOp& R,
                               const std::vector<InterOp>& gens) {
  json j;
  j["format"] = kFormatVersion;
  j["dim"] = dim;
  j["R"] = operator_to_json(R, false);
  j["generators"] = json::array();
  for (const auto& g : gens) j["generators"].push_back(operator_to_json(g, false));
  return j;
}

struct GeneratorFile {
  int dim = 1;
  InterOp R;
  std::vector<InterOp> generators;
};

inline GeneratorFile generators_from_json(const json& j) {
  detail::require_format(j, "generator file");
  GeneratorFile out;
  out.dim = detail::get_int(j, "dim", "generator file");
  if (!j.contains("R")) throw InputError("generator file: missing \"R\"");
  out.R = operator_from_json(j["R"], false);
  if (out.R.dim != out.dim) throw InputError("generator file: R dimension mismatch");
  if (j.contains("generators")) {
    if (!j["generators"].is_array())
      throw InputError("generator file: \"generators\" must be an array");
    for (const auto& g : j["generators"]) {
      out.generators.push_back(operator_from_json(g, false));
      if (out.generators.back().dim != out.dim)
        throw InputError("generator file: generator dimension mismatch");
    }
  }
  return out;
}

// ---- provenance words as S-expressions ----

inline std::string word_to_sexp(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Identity:
      return "(id " + std::to_string(w.a) + ")";
    case Word::Kind::RGen:
      return "(R)";
    case Word::Kind::Gen:
      return "(gen " + std::to_string(w.a) + ")";
    case Word::Kind::Adjoint:
      return "(adj " + word_to_sexp(w.args[0]) + ")";
    case Word::Kind::Transpose:
      return "(transp " + word_to_sexp(w.args[0]) + ")";
    case Word::Kind::Tensor:
      return "(tensor " + word_to_sexp(w.args[0]) + " " + word_to_sexp(w.args[1]) + ")";
    case Word::Kind::Compose:
      return "(compose " + word_to_sexp(w.args[0]) + " " + word_to_sexp(w.args[1]) + ")";
    case Word::Kind::Bend:
      return std::string("(bend ") + (w.a ? "right" : "left") + " " +
             (w.b ? "down" : "up") + " " + word_to_sexp(w.args[0]) + ")";
    case Word::Kind::Ref:
      return "(ref " + std::to_string(w.a) + " " + std::to_string(w.b) + " " +
             std::to_string(w.c) + ")";
  }
  throw std::logic_error("word_to_sexp: bad kind");
}

namespace detail {

struct SexpParser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  void expect(char c) {
    skip();
    if (pos >= s.size() || s[pos] != c)
      throw InputError("provenance word: expected '" + std::string(1, c) + "' at offset " +
                       std::to_string(pos));
    ++pos;
  }
  std::string token() {
    skip();
    size_t start = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '(' && s[pos] != ')') ++pos;
    if (start == pos) throw InputError("provenance word: empty token at offset " +
                                       std::to_string(start));
    return s.substr(start, pos - start);
  }
  int number() {
    std::string t = token();
    try {
      return std::stoi(t);
    } catch (...) {
      throw InputError("provenance word: expected an integer, found \"" + t + "\"");
    }
  }

  Word parse() {
    expect('(');
    std::string head = token();
    Word w;
    if (head == "id") {
      w = Word::identity(number());
    } else if (head == "R") {
      w = Word::rgen();
    } else if (head == "gen") {
      w = Word::gen(number());
    } else if (head == "adj") {
      w = Word::adjoint(parse());
    } else if (head == "transp") {
      w = Word{Word::Kind::Transpose, 0, 0, 0, {parse()}};
    } else if (head == "tensor") {
      Word x = parse(), y = parse();
      w = Word::tensor(std::move(x), std::move(y));
    } else if (head == "compose") {
      Word x = parse(), y = parse();
      w = Word::compose(std::move(x), std::move(y));
    } else if (head == "bend") {
      std::string side = token(), dir = token();
      if (side != "left" && side != "right")
        throw InputError("provenance word: bad bend side \"" + side + "\"");
      if (dir != "up" && dir != "down")
        throw InputError("provenance word: bad bend direction \"" + dir + "\"");
      w = Word::bend(side == "right" ? BendSide::Right : BendSide::Left,
                     dir == "down" ? BendDirection::Down : BendDirection::Up, parse());
    } else if (head == "ref") {
      int k = number(), l = number(), i = number();
      w = Word::ref(k, l, i);
    } else {
      throw InputError("provenance word: unknown head \"" + head + "\"");
    }
    expect(')');
    return w;
  }
};

}  // namespace detail

inline Word word_from_sexp(const std::string& s) {
  detail::SexpParser p{s};
  Word w = p.parse();
  p.skip();
  if (p.pos != s.size())
    throw InputError("provenance word: trailing characters after expression");
  return w;
}

// ---- collection files ----

inline json collection_to_json(const Collection& c) {
  json j;
  j["format"] = kFormatVersion;
  j["dim"] = c.dim;
  j["level"] = c.level;
  j["R"] = operator_to_json(c.R, false);
  j["generators"] = json::array();
  for (const auto& g : c.generators) j["generators"].push_back(operator_to_json(g, false));
  j["cells"] = json::array();
  for (const auto& [cell, sp] : c.spaces) {
    json cj;
    cj["k"] = cell.first;
    cj["l"] = cell.second;
    cj["basis"] = json::array();
    for (const auto& t : sp.basis) cj["basis"].push_back(operator_to_json(t, false));
    j["cells"].push_back(std::move(cj));
  }
  j["provenance"] = json::array();
  for (const auto& pe : c.provenance) {
    json ej;
    ej["k"] = pe.k;
    ej["l"] = pe.l;
    ej["word"] = word_to_sexp(pe.word);
    ej["coeffs"] = json::array();
    for (cplx z : pe.coeffs) ej["coeffs"].push_back(complex_to_json(z));
    ej["norm"] = pe.norm;
    j["provenance"].push_back(std::move(ej));
  }
  return j;
}

inline Collection collection_from_json(const json& j) {
  detail::require_format(j, "collection");
  Collection c;
  c.dim = detail::get_int(j, "dim", "collection");
  c.level = detail::get_int(j, "level", "collection");
  if (c.dim < 1 || c.level < 0) throw InputError("collection: bad dim/level");
  if (!j.contains("R")) throw InputError("collection: missing \"R\"");
  c.R = operator_from_json(j["R"], false);
  if (j.contains("generators"))
    for (const auto& g : j["generators"]) c.generators.push_back(operator_from_json(g, false));
  for (int k = 0; k <= c.level; ++k)
    for (int l = 0; l <= c.level; ++l) c.spaces[{k, l}] = OpSpace{c.dim, k, l, {}};
  if (!j.contains("cells") || !j["cells"].is_array())
    throw InputError("collection: missing \"cells\" array");
  for (const auto& cj : j["cells"]) {
    int k = detail::get_int(cj, "k", "collection cell");
    int l = detail::get_int(cj, "l", "collection cell");
    if (k < 0 || l < 0 || k > c.level || l > c.level)
      throw InputError("collection: cell grading outside level");
    auto& sp = c.spaces[{k, l}];
    if (!cj.contains("basis") || !cj["basis"].is_array())
      throw InputError("collection: cell missing \"basis\" array");
    for (const auto& oj : cj["basis"]) {
      InterOp t = operator_from_json(oj, false);
      if (t.dim != c.dim || t.source_power != k || t.target_power != l)
        throw InputError("collection: basis operator grading mismatch in cell (" +
                         std::to_string(k) + "," + std::to_string(l) + ")");
      sp.basis.push_back(std::move(t));
    }
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_array())
      throw InputError("collection: \"provenance\" must be an array");
    for (const auto& ej : j["provenance"]) {
      ProvEntry pe;
      pe.k = detail::get_int(ej, "k", "provenance entry");
      pe.l = detail::get_int(ej, "l", "provenance entry");
      if (!ej.contains("word") || !ej["word"].is_string())
        throw InputError("provenance entry: missing \"word\" string");
      pe.word = word_from_sexp(ej["word"].get<std::string>());
      if (ej.contains("coeffs"))
        for (const auto& z : ej["coeffs"]) pe.coeffs.push_back(complex_from_json(z));
      if (!ej.contains("norm") || !ej["norm"].is_number())
        throw InputError("provenance entry: missing \"norm\"");
      pe.norm = ej["norm"].get<double>();
      c.provenance.push_back(std::move(pe));
    }
  }
  return c;
}

// ---- square matrix files (F and Q inputs) ----

inline json square_matrix_to_json(const Mat& m) {
  json j;
  j["format"] = kFormatVersion;
  j["dim"] = static_cast<int>(m.rows());
  j["matrix"] = matrix_to_json(m);
  return j;
}

inline Mat square_matrix_from_json(const json& j) {
  detail::require_format(j, "matrix file");
  int d = detail::get_int(j, "dim", "matrix file");
  if (d < 1) throw InputError("matrix file: bad dim");
  if (!j.contains("matrix")) throw InputError("matrix file: missing \"matrix\"");
  return matrix_from_json(j["matrix"], d, d);
}

// ---- relations files (monomial indices are 1-based on disk) ----

inline json relations_to_json(const std::vector<AlgebraElement>& relations) {
  json j;
  j["format"] = kFormatVersion;
  json arr = json::array();
  for (const auto& rel : relations) {
    json rj;
    rj["terms"] = json::array();
    for (const auto& [mono, c] : rel.terms) {
      json tj;
      tj["coeff"] = complex_to_json(c);
      tj["degree"] = mono.degree();
      tj["rows"] = json::array();
      tj["cols"] = json::array();
      for (int r : mono.rows) tj["rows"].push_back(r + 1);
      for (int col : mono.cols) tj["cols"].push_back(col + 1);
      rj["terms"].push_back(std::move(tj));
    }
    rj["equals"] = complex_to_json(0.0);
    arr.push_back(std::move(rj));
  }
  j["relations"] = std::move(arr);
  return j;
}

inline std::vector<AlgebraElement> relations_from_json(const json& j, int dim) {
  detail::require_format(j, "relations");
  if (!j.contains("relations") || !j["relations"].is_array())
    throw InputError("relations: missing \"relations\" array");
  std::vector<AlgebraElement> out;
  for (const auto& rj : j["relations"]) {
    AlgebraElement rel(dim);
    if (!rj.contains("terms") || !rj["terms"].is_array())
      throw InputError("relations: entry missing \"terms\" array");
    for (const auto& tj : rj["terms"]) {
      int deg = detail::get_int(tj, "degree", "relation term");
      Monomial mono;
      for (const auto* key : {"rows", "cols"}) {
        if (!tj.contains(key) || !tj[key].is_array() ||
            static_cast<int>(tj[key].size()) != deg)
          throw InputError(std::string("relation term: \"") + key +
                           "\" must list exactly `degree` indices");
        for (const auto& idx : tj[key]) {
          int v = idx.get<int>();
          if (v < 1 || v > dim) throw InputError("relation term: index out of range");
          (key[0] == 'r' ? mono.rows : mono.cols).push_back(v - 1);
        }
      }
      rel.add_term(mono, complex_from_json(tj.at("coeff")));
    }
    if (rj.contains("equals")) rel.add_term(Monomial{}, -complex_from_json(rj["equals"]));
    out.push_back(std::move(rel));
  }
  return out;
}

// ---- dims CSV: header row and column of tensor powers ----

inline std::string dims_to_csv(const Eigen::MatrixXi& table) {
  std::ostringstream os;
  os << "k\\l";
  for (long l = 0; l < table.cols(); ++l) os << "," << l;
  os << "\n";
  for (long k = 0; k < table.rows(); ++k) {
    os << k;
    for (long l = 0; l < table.cols(); ++l) os << "," << table(k, l);
    os << "\n";
  }
  return os.str();
}

inline Eigen::MatrixXi dims_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw InputError("dims csv: empty file");
  std::vector<std::vector<int>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<int> row;
    bool first = true;
    while (std::getline(ls, field, ',')) {
      if (first) {
        first = false;
        continue;  // row label
      }
      try {
        row.push_back(std::stoi(field));
      } catch (...) {
        throw InputError("dims csv: non-integer entry \"" + field + "\"");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("dims csv: no data rows");
  Eigen::MatrixXi t(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InputError("dims csv: ragged rows");
    for (size_t j = 0; j < rows[i].size(); ++j) t(i, j) = rows[i][j];
  }
  return t;
}

// ---- report text: one line per check ----

inline std::string report_to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& rep : reports) {
    os << "# suite " << rep.suite << " wall_seconds " << rep.wall_seconds << "\n";
    for (const auto& c : rep.checks)
      os << c.name << " " << c.residual << " " << c.threshold << " "
         << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

// ---- file helpers ----

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
}

inline void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(1) + "\n");
}

}  // namespace qgr
