#include "postlie/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace postlie::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return obj.at(name);
}

Rational scalar(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("rational values must be strings \"p/q\" or integers, got " + v.dump());
}

std::size_t index(const json& v, std::size_t bound) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0))
    throw ParseError("expected a non-negative index, got " + v.dump());
  auto i = v.get<std::size_t>();
  if (i >= bound) throw ParseError("index " + std::to_string(i) + " out of range (dim " + std::to_string(bound) + ")");
  return i;
}

Matrix<Rational> matrix(const json& rows, std::size_t size) {
  if (!rows.is_array() || rows.size() != size) throw ParseError("expected " + std::to_string(size) + " matrix rows");
  Matrix<Rational> m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    if (!rows[r].is_array() || rows[r].size() != size)
      throw ParseError("matrix row " + std::to_string(r) + " must have " + std::to_string(size) + " entries");
    for (std::size_t c = 0; c < size; ++c) m(r, c) = scalar(rows[r][c]);
  }
  return m;
}

std::vector<StructureEntry<Rational>> triples(const json& doc, std::size_t dim) {
  const json& s = field(doc, "structure");
  if (!s.is_array()) throw ParseError("'structure' must be an array");
  std::vector<StructureEntry<Rational>> out;
  for (const auto& e : s) {
    if (!e.is_array() || e.size() != 4) throw ParseError("structure entries are [i, j, k, \"p/q\"]");
    out.push_back({index(e[0], dim), index(e[1], dim), index(e[2], dim), scalar(e[3])});
  }
  return out;
}

std::size_t dimension(const json& doc) {
  const json& d = field(doc, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) throw ParseError("'dim' must be a positive integer");
  return d.get<std::size_t>();
}

std::vector<std::size_t> indices(const json& arr, const char* name) {
  if (!arr.is_array()) throw ParseError(std::string("'") + name + "' must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& v : arr) out.push_back(index(v, static_cast<std::size_t>(-1)));
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.empty()) throw ParseError("empty coordinate list");
  return parts;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LieAlgebra<Rational> parse_algebra(const std::string& text) {
  json doc = parse_json(text);
  const std::size_t dim = dimension(doc);
  std::vector<std::string> labels;
  if (doc.contains("basis")) {
    const json& b = doc.at("basis");
    if (!b.is_array() || b.size() != dim) throw ParseError("'basis' must list dim labels");
    for (const auto& l : b) {
      if (!l.is_string()) throw ParseError("basis labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i));
  }
  auto entries = triples(doc, dim);
  std::optional<std::vector<Matrix<Rational>>> realization;
  if (doc.contains("realization") && !doc.at("realization").is_null()) {
    const json& r = doc.at("realization");
    const json& size = field(r, "size");
    if (!size.is_number_unsigned() || size.get<std::size_t>() == 0) throw ParseError("'size' must be a positive integer");
    const json& mats = field(r, "matrices");
    if (!mats.is_array() || mats.size() != dim) throw ParseError("'matrices' must hold one matrix per basis element");
    realization.emplace();
    for (const auto& m : mats) realization->push_back(matrix(m, size.get<std::size_t>()));
  }
  return LieAlgebra<Rational>::create(dim, std::move(labels), entries, std::move(realization));
}

RMatrixSpec parse_rmatrix(const std::string& text) {
  json doc = parse_json(text);
  RMatrixSpec spec;
  if (doc.is_object() && doc.contains("plus")) {
    spec.plus = indices(doc.at("plus"), "plus");
    spec.minus = indices(field(doc, "minus"), "minus");
    return spec;
  }
  const json& m = field(doc, "matrix");
  if (!m.is_array() || m.empty()) throw ParseError("'matrix' must be a square array");
  spec.matrix = matrix(m, m.size());
  if (doc.contains("theta")) {
    Rational t = scalar(doc.at("theta"));
    if (t != 0 && t != 1) throw ParseError("'theta' must be 0 or 1");
    spec.theta = t == 1 ? 1 : 0;
  }
  return spec;
}

RMatrixContext<Rational> make_context(AlgebraPtr<Rational> L, const RMatrixSpec& spec) {
  if (spec.is_splitting()) return splitting_r<Rational>(std::move(L), spec.plus, spec.minus);
  if (spec.matrix->rows() != L->dim()) throw DimensionMismatch(L->dim(), spec.matrix->rows());
  return RMatrixContext<Rational>::create(std::move(L), LinearEndo<Rational>(*spec.matrix), spec.theta);
}

BilinearProduct<Rational> parse_product(AlgebraPtr<Rational> L, const std::string& text) {
  json doc = parse_json(text);
  const std::size_t dim = dimension(doc);
  if (dim != L->dim()) throw DimensionMismatch(L->dim(), dim);
  std::vector<Rational> t(dim * dim * dim);
  for (const auto& e : triples(doc, dim)) t[(e.i * dim + e.j) * dim + e.k] += e.value;
  return BilinearProduct<Rational>(std::move(L), std::move(t));
}

Vector<Rational> parse_vector(const std::string& text) {
  auto parts = split_commas(text);
  Vector<Rational> v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) v[i] = parse_rational(parts[i]);
  return v;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_commas(text)) out.push_back(parse_rational(p).get_d());
  return out;
}

std::string magnus_json(const GradedLieElement<Rational>& chi) {
  json orders = json::array();
  for (unsigned m = 1; m <= chi.order(); ++m) {
    json row = json::array();
    for (std::size_t i = 0; i < chi.coeff(m).size(); ++i) row.push_back(format_rational(chi.coeff(m)[i]));
    orders.push_back(row);
  }
  return json{{"orders", orders}}.dump();
}

std::string magnus_json(const GradedLieElement<double>& chi) {
  json orders = json::array();
  for (unsigned m = 1; m <= chi.order(); ++m) {
    json row = json::array();
    for (std::size_t i = 0; i < chi.coeff(m).size(); ++i) row.push_back(chi.coeff(m)[i]);
    orders.push_back(row);
  }
  return json{{"orders", orders}}.dump();
}

}  // namespace postlie::io
