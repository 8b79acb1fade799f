#ifndef DISTINCT_IO_HPP
#define DISTINCT_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "distinct/error.hpp"
#include "distinct/family.hpp"
#include "distinct/genpoly.hpp"
#include "distinct/linalg.hpp"
#include "distinct/pattern.hpp"

namespace distinct::io {

/// Insertion-ordered so emitted documents keep a fixed field order.
using Json = nlohmann::ordered_json;

namespace detail {

inline std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
inline std::string key_path(const std::string& path, const std::string& key) { return path + "." + key; }

inline const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(key_path(path, key), "missing field");
  return *it;
}

inline const Json& array(const Json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  if (j.size() != size)
    throw ValidationError(path, "expected " + std::to_string(size) + " elements, got " + std::to_string(j.size()));
  return j;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "number is not finite");
  return v;
}

inline std::size_t positive(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) throw ValidationError(path, "expected a positive integer");
  return j.get<std::size_t>();
}

inline std::size_t nonnegative(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ValidationError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Complex complex(const Json& j, const std::string& path) {
  array(j, path, 2);
  return {number(j[0], index_path(path, 0)), number(j[1], index_path(path, 1))};
}

/// rows x cols nested array of [re, im] pairs.
inline ComplexMatrix entries(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  array(j, path, rows);
  ComplexMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = index_path(path, i);
    array(j[i], row_path, cols);
    for (std::size_t k = 0; k < cols; ++k)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex(j[i][k], index_path(row_path, k));
  }
  return a;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json entries_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(complex_json(a(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void emit(const Json& j, std::string& out);

inline void emit_number(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // Keep floats recognizable as floats so parse -> emit is the identity.
  if (std::string_view(buf).find_first_of(".e") == std::string_view::npos) out += ".0";
}

inline void emit(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      emit_number(j.get<double>(), out);
      break;
    default:
      out += j.dump();
  }
}

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  std::string s;
  emit(j, s);
  return s;
}

/// Complex pairs and flat numeric rows print on one line.
inline bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!is_scalar(e) && !(e.is_array() && e.size() == 2 && is_scalar(e[0]) && is_scalar(e[1]))) return false;
  return true;
}

inline std::string flat_text(const Json& j) {
  std::string s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i > 0) s += ' ';
    if (j[i].is_array()) {
      s += scalar_text(j[i][0]) + "," + scalar_text(j[i][1]);
    } else {
      s += scalar_text(j[i]);
    }
  }
  return s;
}

inline void emit_text(const Json& j, const std::string& indent, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (is_scalar(v)) {
        out += indent + it.key() + ": " + scalar_text(v) + "\n";
      } else if (is_flat(v) && (v.empty() || is_scalar(v[0]))) {
        out += indent + it.key() + ": " + flat_text(v) + "\n";
      } else {
        out += indent + it.key() + ":\n";
        emit_text(v, indent + "  ", out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_scalar(e)) {
        out += indent + scalar_text(e) + "\n";
      } else if (is_flat(e)) {
        out += indent + flat_text(e) + "\n";
      } else {
        out += indent + "-\n";
        emit_text(e, indent + "  ", out);
      }
    }
  } else {
    out += indent + scalar_text(j) + "\n";
  }
}

}  // namespace detail

/// Compact JSON with fixed field order and %.17g floats; byte-identical for equal values.
inline std::string dump(const Json& j) {
  std::string out;
  detail::emit(j, out);
  return out;
}

/// Indented key: value rendering; flat numeric rows go on one line.
inline std::string dump_text(const Json& j) {
  std::string out;
  detail::emit_text(j, "", out);
  return out;
}

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("$", std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError(file, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// Matrix document: {"m", "n", "entries": m x n array of [re, im]}.

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "$") {
  const std::size_t m = detail::positive(detail::field(j, path, "m"), detail::key_path(path, "m"));
  const std::size_t n = detail::positive(detail::field(j, path, "n"), detail::key_path(path, "n"));
  return detail::entries(detail::field(j, path, "entries"), detail::key_path(path, "entries"), m, n);
}

inline Json matrix_to_json(const ComplexMatrix& a) {
  Json j;
  j["m"] = a.rows();
  j["n"] = a.cols();
  j["entries"] = detail::entries_json(a);
  return j;
}

// Family document: {"m", "n", "degree", "coeffs": degree + 1 matrices, "domain"}.

inline Domain domain_from_json(const Json& j, const std::string& path) {
  const Json& type = detail::field(j, path, "type");
  if (type == "complex_plane") return Domain::complex_plane();
  if (type != "real_interval")
    throw ValidationError(detail::key_path(path, "type"), "expected \"real_interval\" or \"complex_plane\"");
  const double a = detail::number(detail::field(j, path, "a"), detail::key_path(path, "a"));
  const double b = detail::number(detail::field(j, path, "b"), detail::key_path(path, "b"));
  if (!(a < b)) throw ValidationError(path, "interval needs a < b");
  return Domain::real_interval(a, b);
}

inline Json domain_to_json(const Domain& d) {
  Json j;
  if (d.is_real_interval()) {
    j["type"] = "real_interval";
    j["a"] = d.interval().a;
    j["b"] = d.interval().b;
  } else {
    j["type"] = "complex_plane";
  }
  return j;
}

inline MatrixPoly family_from_json(const Json& j, const std::string& path = "$") {
  const std::size_t m = detail::positive(detail::field(j, path, "m"), detail::key_path(path, "m"));
  const std::size_t n = detail::positive(detail::field(j, path, "n"), detail::key_path(path, "n"));
  const std::size_t p = detail::nonnegative(detail::field(j, path, "degree"), detail::key_path(path, "degree"));
  const std::string cpath = detail::key_path(path, "coeffs");
  const Json& coeffs = detail::array(detail::field(j, path, "coeffs"), cpath, p + 1);
  std::vector<ComplexMatrix> a;
  for (std::size_t k = 0; k <= p; ++k) a.push_back(detail::entries(coeffs[k], detail::index_path(cpath, k), m, n));
  const Domain domain = domain_from_json(detail::field(j, path, "domain"), detail::key_path(path, "domain"));
  return MatrixPoly(std::move(a), domain);
}

inline Json family_to_json(const MatrixPoly& f) {
  Json j;
  j["m"] = f.rows();
  j["n"] = f.cols();
  j["degree"] = f.degree();
  Json coeffs = Json::array();
  for (const auto& a : f.coeffs()) coeffs.push_back(detail::entries_json(a));
  j["coeffs"] = std::move(coeffs);
  j["domain"] = domain_to_json(f.domain());
  return j;
}

// Pattern document: {"m", "n", "cells": m x n array of 0/1}.

inline Pattern pattern_from_json(const Json& j, const std::string& path = "$") {
  const std::size_t m = detail::positive(detail::field(j, path, "m"), detail::key_path(path, "m"));
  const std::size_t n = detail::positive(detail::field(j, path, "n"), detail::key_path(path, "n"));
  const std::string cpath = detail::key_path(path, "cells");
  const Json& cells = detail::array(detail::field(j, path, "cells"), cpath, m);
  std::vector<std::uint8_t> flat;
  for (std::size_t i = 0; i < m; ++i) {
    const std::string row_path = detail::index_path(cpath, i);
    detail::array(cells[i], row_path, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Json& c = cells[i][k];
      if (!c.is_number_integer() || (c.get<long long>() != 0 && c.get<long long>() != 1))
        throw ValidationError(detail::index_path(row_path, k), "pattern cells must be 0 or 1");
      flat.push_back(static_cast<std::uint8_t>(c.get<int>()));
    }
  }
  return Pattern(m, n, std::move(flat));
}

inline Json pattern_to_json(const Pattern& p) {
  Json j;
  j["m"] = p.rows();
  j["n"] = p.cols();
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < p.cols(); ++k) row.push_back(p(i, k) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  return j;
}

// Class document: {"k", "m", "n", "q": k lists of monomials}, q[i] multiplying
// x^i; a monomial is {"coeff": [re, im], "powers": [[row, col, exponent], ...]}
// with 0-based positions. Built-ins: {"builtin": "coordinate", "k", "m", "n"}
// and {"builtin": "charpoly", "n"}.

inline GenPolyClass class_from_json(const Json& j, const std::string& path = "$") {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  if (j.contains("builtin")) {
    const Json& name = j["builtin"];
    const std::string npath = detail::key_path(path, "builtin");
    const std::size_t n = detail::positive(detail::field(j, path, "n"), detail::key_path(path, "n"));
    if (name == "charpoly") return GenPolyClass::charpoly(n);
    if (name != "coordinate") throw ValidationError(npath, "expected \"coordinate\" or \"charpoly\"");
    const std::size_t m = detail::positive(detail::field(j, path, "m"), detail::key_path(path, "m"));
    const std::size_t k = detail::positive(detail::field(j, path, "k"), detail::key_path(path, "k"));
    if (k > m * n) throw ValidationError(detail::key_path(path, "k"), "coordinate class needs k <= m n");
    return GenPolyClass::coordinate(k, m, n);
  }
  const std::size_t k = detail::positive(detail::field(j, path, "k"), detail::key_path(path, "k"));
  const std::size_t m = detail::positive(detail::field(j, path, "m"), detail::key_path(path, "m"));
  const std::size_t n = detail::positive(detail::field(j, path, "n"), detail::key_path(path, "n"));
  const std::string qpath = detail::key_path(path, "q");
  const Json& q = detail::array(detail::field(j, path, "q"), qpath, k);
  std::vector<CoefficientMap> maps(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string ipath = detail::index_path(qpath, i);
    if (!q[i].is_array()) throw ValidationError(ipath, "expected an array of monomials");
    for (std::size_t t = 0; t < q[i].size(); ++t) {
      const std::string tpath = detail::index_path(ipath, t);
      EntryMonomial mono;
      mono.coefficient = detail::complex(detail::field(q[i][t], tpath, "coeff"), detail::key_path(tpath, "coeff"));
      const std::string ppath = detail::key_path(tpath, "powers");
      const Json& powers = detail::field(q[i][t], tpath, "powers");
      if (!powers.is_array()) throw ValidationError(ppath, "expected an array");
      for (std::size_t e = 0; e < powers.size(); ++e) {
        const std::string epath = detail::index_path(ppath, e);
        detail::array(powers[e], epath, 3);
        const std::size_t row = detail::nonnegative(powers[e][0], detail::index_path(epath, 0));
        const std::size_t col = detail::nonnegative(powers[e][1], detail::index_path(epath, 1));
        const std::size_t exponent = detail::positive(powers[e][2], detail::index_path(epath, 2));
        if (row >= m || col >= n)
          throw ValidationError(epath, "monomial references entry (" + std::to_string(row) + ", " +
                                           std::to_string(col) + ") outside the " + std::to_string(m) + " x " +
                                           std::to_string(n) + " matrix");
        mono.powers.push_back({{row, col}, static_cast<unsigned>(exponent)});
      }
      maps[i].monomials.push_back(std::move(mono));
    }
  }
  return GenPolyClass(m, n, std::move(maps));
}

inline Json class_to_json(const GenPolyClass& p) {
  Json j;
  j["k"] = p.k();
  j["m"] = p.rows();
  j["n"] = p.cols();
  Json q = Json::array();
  for (const auto& map : p.coefficient_maps()) {
    Json monos = Json::array();
    for (const auto& mono : map.monomials) {
      Json powers = Json::array();
      for (const auto& e : mono.powers) powers.push_back(Json::array({e.position.row, e.position.col, e.exponent}));
      Json jm;
      jm["coeff"] = detail::complex_json(mono.coefficient);
      jm["powers"] = std::move(powers);
      monos.push_back(std::move(jm));
    }
    q.push_back(std::move(monos));
  }
  j["q"] = std::move(q);
  return j;
}

}  // namespace distinct::io

#endif  // DISTINCT_IO_HPP
