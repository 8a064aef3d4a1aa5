#pragma once

// JSON tensor documents: the on-disk exchange format for curvature tensors.
//
// A document is a JSON object with keys
//   dim  (required)  even integer >= 4,
//   J    (optional)  dim x dim matrix; canonical block structure if absent,
//   g    (optional)  dim x dim matrix; identity if absent,
//   R    (required)  coefficients, in one of two shapes:
//          * nested: dim arrays of dim arrays of dim arrays of dim numbers,
//            R[i][j][k][l] = R(e_i, e_j, e_k, e_l);
//          * sparse: a list of records [i, j, k, l, value] with 0-based
//            indices; unspecified entries are zero and duplicate records
//            overwrite earlier ones.
//
// Malformed documents raise format_error with the offending field (and the
// line for syntax errors); documents that parse but violate the structural
// invariants raise validation_error from the usual constructors.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvlab/common.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/hermitian_space.hpp"

namespace curvlab {

struct TensorDocument {
  int dim = 0;
  std::optional<Matrix> J;  // absent means the canonical block structure
  std::optional<Matrix> g;  // absent means the identity metric
  std::vector<double> coefficients;  // dense, row-major, dim^4 entries
};

namespace detail {

inline int line_of_byte_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline double number_field(const nlohmann::json& value, const std::string& where) {
  if (!value.is_number())
    throw format_error(where + " must be a number, got " + std::string(value.type_name()));
  return value.get<double>();
}

inline int index_field(const nlohmann::json& value, int dim, const std::string& where) {
  if (!value.is_number_integer() && !value.is_number_unsigned())
    throw format_error(where + " must be an integer index");
  const std::int64_t i = value.get<std::int64_t>();
  if (i < 0 || i >= dim)
    throw format_error(where + " is out of range: " + std::to_string(i) +
                       " (indices are 0-based, dim = " + std::to_string(dim) + ")");
  return static_cast<int>(i);
}

inline Matrix matrix_field(const nlohmann::json& value, int dim, const std::string& name) {
  if (!value.is_array() || static_cast<int>(value.size()) != dim)
    throw format_error("field '" + name + "' must be an array of " + std::to_string(dim) +
                       " rows");
  Matrix out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const nlohmann::json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw format_error("field '" + name + "' row " + std::to_string(r) + " must have " +
                         std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      out(r, c) = number_field(row[static_cast<std::size_t>(c)],
                               "'" + name + "'[" + std::to_string(r) + "][" +
                                   std::to_string(c) + "]");
  }
  return out;
}

inline void parse_nested_coefficients(const nlohmann::json& R, int dim,
                                      std::vector<double>& out) {
  if (static_cast<int>(R.size()) != dim)
    throw format_error("nested field 'R' must have " + std::to_string(dim) +
                       " outer entries, got " + std::to_string(R.size()));
  std::size_t pos = 0;
  for (int i = 0; i < dim; ++i) {
    const nlohmann::json& ri = R[static_cast<std::size_t>(i)];
    if (!ri.is_array() || static_cast<int>(ri.size()) != dim)
      throw format_error("'R'[" + std::to_string(i) + "] must be an array of " +
                         std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) {
      const nlohmann::json& rij = ri[static_cast<std::size_t>(j)];
      if (!rij.is_array() || static_cast<int>(rij.size()) != dim)
        throw format_error("'R'[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] must be an array of " + std::to_string(dim) + " entries");
      for (int k = 0; k < dim; ++k) {
        const nlohmann::json& rijk = rij[static_cast<std::size_t>(k)];
        if (!rijk.is_array() || static_cast<int>(rijk.size()) != dim)
          throw format_error("'R'[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                             std::to_string(k) + "] must be an array of " +
                             std::to_string(dim) + " entries");
        for (int l = 0; l < dim; ++l)
          out[pos++] = number_field(
              rijk[static_cast<std::size_t>(l)],
              "'R'[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                  std::to_string(k) + "][" + std::to_string(l) + "]");
      }
    }
  }
}

inline void parse_sparse_coefficients(const nlohmann::json& R, int dim,
                                      std::vector<double>& out) {
  for (std::size_t n = 0; n < R.size(); ++n) {
    const nlohmann::json& record = R[n];
    const std::string where = "'R' record " + std::to_string(n);
    if (!record.is_array() || record.size() != 5)
      throw format_error(where + " must be [i, j, k, l, value]");
    const int i = index_field(record[0], dim, where + " index i");
    const int j = index_field(record[1], dim, where + " index j");
    const int k = index_field(record[2], dim, where + " index k");
    const int l = index_field(record[3], dim, where + " index l");
    const double value = number_field(record[4], where + " value");
    out[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)] = value;
  }
}

}  // namespace detail

inline TensorDocument parse_tensor_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error("JSON syntax error near line " +
                       std::to_string(detail::line_of_byte_offset(text, e.byte)) + ": " +
                       e.what());
  }
  if (!j.is_object()) throw format_error("top-level value must be an object");

  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "dim" && key != "J" && key != "g" && key != "R")
      throw format_error("unknown field '" + key + "' (expected dim, J, g, R)");
  }

  if (!j.contains("dim")) throw format_error("missing required field 'dim'");
  const nlohmann::json& dim_field = j["dim"];
  if (!dim_field.is_number_integer() && !dim_field.is_number_unsigned())
    throw format_error("field 'dim' must be an integer");
  const std::int64_t dim_value = dim_field.get<std::int64_t>();
  if (dim_value < 4 || dim_value % 2 != 0)
    throw format_error("field 'dim' must be an even integer >= 4, got " +
                       std::to_string(dim_value));

  TensorDocument doc;
  doc.dim = static_cast<int>(dim_value);
  if (j.contains("J")) doc.J = detail::matrix_field(j["J"], doc.dim, "J");
  if (j.contains("g")) doc.g = detail::matrix_field(j["g"], doc.dim, "g");

  if (!j.contains("R")) throw format_error("missing required field 'R'");
  const nlohmann::json& R = j["R"];
  if (!R.is_array()) throw format_error("field 'R' must be an array");

  const std::size_t total =
      static_cast<std::size_t>(doc.dim) * doc.dim * doc.dim * doc.dim;
  doc.coefficients.assign(total, 0.0);
  if (!R.empty()) {
    const nlohmann::json& first = R[0];
    if (!first.is_array() || first.empty())
      throw format_error("field 'R' must hold nested rows or [i, j, k, l, value] records");
    if (first[0].is_array())
      detail::parse_nested_coefficients(R, doc.dim, doc.coefficients);
    else
      detail::parse_sparse_coefficients(R, doc.dim, doc.coefficients);
  }
  return doc;
}

inline TensorDocument load_tensor_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw format_error(path + ": read failure");
  try {
    return parse_tensor_document(buffer.str());
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

/// Context described by the document (canonical structures when omitted).
/// Structural violations surface as validation_error from the constructor.
inline HermitianContext context_from_document(const TensorDocument& doc) {
  const int m = doc.dim / 2;
  Matrix J = doc.J ? *doc.J : detail::canonical_complex_structure(m);
  Matrix g = doc.g ? *doc.g : Matrix::Identity(doc.dim, doc.dim);
  return HermitianContext(m, std::move(J), std::move(g));
}

inline CurvatureTensor tensor_from_document(const TensorDocument& doc,
                                            const HermitianContext& ctx,
                                            bool validate = true) {
  if (ctx.dim() != doc.dim)
    throw std::invalid_argument("tensor_from_document: context dim " +
                                std::to_string(ctx.dim()) + " != document dim " +
                                std::to_string(doc.dim));
  return CurvatureTensor(ctx, doc.coefficients, validate);
}

inline nlohmann::json tensor_to_json(const CurvatureTensor& R) {
  const HermitianContext& ctx = R.context();
  const int dim = R.dim();
  nlohmann::json j;
  j["dim"] = dim;

  const Matrix canonical_J = detail::canonical_complex_structure(dim / 2);
  if (ctx.complex_structure() != canonical_J) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < dim; ++c) row.push_back(ctx.complex_structure()(r, c));
      rows.push_back(std::move(row));
    }
    j["J"] = std::move(rows);
  }
  if (ctx.metric() != Matrix::Identity(dim, dim)) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < dim; ++c) row.push_back(ctx.metric()(r, c));
      rows.push_back(std::move(row));
    }
    j["g"] = std::move(rows);
  }

  const std::vector<double>& c = R.coefficients();
  nlohmann::json outer = nlohmann::json::array();
  std::size_t pos = 0;
  for (int i = 0; i < dim; ++i) {
    nlohmann::json level_j = nlohmann::json::array();
    for (int jj = 0; jj < dim; ++jj) {
      nlohmann::json level_k = nlohmann::json::array();
      for (int k = 0; k < dim; ++k) {
        nlohmann::json level_l = nlohmann::json::array();
        for (int l = 0; l < dim; ++l) level_l.push_back(c[pos++]);
        level_k.push_back(std::move(level_l));
      }
      level_j.push_back(std::move(level_k));
    }
    outer.push_back(std::move(level_j));
  }
  j["R"] = std::move(outer);
  return j;
}

/// Writes a document that parse_tensor_document reads back to the same
/// tensor (nlohmann serializes doubles with round-trip precision).
/// Canonical J and identity g are omitted.
inline void write_tensor_file(const std::string& path, const CurvatureTensor& R) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error(path + ": cannot open file for writing");
  out << tensor_to_json(R).dump(1) << '\n';
  if (!out) throw format_error(path + ": write failure");
}

}  // namespace curvlab
