#pragma once

// JSON matrix files:
//
//   {"kind": "stochastic", "n": 2, "data": [[0.7, 0.3], [0.4, 0.6]]}
//   {"kind": "vector",     "n": 3, "data": [1, 2, 3]}
//   {"kind": "hermitian",  "n": 2, "data": [[[1, 0], [0, -1]], [[0, 1], [2, 0]]]}
//   {"kind": "kraus", "n": 2, "m": 1, "data": [ <n×n complex matrix>, ... ]}
//
// Complex entries are [re, im] pairs; a plain number is accepted as a real
// entry when reading, and complex entries are always written as pairs.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conerate/linalg.hpp"

namespace conerate {

enum class MatrixKind { Stochastic, Hermitian, Kraus, Vector };

const char* to_string(MatrixKind k);

struct MatrixFile {
  MatrixKind kind = MatrixKind::Vector;
  Index n = 0;
  Matrix real;                 // stochastic
  CMatrix complex;             // hermitian
  std::vector<CMatrix> kraus;  // kraus, m = kraus.size()
  Vector vector;               // vector
};

/// Structural parse. Errors are ValidationErrors whose message starts with
/// `source` and the offending field path, e.g. "a.json: data[1][0]: ...".
/// Kind-specific invariants (row sums, completeness, symmetry) are left to
/// the domain types.
MatrixFile parse_matrix_file(const nlohmann::json& doc, std::string_view source = "<input>");

/// Parses text, reporting JSON syntax errors with line and column.
MatrixFile parse_matrix_text(std::string_view text, std::string_view source = "<input>");

MatrixFile read_matrix_file(const std::string& path);

nlohmann::json to_json(const MatrixFile& f);

MatrixFile make_stochastic_file(const Matrix& a);
MatrixFile make_hermitian_file(const CMatrix& a);
MatrixFile make_kraus_file(const std::vector<CMatrix>& ops);
MatrixFile make_vector_file(const Vector& v);

nlohmann::json complex_to_json(cplx z);
nlohmann::json vector_to_json(const Vector& v);
nlohmann::json vector_to_json(const CVector& v);

std::string read_text_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::string& path, std::string_view content);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t h);

}  // namespace conerate
