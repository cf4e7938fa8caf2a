#include "conerate/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "conerate/errors.hpp"

namespace conerate {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string_view source, const std::string& field, const std::string& what) {
  std::ostringstream os;
  os << source << ": " << field << ": " << what;
  throw ValidationError(os.str());
}

double read_real(const json& j, std::string_view source, const std::string& field) {
  if (!j.is_number()) fail(source, field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(source, field, "number is not finite");
  return x;
}

cplx read_complex(const json& j, std::string_view source, const std::string& field) {
  if (j.is_number()) return read_real(j, source, field);
  if (!j.is_array() || j.size() != 2) fail(source, field, "expected [re, im] or a number");
  return {read_real(j[0], source, field + "[0]"), read_real(j[1], source, field + "[1]")};
}

const json& array_of(const json& j, std::size_t size, std::string_view source, const std::string& field) {
  if (!j.is_array()) fail(source, field, "expected an array");
  if (j.size() != size)
    fail(source, field, "expected " + std::to_string(size) + " elements, found " + std::to_string(j.size()));
  return j;
}

template <class Scalar, class Read>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> read_square(const json& j, Index n, std::string_view source,
                                                                   const std::string& field, Read read) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  array_of(j, std::size_t(n), source, field);
  for (Index i = 0; i < n; ++i) {
    const std::string row = field + "[" + std::to_string(i) + "]";
    array_of(j[std::size_t(i)], std::size_t(n), source, row);
    for (Index c = 0; c < n; ++c)
      m(i, c) = read(j[std::size_t(i)][std::size_t(c)], source, row + "[" + std::to_string(c) + "]");
  }
  return m;
}

Index read_count(const json& doc, const char* key, std::string_view source) {
  if (!doc.contains(key)) fail(source, key, "missing");
  const json& j = doc[key];
  if (!j.is_number_integer()) fail(source, key, "expected an integer");
  const long long v = j.get<long long>();
  if (v < 1) fail(source, key, "must be positive");
  return Index(v);
}

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const char* to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::Stochastic:
      return "stochastic";
    case MatrixKind::Hermitian:
      return "hermitian";
    case MatrixKind::Kraus:
      return "kraus";
    case MatrixKind::Vector:
      return "vector";
  }
  return "vector";
}

MatrixFile parse_matrix_file(const json& doc, std::string_view source) {
  if (!doc.is_object()) fail(source, "<root>", "expected a JSON object");
  if (!doc.contains("kind")) fail(source, "kind", "missing");
  if (!doc["kind"].is_string()) fail(source, "kind", "expected a string");
  const std::string kind = doc["kind"].get<std::string>();

  MatrixFile f;
  if (kind == "stochastic")
    f.kind = MatrixKind::Stochastic;
  else if (kind == "hermitian")
    f.kind = MatrixKind::Hermitian;
  else if (kind == "kraus")
    f.kind = MatrixKind::Kraus;
  else if (kind == "vector")
    f.kind = MatrixKind::Vector;
  else
    fail(source, "kind", "unknown kind '" + kind + "' (expected stochastic, hermitian, kraus or vector)");

  f.n = read_count(doc, "n", source);
  if (f.kind != MatrixKind::Kraus && doc.contains("m")) fail(source, "m", "only allowed for kind kraus");
  if (!doc.contains("data")) fail(source, "data", "missing");
  const json& data = doc["data"];

  switch (f.kind) {
    case MatrixKind::Stochastic:
      f.real = read_square<double>(data, f.n, source, "data", read_real);
      break;
    case MatrixKind::Hermitian:
      f.complex = read_square<cplx>(data, f.n, source, "data", read_complex);
      break;
    case MatrixKind::Kraus: {
      const Index m = read_count(doc, "m", source);
      array_of(data, std::size_t(m), source, "data");
      for (Index k = 0; k < m; ++k)
        f.kraus.push_back(
            read_square<cplx>(data[std::size_t(k)], f.n, source, "data[" + std::to_string(k) + "]", read_complex));
      break;
    }
    case MatrixKind::Vector:
      array_of(data, std::size_t(f.n), source, "data");
      f.vector.resize(f.n);
      for (Index i = 0; i < f.n; ++i)
        f.vector(i) = read_real(data[std::size_t(i)], source, "data[" + std::to_string(i) + "]");
      break;
  }
  return f;
}

MatrixFile parse_matrix_text(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ": line " << line << ", column " << col << ": invalid JSON";
    throw ValidationError(os.str());
  }
  return parse_matrix_file(doc, source);
}

MatrixFile read_matrix_file(const std::string& path) { return parse_matrix_text(read_text_file(path), path); }

json to_json(const MatrixFile& f) {
  json doc;
  doc["kind"] = to_string(f.kind);
  doc["n"] = f.n;
  switch (f.kind) {
    case MatrixKind::Stochastic: {
      json rows = json::array();
      for (Index i = 0; i < f.real.rows(); ++i) {
        json row = json::array();
        for (Index c = 0; c < f.real.cols(); ++c) row.push_back(f.real(i, c));
        rows.push_back(std::move(row));
      }
      doc["data"] = std::move(rows);
      break;
    }
    case MatrixKind::Hermitian:
      doc["data"] = complex_matrix_to_json(f.complex);
      break;
    case MatrixKind::Kraus: {
      doc["m"] = f.kraus.size();
      json ops = json::array();
      for (const CMatrix& v : f.kraus) ops.push_back(complex_matrix_to_json(v));
      doc["data"] = std::move(ops);
      break;
    }
    case MatrixKind::Vector:
      doc["data"] = vector_to_json(f.vector);
      break;
  }
  return doc;
}

MatrixFile make_stochastic_file(const Matrix& a) {
  MatrixFile f;
  f.kind = MatrixKind::Stochastic;
  f.n = a.rows();
  f.real = a;
  return f;
}

MatrixFile make_hermitian_file(const CMatrix& a) {
  MatrixFile f;
  f.kind = MatrixKind::Hermitian;
  f.n = a.rows();
  f.complex = a;
  return f;
}

MatrixFile make_kraus_file(const std::vector<CMatrix>& ops) {
  MatrixFile f;
  f.kind = MatrixKind::Kraus;
  f.n = ops.empty() ? 0 : ops.front().rows();
  f.kraus = ops;
  return f;
}

MatrixFile make_vector_file(const Vector& v) {
  MatrixFile f;
  f.kind = MatrixKind::Vector;
  f.n = v.size();
  f.vector = v;
  return f;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomically(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error(path + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error(path + ": rename failed");
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace conerate
