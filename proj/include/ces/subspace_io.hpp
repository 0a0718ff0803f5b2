// JSON file formats.
//
// Subspace / vector set:
//   {"dims": [d1, ..., dk], "vectors": [[[re, im], ...], ...]}
// with each vector given by its flat coordinates (subsystem 1 most
// significant). Optional extra keys: "labels" (one string per vector).
#pragma once

#include "ces/product_search.hpp"
#include "ces/report.hpp"
#include "ces/tensor_core.hpp"
#include "ces/vandermonde.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace ces {

/// Malformed input; `where()` is a JSON pointer or a byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VectorSet {
  MultipartiteSpace space;
  CMatrix<double> vectors;  // one vector per column
  std::vector<std::string> labels;
};

Json to_json(const MultipartiteSpace& space, const CMatrix<double>& vectors,
             const std::vector<std::string>& labels = {});
Json to_json(const Subspace<double>& s);
Json to_json(const LambdaSet<double>& lambdas);
Json to_json(const ProductVector<double>& pv);
Json to_json(const SearchOutcome<double>& outcome, bool include_restarts = true);

VectorSet vector_set_from_json(const Json& j);
/// Parses and validates orthonormality.
Subspace<double> subspace_from_json(const Json& j);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace ces
