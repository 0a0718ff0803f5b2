#include "ces/subspace_io.hpp"

#include <fstream>
#include <sstream>

namespace ces {

namespace {

Json complex_array(const Eigen::Ref<const CVector<double>>& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(Json::array({v(i).real(), v(i).imag()}));
  return arr;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "/" + key, "missing required key");
  return *it;
}

double real_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const MultipartiteSpace& space, const CMatrix<double>& vectors, const std::vector<std::string>& labels) {
  Json j;
  j["dims"] = space.dims();
  Json vs = Json::array();
  for (Index c = 0; c < vectors.cols(); ++c) vs.push_back(complex_array(vectors.col(c)));
  j["vectors"] = std::move(vs);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

Json to_json(const Subspace<double>& s) { return to_json(s.space(), s.basis()); }

Json to_json(const LambdaSet<double>& lambdas) {
  Json arr = Json::array();
  for (const auto& l : lambdas.values()) arr.push_back(Json::array({l.real(), l.imag()}));
  return arr;
}

Json to_json(const ProductVector<double>& pv) {
  Json arr = Json::array();
  for (const auto& f : pv.factors) arr.push_back(complex_array(f));
  return arr;
}

Json to_json(const SearchOutcome<double>& outcome, bool include_restarts) {
  Json j;
  j["verdict"] = to_string(outcome.verdict);
  j["best_overlap"] = outcome.best_overlap;
  j["gap"] = 1.0 - outcome.best_overlap;
  j["witness"] = to_json(outcome.witness);
  j["unconverged_restarts"] = outcome.unconverged_restarts;
  j["monotonicity_violations"] = outcome.monotonicity_violations;
  if (include_restarts) {
    j["per_restart_values"] = outcome.per_restart_values;
    j["per_restart_iterations"] = outcome.per_restart_iterations;
  }
  j["note"] = outcome.verdict == Verdict::ProductFound
                  ? "a product vector was found numerically inside the subspace"
                  : "no product vector found; this is heuristic evidence from a local search, not a certificate";
  return j;
}

VectorSet vector_set_from_json(const Json& j) {
  const Json& dims_j = member(j, "dims", "");
  if (!dims_j.is_array() || dims_j.empty()) throw ParseError("/dims", "expected a nonempty array of integers");
  std::vector<Index> dims;
  for (std::size_t i = 0; i < dims_j.size(); ++i) {
    const Json& d = dims_j[i];
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ParseError("/dims/" + std::to_string(i), "expected an integer >= 1");
    dims.push_back(static_cast<Index>(d.get<long long>()));
  }
  VectorSet out{MultipartiteSpace(dims), {}, {}};
  const Index n = out.space.total_dim();

  const Json& vs = member(j, "vectors", "");
  if (!vs.is_array()) throw ParseError("/vectors", "expected an array of vectors");
  out.vectors.resize(n, static_cast<Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c) {
    const std::string vw = "/vectors/" + std::to_string(c);
    if (!vs[c].is_array()) throw ParseError(vw, "expected an array of [re, im] pairs");
    if (static_cast<Index>(vs[c].size()) != n)
      throw ParseError(vw, "vector has " + std::to_string(vs[c].size()) + " entries, dims imply " + std::to_string(n));
    for (std::size_t i = 0; i < vs[c].size(); ++i) {
      const std::string ew = vw + "/" + std::to_string(i);
      const Json& e = vs[c][i];
      if (!e.is_array() || e.size() != 2) throw ParseError(ew, "expected [re, im]");
      out.vectors(static_cast<Index>(i), static_cast<Index>(c)) = {real_at(e[0], ew + "/0"), real_at(e[1], ew + "/1")};
    }
  }
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != vs.size()) throw ParseError("/labels", "expected one label per vector");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) throw ParseError("/labels/" + std::to_string(i), "expected a string");
      out.labels.push_back((*it)[i].get<std::string>());
    }
  }
  return out;
}

Subspace<double> subspace_from_json(const Json& j) {
  VectorSet vs = vector_set_from_json(j);
  if (vs.vectors.cols() == 0) throw ParseError("/vectors", "subspace needs at least one vector");
  try {
    return Subspace<double>(std::move(vs.space), std::move(vs.vectors));
  } catch (const std::invalid_argument& e) {
    throw ParseError("/vectors", e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace ces
