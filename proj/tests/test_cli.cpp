#include "ces/commands.hpp"
#include "ces/subspace_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ces;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ces");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ces_test_cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_dims") {
  CHECK(cli::parse_dims("3,3") == std::vector<Index>{3, 3});
  CHECK(cli::parse_dims("2,2,2") == std::vector<Index>{2, 2, 2});
  CHECK_THROWS_AS(cli::parse_dims("2"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_dims("2,,3"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_dims("2,x"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_dims("2,3,"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_dims("0,3"), std::invalid_argument);
}

TEST_CASE("construct") {
  const auto path = scratch("ces_3x3.json");
  const auto r = run_cli({"construct", "--dims", "3,3", "--out", path});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("subspace dimension 4; formula 9 - 6 + 1 = 4") != std::string::npos);
  const auto s = subspace_from_json(read_json_file(path));
  CHECK(s.dim() == 4);
  const Json side = read_json_file(scratch("ces_3x3.lambdas.json"));
  CHECK(side["lambdas"].size() == 5);

  const auto r3 = run_cli({"construct", "--dims", "2,2,2", "--out", scratch("ces_2x2x2.json"), "--json"});
  CHECK(r3.code == cli::kOk);
  const Json report = parse_json_text(r3.out);
  CHECK(report["overall"] == true);
  CHECK(subspace_from_json(read_json_file(scratch("ces_2x2x2.json"))).dim() == 4);

  CHECK(run_cli({"construct", "--dims", "3,3", "--lambda-mode", "random", "--seed", "5", "--out", scratch("r.json")})
            .code == cli::kOk);
  CHECK(run_cli({"construct", "--dims", "3,3", "--lambda-mode", "bogus", "--out", scratch("r.json")}).code ==
        cli::kUsage);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli({}).code == cli::kUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(run_cli({"construct"}).code == cli::kUsage);
  const auto single = run_cli({"construct", "--dims", "2"});
  CHECK(single.code == cli::kUsage);
  CHECK(single.err.find("usage") != std::string::npos);
  CHECK(run_cli({"basis", "--n", "1"}).code == cli::kUsage);
  CHECK(run_cli({"basis", "--n", "abc"}).code == cli::kUsage);
  CHECK(run_cli({"search", "--in", scratch("x.json"), "--restarts", "0"}).code != cli::kOk);
}

TEST_CASE("io errors exit 2") {
  CHECK(run_cli({"construct", "--dims", "3,3", "--out", "/nonexistent_dir_for_ces/out.json"}).code == cli::kIo);
  CHECK(run_cli({"search", "--in", scratch("missing.json")}).code == cli::kIo);
}

TEST_CASE("basis") {
  const auto r2 = run_cli({"basis", "--n", "2", "--out", scratch("b2.json")});
  CHECK(r2.code == cli::kOk);
  CHECK(vector_set_from_json(read_json_file(scratch("b2.json"))).vectors.cols() == 1);
  const auto r5 = run_cli({"basis", "--n", "5", "--out", scratch("b5.json")});
  CHECK(r5.code == cli::kOk);
  const auto set = vector_set_from_json(read_json_file(scratch("b5.json")));
  CHECK(set.vectors.cols() == 16);
  CHECK(set.labels.front() == "B0");
  CHECK(set.labels.back() == "K6");
}

TEST_CASE("search") {
  const auto ces_file = scratch("search_ces.json");
  REQUIRE(run_cli({"construct", "--dims", "3,3", "--out", ces_file}).code == cli::kOk);
  const auto none = run_cli({"search", "--in", ces_file, "--restarts", "50", "--json"});
  CHECK(none.code == cli::kOk);
  CHECK(parse_json_text(none.out)["outcome"]["verdict"] == "none_found");

  const auto e00 = scratch("e00.json");
  {
    std::ofstream f(e00);
    f << R"({"dims":[2,2],"vectors":[[[1,0],[0,0],[0,0],[0,0]]]})";
  }
  const auto found = run_cli({"search", "--in", e00, "--restarts", "5", "--json"});
  CHECK(found.code == cli::kOk);
  CHECK(parse_json_text(found.out)["outcome"]["verdict"] == "product_found");

  const auto rnd = scratch("random_3x3.json");
  REQUIRE(run_cli({"random-subspace", "--dims", "3,3", "--out", rnd, "--seed", "3"}).code == cli::kOk);
  CHECK(subspace_from_json(read_json_file(rnd)).dim() == 5);
  const auto out_file = scratch("search_out.json");
  const auto rr = run_cli({"search", "--in", rnd, "--restarts", "50", "--tol", "1e-9", "--out", out_file});
  CHECK(rr.code == cli::kOk);
  CHECK(read_json_file(out_file)["outcome"]["verdict"] == "product_found");

  const auto bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"dims":[2,2],"vectors":[[[1,0],[0,0]]]})";
  }
  const auto malformed = run_cli({"search", "--in", bad});
  CHECK(malformed.code == cli::kUsage);
  CHECK(malformed.err.find("/vectors/0") != std::string::npos);
  {
    std::ofstream f(bad);
    f << "{not json";
  }
  CHECK(run_cli({"search", "--in", bad}).code == cli::kUsage);
}

TEST_CASE("same seed gives byte-identical reports") {
  const auto ces_file = scratch("det_ces.json");
  REQUIRE(run_cli({"construct", "--dims", "2,3", "--out", ces_file}).code == cli::kOk);
  const auto a = run_cli({"search", "--in", ces_file, "--seed", "11", "--restarts", "20", "--no-timing"});
  const auto b = run_cli({"search", "--in", ces_file, "--seed", "11", "--restarts", "20", "--no-timing"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const auto c = run_cli({"search", "--in", ces_file, "--seed", "12", "--restarts", "20", "--no-timing"});
  CHECK(a.out != c.out);

  run_cli({"stabilizer", "--group", "Z2", "--seed", "4", "--no-timing", "--out", scratch("s1.json")});
  run_cli({"stabilizer", "--group", "Z2", "--seed", "4", "--no-timing", "--out", scratch("s2.json")});
  CHECK(slurp(scratch("s1.json")) == slurp(scratch("s2.json")));
  CHECK_FALSE(slurp(scratch("s1.json")).empty());
}

TEST_CASE("stabilizer") {
  const auto z2 = run_cli({"stabilizer", "--group", "Z2", "--mode", "exhaustive", "--json"});
  CHECK(z2.code == cli::kOk);
  const Json j = parse_json_text(z2.out);
  CHECK(j["overall"] == true);
  CHECK(j["inputs"]["mode"] == "exhaustive");

  const auto z3 = run_cli({"stabilizer", "--group", "Z3", "--mode", "sampled", "--seed", "7"});
  CHECK(z3.code == cli::kOk);
  CHECK(parse_json_text(z3.out)["overall"] == true);
  const auto summary = run_cli({"stabilizer", "--group", "Z3", "--seed", "7", "--out", scratch("z3.json")});
  CHECK(summary.code == cli::kOk);
  CHECK(summary.out.find("stabilizer: PASS") != std::string::npos);

  const auto z7 = run_cli({"stabilizer", "--group", "Z7"});
  CHECK(z7.code == cli::kUsage);
  CHECK(z7.err.find("d^5 > 1024") != std::string::npos);
  CHECK(run_cli({"stabilizer", "--group", "Q8"}).code == cli::kUsage);
  CHECK(run_cli({"stabilizer", "--group", "Z2", "--mode", "fast"}).code == cli::kUsage);
}
