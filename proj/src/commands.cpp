#include "ces/commands.hpp"

#include "ces/explicit_basis.hpp"
#include "ces/product_search.hpp"
#include "ces/subspace_io.hpp"
#include "ces/vandermonde.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace ces::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void stamp(VerificationReport& r, const GlobalOptions& g, Clock::time_point start) {
  r.wall_time_ms = g.no_timing ? 0 : elapsed_ms(start);
}

std::string dims_tag(const std::vector<Index>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

/// "out.json" -> "out.lambdas.json"
std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension();
  p += ".lambdas.json";
  return p;
}

LambdaSet<double> lambdas_for(const std::string& mode, Index n, std::uint64_t seed) {
  if (mode == "roots") return LambdaSet<double>::roots_of_unity(n);
  if (mode == "shifted") return LambdaSet<double>::roots_of_unity(n, 0.5);
  if (mode == "random") return LambdaSet<double>::random_unit_circle(n, seed);
  throw std::invalid_argument("unknown lambda mode '" + mode + "' (expected roots, shifted or random)");
}

VerificationReport construct_report(const Subspace<double>& s, const LambdaSet<double>& lambdas) {
  const auto& dims = s.space().dims();
  VerificationReport r = verify_no_product_constraints<double>(s, lambdas);
  r.command = "construct";
  r.inputs["dims"] = dims;
  const Index expected = max_ces_dim(dims);
  const Index n = constraint_count(dims);
  r.add(Check::equal("subspace_dim", static_cast<double>(s.dim()), static_cast<double>(expected)));
  r.add(Check::equal("constraints_plus_dim", static_cast<double>(n + s.dim()),
                     static_cast<double>(s.space().total_dim())));
  r.add(Check::below("gram_deviation", gram_deviation<double>(s.basis()), Tolerances<double>::orth));
  r.notes["expected_dim_formula"] = "prod(d) - sum(d) + k - 1";
  r.notes["expected_dim"] = expected;
  r.notes["constraint_count"] = n;
  return r;
}

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

std::string summary_line(const VerificationReport& r) {
  std::ostringstream os;
  const auto failures = r.failures();
  os << r.command << ": " << (r.overall() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks";
  if (!failures.empty()) os << ", " << failures.size() << " failed";
  os << ")";
  return os.str();
}

void print_checks(const VerificationReport& r, std::ostream& out) {
  for (const auto& c : r.checks) {
    const char* cmp = c.kind == Check::Kind::Below ? "<" : c.kind == Check::Kind::Above ? ">" : "==";
    out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << " = " << c.value << " (" << cmp << " "
        << c.threshold << ")\n";
  }
}

}  // namespace

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9)
      throw std::invalid_argument("bad dimension '" + item + "' in '" + text + "'");
    const long v = std::stol(item);
    if (v < 1) throw std::invalid_argument("dimensions must be >= 1");
    dims.push_back(static_cast<Index>(v));
  }
  if (!text.empty() && text.back() == ',') throw std::invalid_argument("trailing comma in '" + text + "'");
  if (dims.size() < 2) throw std::invalid_argument("need at least two subsystems, got '" + text + "'");
  return dims;
}

int cmd_construct(const ConstructOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<Index> dims;
  try {
    dims = parse_dims(opt.dims);
    if (max_ces_dim(dims) < 1) throw std::invalid_argument("dims " + opt.dims + " admit no completely entangled subspace");
  } catch (const std::exception& e) {
    err << "construct: " << e.what() << "\nusage: ces construct --dims d1,d2[,...] [--lambda-mode roots|shifted|random]\n";
    return kUsage;
  }
  const MultipartiteSpace space(dims);
  std::optional<LambdaSet<double>> lambdas;
  try {
    lambdas = lambdas_for(opt.lambda_mode, constraint_count(dims), g.seed);
  } catch (const std::invalid_argument& e) {
    err << "construct: " << e.what() << '\n';
    return kUsage;
  }
  Subspace<double> s = construct_ces<double>(space, lambdas);
  VerificationReport report = construct_report(s, *lambdas);
  report.inputs["lambda_mode"] = opt.lambda_mode;
  report.inputs["seed"] = g.seed;

  const std::filesystem::path path = g.out.empty() ? "ces_" + dims_tag(dims) + ".json" : g.out;
  Json sidecar;
  sidecar["dims"] = dims;
  sidecar["lambda_mode"] = opt.lambda_mode;
  sidecar["seed"] = g.seed;
  sidecar["lambdas"] = to_json(*lambdas);
  try {
    write_json_file(path, to_json(s));
    write_json_file(sidecar_path(path), sidecar);
  } catch (const IoError& e) {
    err << "construct: " << e.what() << '\n';
    return kIo;
  }
  report.inputs["out"] = path.string();
  stamp(report, g, start);
  if (g.json) {
    emit(to_json(report), out);
  } else {
    Index prod = 1, sum = 0;
    for (Index d : dims) {
      prod *= d;
      sum += d;
    }
    out << "dims " << dims_tag(dims) << ": subspace dimension " << s.dim() << "; formula " << prod << " - " << sum
        << " + " << dims.size() - 1 << " = " << max_ces_dim(dims) << "\n"
        << "wrote " << path.string() << " and " << sidecar_path(path).string() << '\n';
  }
  return report.overall() ? kOk : kInternal;
}

int cmd_explicit_basis(const BasisOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  if (opt.n < 2 || opt.n > 64) {
    err << "basis: n must be in [2, 64], got " << opt.n << "\nusage: ces basis --n N\n";
    return kUsage;
  }
  const Index n = opt.n;
  const auto blocks = full_explicit_basis<double>(n);
  VerificationReport report = check_explicit_basis<double>(n, std::span<const BasisBlock<double>>(blocks));
  report.command = "basis";
  stamp(report, g, start);
  if (!report.overall()) {
    err << "basis: internal check failed\n";
    print_checks(report, err);
    return kInternal;
  }
  std::vector<std::string> labels;
  for (const auto& b : blocks)
    for (Index i = 0; i < b.size(); ++i) labels.push_back(b.label);
  const CMatrix<double> all = stack_blocks<double>(std::span<const BasisBlock<double>>(blocks));
  const std::filesystem::path path = g.out.empty() ? "basis_n" + std::to_string(n) + ".json" : g.out;
  try {
    write_json_file(path, to_json(MultipartiteSpace({n, n}), all, labels));
  } catch (const IoError& e) {
    err << "basis: " << e.what() << '\n';
    return kIo;
  }
  if (g.json) {
    emit(to_json(report), out);
  } else {
    out << "n = " << n << ": " << all.cols() << " basis vectors (expected (n-1)^2 = " << (n - 1) * (n - 1) << ")\n";
    for (const auto& b : blocks) out << "  " << b.label << ": " << b.size() << '\n';
    out << "wrote " << path.string() << '\n';
  }
  return kOk;
}

int cmd_search(const SearchOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::optional<Subspace<double>> s;
  try {
    s = subspace_from_json(read_json_file(opt.input));
  } catch (const IoError& e) {
    err << "search: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "search: malformed subspace file " << opt.input << " at " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "search: invalid subspace file " << opt.input << ": " << e.what() << '\n';
    return kUsage;
  }
  SeesawConfig<double> cfg;
  cfg.restarts = opt.restarts;
  cfg.max_iters = opt.max_iters;
  cfg.tol_decision = opt.tol;
  cfg.seed = g.seed;
  try {
    cfg.validate();
    if (s->space().parties() < 2) throw std::invalid_argument("subspace must live in at least two subsystems");
  } catch (const std::invalid_argument& e) {
    err << "search: " << e.what() << '\n';
    return kUsage;
  }
  const auto outcome = seesaw_search<double>(*s, cfg);
  Json j;
  j["command"] = "search";
  j["inputs"] = {{"file", opt.input},
                 {"dims", s->space().dims()},
                 {"subspace_dim", s->dim()},
                 {"restarts", cfg.restarts},
                 {"max_iters", cfg.max_iters},
                 {"tol_decision", cfg.tol_decision},
                 {"seed", cfg.seed}};
  j["outcome"] = to_json(outcome);
  j["wall_time_ms"] = g.no_timing ? 0 : elapsed_ms(start);
  if (!g.out.empty()) {
    try {
      write_json_file(g.out, j);
    } catch (const IoError& e) {
      err << "search: " << e.what() << '\n';
      return kIo;
    }
  }
  if (g.json || g.out.empty()) {
    emit(j, out);
  } else {
    out << "verdict " << to_string(outcome.verdict) << ", best overlap " << outcome.best_overlap << " (gap "
        << 1.0 - outcome.best_overlap << ")\nwrote " << g.out << '\n';
  }
  return kOk;
}

int cmd_random_subspace(const RandomSubspaceOptions& opt, const GlobalOptions& g, std::ostream& out,
                        std::ostream& err) {
  std::vector<Index> dims;
  Index m = 0;
  try {
    dims = parse_dims(opt.dims);
    const MultipartiteSpace space(dims);
    m = opt.dim ? static_cast<Index>(*opt.dim) : max_ces_dim(dims) + 1;
    if (m < 1 || m > space.total_dim()) throw std::invalid_argument("subspace dimension out of range");
  } catch (const std::exception& e) {
    err << "random-subspace: " << e.what() << '\n';
    return kUsage;
  }
  const MultipartiteSpace space(dims);
  auto rng = seeded_engine(g.seed, 0x5eed);
  const auto s = haar_random_subspace<double>(space, m, rng);
  const std::filesystem::path path =
      g.out.empty() ? "random_" + dims_tag(dims) + "_dim" + std::to_string(m) + ".json" : g.out;
  try {
    write_json_file(path, to_json(s));
  } catch (const IoError& e) {
    err << "random-subspace: " << e.what() << '\n';
    return kIo;
  }
  out << "wrote Haar-random " << m << "-dimensional subspace of " << dims_tag(dims) << " to " << path.string()
      << '\n';
  return kOk;
}

VerificationReport stabilizer_suite(const FiniteAbelianGroup& group, VerificationMode mode, std::uint64_t seed) {
  const StabilizerCode<double> code(group);
  const int d = code.d();
  const Index n = code.dim();
  VerificationReport r;
  r.command = "stabilizer";
  r.inputs["group"] = group.name();
  r.inputs["d"] = d;
  r.inputs["mode"] = mode == VerificationMode::Exhaustive ? "exhaustive" : "sampled";
  r.inputs["seed"] = seed;
  auto rng = seeded_engine(seed, 0x57ab);

  // Bicharacter axioms, exhaustively on A.
  double sym = 0, mult = 0, modulus = 0;
  int degenerate = 0;
  for (int a = 0; a < d; ++a) {
    bool trivial = true;
    for (int b = 0; b < d; ++b) {
      sym = std::max(sym, std::abs(code.chi(a, b) - code.chi(b, a)));
      modulus = std::max(modulus, std::abs(std::abs(code.chi(a, b)) - 1.0));
      if (std::abs(code.chi(a, b) - 1.0) > 1e-12) trivial = false;
      for (int c = 0; c < d; ++c)
        mult = std::max(mult, std::abs(code.chi(a, group.add(b, c)) - code.chi(a, b) * code.chi(a, c)));
    }
    if (trivial && a != 0) ++degenerate;
  }
  r.add(Check::below("bicharacter_symmetry", sym, 1e-12));
  r.add(Check::below("bicharacter_multiplicativity", mult, 1e-12));
  r.add(Check::below("bicharacter_modulus", modulus, 1e-12));
  r.add(Check::equal("bicharacter_degenerate_elements", degenerate, 0));

  const CMatrix<double> p = code.projector_pc();
  r.add(Check::below("pc_idempotence_frobenius", (p * p - p).norm(), 1e-10));
  r.add(Check::below("pc_hermiticity_frobenius", (p - p.adjoint()).norm(), 1e-10));
  r.add(Check::below("pc_trace_minus_d", std::abs(p.trace() - std::complex<double>(d)), 1e-10));
  const CMatrix<double> range = projector_range<double>(p);
  r.add(Check::equal("pc_rank", static_cast<double>(range.cols()), d));
  r.notes["expected"] = {{"trace", d}, {"rank", d}, {"diagonal_entry", std::pow(double(d), -4)}};

  // Closed-form matrix elements against the direct sum over C.
  double closed = 0, diag = 0;
  Index entries = 0;
  if (mode == VerificationMode::Exhaustive) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b, ++entries)
        closed = std::max(closed, std::abs(p(a, b) - code.pc_matrix_element(code.tuple(a), code.tuple(b))));
  } else {
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int i = 0; i < 4096; ++i, ++entries) {
      const Index a = pick(rng);
      Index b = pick(rng);
      // Half the samples are forced into the nonvanishing sector.
      if (i % 2 == 0) {
        auto tb = code.tuple(b);
        tb[4] = group.add(tb[4], group.sub(code.component_sum(code.tuple(a)), code.component_sum(tb)));
        b = code.flat(tb);
      }
      closed = std::max(closed, std::abs(p(a, b) - code.pc_matrix_element(code.tuple(a), code.tuple(b))));
    }
  }
  for (Index a = 0; a < n; ++a) diag = std::max(diag, std::abs(p(a, a) - std::pow(double(d), -4)));
  r.add(Check::below("closed_form_matrix_elements", closed, 1e-12));
  r.add(Check::below("diagonal_entries_minus_d^-4", diag, 1e-12));
  r.notes["closed_form_entries_checked"] = entries;

  // U_sigma P U_sigma^dagger = P.
  double cov = 0;
  for (Index a = 0; a < n; ++a) {
    const Index sa = code.flat(code.sigma(code.tuple(a)));
    for (Index b = 0; b < n; ++b) cov = std::max(cov, std::abs(p(sa, code.flat(code.sigma(code.tuple(b)))) - p(a, b)));
  }
  r.add(Check::below("sigma_covariance", cov, 1e-12));

  // Weyl relations and the representation property, applied to random vectors.
  const auto c_elems = code.subgroup_c();
  std::uniform_int_distribution<Index> pick_flat(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_c(0, c_elems.size() - 1);
  double weyl = 0, rep = 0;
  for (int i = 0; i < 200; ++i) {
    const auto a = code.tuple(pick_flat(rng));
    const auto b = code.tuple(pick_flat(rng));
    const CVector<double> v = random_unit_vector<double>(n, rng);
    weyl = std::max(weyl, (code.apply_v(b, code.apply_u(a, v)) - code.chi(a, b) * code.apply_u(a, code.apply_v(b, v)))
                              .norm());
    weyl = std::max(weyl, (code.apply_u(a, code.apply_u(b, v)) - code.apply_u(code.add(a, b), v)).norm());
    weyl = std::max(weyl, (code.apply_v(a, code.apply_v(b, v)) - code.apply_v(code.add(a, b), v)).norm());
    const auto& x = c_elems[pick_c(rng)];
    const auto& y = c_elems[pick_c(rng)];
    rep = std::max(rep, (code.apply_w(x, code.apply_w(y, v)) - code.apply_w(code.add(x, y), v)).norm());
  }
  r.add(Check::below("weyl_relations", weyl, 1e-12));
  r.add(Check::below("w_representation_on_C", rep, 1e-10));

  double fixed = 0;
  for (const auto& x : c_elems)
    for (Index k = 0; k < range.cols(); ++k) fixed = std::max(fixed, (code.apply_w(x, range.col(k)) - range.col(k)).norm());
  r.add(Check::below("range_fixed_by_all_W", fixed, 1e-10));

  PerfectEntanglementOptions pe;
  pe.mode = mode;
  pe.seed = seed;
  const auto perfect = verify_perfect_entanglement<double>(p, d, pe);
  r.merge(perfect, "perfect_entanglement.");
  r.notes["perfect_entanglement"] = perfect.notes;
  r.merge(indecomposability_check<double>(p, d, seed), "indecomposable.");

  SeesawConfig<double> cfg;
  cfg.restarts = 20;
  cfg.seed = seed;
  const Subspace<double> code_space(code.space(), range);
  const auto outcome = seesaw_search<double>(code_space, cfg);
  r.add(Check::below("max_product_overlap", outcome.best_overlap, 1.0 - 1e-3));
  return r;
}

int cmd_stabilizer(const StabilizerOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::optional<FiniteAbelianGroup> group;
  try {
    group = FiniteAbelianGroup::parse(opt.group);
    StabilizerCode<double> probe(*group);
  } catch (const CapabilityError& e) {
    err << "stabilizer: unsupported group " << opt.group << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "stabilizer: " << e.what() << '\n';
    return kUsage;
  }
  VerificationMode mode;
  if (opt.mode == "exhaustive")
    mode = VerificationMode::Exhaustive;
  else if (opt.mode == "sampled")
    mode = VerificationMode::Sampled;
  else if (opt.mode == "auto")
    mode = group->order() == 2 ? VerificationMode::Exhaustive : VerificationMode::Sampled;
  else {
    err << "stabilizer: unknown mode '" << opt.mode << "' (expected exhaustive, sampled or auto)\n";
    return kUsage;
  }
  VerificationReport report = stabilizer_suite(*group, mode, g.seed);
  stamp(report, g, start);
  const Json j = to_json(report);
  if (!g.out.empty()) {
    try {
      write_json_file(g.out, j);
    } catch (const IoError& e) {
      err << "stabilizer: " << e.what() << '\n';
      return kIo;
    }
  }
  if (g.json || g.out.empty()) {
    emit(j, out);
  } else {
    out << summary_line(report) << '\n';
    print_checks(report, out);
  }
  return report.overall() ? kOk : kInternal;
}

int cmd_report_bundle(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const std::filesystem::path dir = g.out.empty() ? "ces_bundle" : g.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "report-bundle: cannot create " << dir.string() << ": " << ec.message() << '\n';
    return kIo;
  }
  std::vector<std::pair<std::string, VerificationReport>> reports;

  for (const std::vector<Index>& dims : std::vector<std::vector<Index>>{
           {2, 2}, {2, 3}, {3, 3}, {4, 4}, {2, 2, 2}, {2, 2, 3}, {3, 3, 3}}) {
    const MultipartiteSpace space(dims);
    const auto lambdas = default_lambdas<double>(space);
    const auto s = construct_ces<double>(space, lambdas);
    VerificationReport r = construct_report(s, lambdas);
    SeesawConfig<double> cfg;
    cfg.seed = g.seed;
    const auto outcome = seesaw_search<double>(s, cfg);
    r.add(Check::below("seesaw_best_overlap", outcome.best_overlap, 1.0 - 1e-6));
    r.notes["gap"] = 1.0 - outcome.best_overlap;
    reports.emplace_back("construct_" + dims_tag(dims), std::move(r));
  }
  for (Index n = 2; n <= 8; ++n) {
    const auto blocks = full_explicit_basis<double>(n);
    VerificationReport r = check_explicit_basis<double>(n, std::span<const BasisBlock<double>>(blocks));
    r.command = "basis";
    r.merge(cross_validate_with_vandermonde<double>(n, LambdaSet<double>::roots_of_unity(2 * n - 1)), "vandermonde.");
    reports.emplace_back("basis_n" + std::to_string(n), std::move(r));
  }
  for (const std::vector<Index>& dims : std::vector<std::vector<Index>>{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
    SeesawConfig<double> cfg;
    cfg.seed = g.seed;
    cfg.tol_decision = 1e-9;
    reports.emplace_back("max_plus_one_" + dims_tag(dims),
                         max_plus_one_sweep<double>(MultipartiteSpace(dims), 10, cfg));
  }
  reports.emplace_back("stabilizer_Z2", stabilizer_suite(FiniteAbelianGroup({2}), VerificationMode::Exhaustive, g.seed));
  reports.emplace_back("stabilizer_Z3", stabilizer_suite(FiniteAbelianGroup({3}), VerificationMode::Sampled, g.seed));

  Json bundle;
  bundle["command"] = "report-bundle";
  bundle["inputs"] = {{"seed", g.seed}};
  Json index = Json::array();
  bool all = true;
  try {
    for (auto& [name, r] : reports) {
      r.inputs["seed"] = g.seed;
      write_json_file(dir / (name + ".json"), to_json(r));
      index.push_back({{"name", name}, {"file", name + ".json"}, {"overall", r.overall()}});
      all = all && r.overall();
      if (!g.json) out << name << ": " << (r.overall() ? "PASS" : "FAIL") << '\n';
    }
    bundle["reports"] = index;
    bundle["overall"] = all;
    bundle["wall_time_ms"] = g.no_timing ? 0 : elapsed_ms(start);
    write_json_file(dir / "bundle.json", bundle);
  } catch (const IoError& e) {
    err << "report-bundle: " << e.what() << '\n';
    return kIo;
  }
  if (g.json) emit(bundle, out);
  return all ? kOk : kInternal;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Completely and perfectly entangled subspaces: construction and numerical verification", "ces"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every randomized step (default 0)");
  app.add_option("--out", g.out, "Output file (or directory for report-bundle)");
  app.add_flag("--json", g.json, "Print machine-readable JSON on stdout");
  app.add_flag("--no-timing", g.no_timing, "Record wall_time_ms as 0 for byte-reproducible reports");

  ConstructOptions construct;
  auto* c = app.add_subcommand("construct", "Maximal completely entangled subspace by the power-sequence construction");
  c->add_option("--dims", construct.dims, "Comma-separated local dimensions, e.g. 3,3")->required();
  c->add_option("--lambda-mode", construct.lambda_mode, "roots | shifted | random");

  BasisOptions basis;
  auto* b = app.add_subcommand("basis", "Explicit orthonormal basis for C^n (x) C^n");
  b->add_option("--n", basis.n, "Local dimension n >= 2")->required();

  SearchOptions search;
  auto* s = app.add_subcommand("search", "Seesaw search for a product vector in a subspace file");
  s->add_option("--in,input", search.input, "Subspace JSON file")->required();
  s->add_option("--restarts", search.restarts, "Number of random restarts");
  s->add_option("--max-iters", search.max_iters, "Sweeps per restart");
  s->add_option("--tol", search.tol, "Decision tolerance: product found iff overlap > 1 - tol");

  StabilizerOptions stab;
  auto* st = app.add_subcommand("stabilizer", "Build and verify the five-qudit stabilizer projector");
  st->add_option("--group", stab.group, "Z2 | Z3 | Z4 | Z2xZ2");
  st->add_option("--mode", stab.mode, "exhaustive | sampled | auto");

  RandomSubspaceOptions rnd;
  auto* rs = app.add_subcommand("random-subspace", "Write a Haar-random subspace (default dimension max + 1)");
  rs->add_option("--dims", rnd.dims, "Comma-separated local dimensions")->required();
  rs->add_option("--dim", rnd.dim, "Subspace dimension");

  auto* bundle = app.add_subcommand("report-bundle", "Run the standard verification set and write every report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_construct(construct, g, out, err);
    if (b->parsed()) return cmd_explicit_basis(basis, g, out, err);
    if (s->parsed()) return cmd_search(search, g, out, err);
    if (st->parsed()) return cmd_stabilizer(stab, g, out, err);
    if (rs->parsed()) return cmd_random_subspace(rnd, g, out, err);
    if (bundle->parsed()) return cmd_report_bundle(g, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace ces::cli
