// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is nonzero if any criterion fails.
#include "ces/commands.hpp"
#include "ces/explicit_basis.hpp"
#include "ces/product_search.hpp"
#include "ces/stabilizer.hpp"
#include "ces/vandermonde.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ces;
using V = CVector<double>;
using M = CMatrix<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

bool run_criterion(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = secs < budget_s;
  const bool pass = o.pass && in_budget;
  std::printf("[%s] %d %s: %.2f s (budget %.0f s%s);%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs, budget_s,
              in_budget ? "" : ", EXCEEDED", o.detail.str().c_str());
  std::fflush(stdout);
  return pass;
}

const std::vector<std::vector<Index>> kCesDims{{2, 2}, {2, 3}, {3, 3}, {4, 4}, {2, 2, 2}, {2, 2, 3}, {3, 3, 3}};

std::string tag(const std::vector<Index>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

void dimension_formula(Outcome& o) {
  // prod(d) - sum(d) + k - 1, computed by hand. For (2,2,3) this is 7.
  const std::vector<Index> expected{1, 2, 4, 9, 4, 7, 20};
  for (std::size_t i = 0; i < kCesDims.size(); ++i) {
    const auto s = construct_ces<double>(MultipartiteSpace(kCesDims[i]));
    o.detail << ' ' << tag(kCesDims[i]) << "->" << s.dim();
    o.require(s.dim() == expected[i] && max_ces_dim(kCesDims[i]) == expected[i], tag(kCesDims[i]));
  }
}

void no_product_vectors(Outcome& o) {
  for (const auto& dims : kCesDims) {
    const auto s = construct_ces<double>(MultipartiteSpace(dims));
    SeesawConfig<double> cfg;  // 200 restarts
    const auto out = seesaw_search<double>(s, cfg);
    o.detail << ' ' << tag(dims) << " gap=" << 1 - out.best_overlap;
    o.require(out.best_overlap < 1 - 1e-6, tag(dims));
  }
}

void converse_at_max_plus_one(Outcome& o) {
  const std::vector<std::pair<std::vector<Index>, int>> cases{{{2, 2}, 50}, {{2, 3}, 50}, {{3, 3}, 50}, {{2, 2, 2}, 25}};
  for (const auto& [dims, trials] : cases) {
    SeesawConfig<double> cfg;
    cfg.restarts = 20;
    cfg.tol_decision = 1e-9;
    cfg.seed = 2024;
    const auto r = max_plus_one_sweep<double>(MultipartiteSpace(dims), trials, cfg);
    o.detail << ' ' << tag(dims) << ' ' << r.find("trials_with_product_found")->value << '/' << trials
             << " worst_gap=" << 1 - r.find("min_best_overlap")->value;
    o.require(r.overall(), tag(dims));
  }
}

void explicit_basis(Outcome& o) {
  double worst_gram = 0, worst_sum = 0, worst_proj = 0;
  for (Index n = 2; n <= 8; ++n) {
    const auto blocks = full_explicit_basis<double>(n);
    const auto r = check_explicit_basis<double>(n, std::span<const BasisBlock<double>>(blocks));
    o.require(r.overall(), "structure n=" + std::to_string(n));
    worst_gram = std::max(worst_gram, r.find("gram_deviation")->value);
    worst_sum = std::max(worst_sum, r.find("antidiagonal_sum_residual_K")->value);
    const Index count = 2 * n - 1;
    for (const auto& l : {LambdaSet<double>::roots_of_unity(count), LambdaSet<double>::roots_of_unity(count, 0.5),
                          LambdaSet<double>::random_unit_circle(count, 100 + static_cast<std::uint64_t>(n))}) {
      const auto x = cross_validate_with_vandermonde<double>(n, l);
      o.require(x.overall(), "vandermonde n=" + std::to_string(n));
      worst_proj = std::max(worst_proj, x.find("projector_frobenius_distance")->value);
    }
  }
  o.detail << " gram=" << worst_gram << " antidiag_sum=" << worst_sum << " projector_dist=" << worst_proj;
}

void exact_oracle(Outcome& o) {
  const MultipartiteSpace q2({2, 2});
  auto rng = seeded_engine(555);
  SeesawConfig<double> cfg;
  cfg.restarts = 10;
  cfg.tol_decision = 1e-9;
  int agree = 0, products = 0;
  for (int i = 0; i < 1000; ++i) {
    // Every other line is spanned by a random product vector.
    const V v = i % 2 == 0 ? ProductVector<double>{{random_unit_vector<double>(2, rng), random_unit_vector<double>(2, rng)}}.embed()
                           : random_unit_vector<double>(4, rng);
    const Subspace<double> s(q2, v.normalized());
    const bool exact = exact_oracle_2x2<double>(s).has_product;
    cfg.seed = static_cast<std::uint64_t>(i);
    const bool numeric = seesaw_search<double>(s, cfg).verdict == Verdict::ProductFound;
    agree += exact == numeric;
    products += exact;
  }
  o.detail << " agree=" << agree << "/1000 (products " << products << ")";
  o.require(agree == 1000, "agreement");
  int higher = 0;
  for (Index m = 2; m <= 4; ++m)
    for (int t = 0; t < 100; ++t) higher += exact_oracle_2x2<double>(haar_random_subspace<double>(q2, m, rng)).has_product;
  o.detail << " dim>=2 with product " << higher << "/300";
  o.require(higher == 300, "dim>=2");
}

void stabilizer_projector(Outcome& o) {
  auto rng = seeded_engine(66);
  for (const auto& name : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
    const StabilizerCode<double> code(FiniteAbelianGroup::parse(name));
    const int d = code.d();
    const Index n = code.dim();
    const M p = code.projector_pc();
    const double idem = (p * p - p).norm();
    const double herm = (p - p.adjoint()).norm();
    const double tr = std::abs(p.trace() - std::complex<double>(d));
    Eigen::SelfAdjointEigenSolver<M> es(p, Eigen::EigenvaluesOnly);
    const auto rank = (es.eigenvalues().array() > 1e-9).count();
    double closed = 0;
    Index entries = 0;
    if (d == 2) {
      closed = (p - code.pc_closed_form()).cwiseAbs().maxCoeff();
      entries = n * n;
    } else {
      std::uniform_int_distribution<Index> pick(0, n - 1);
      for (int i = 0; i < 2000; ++i, ++entries) {
        const auto a = code.tuple(pick(rng));
        auto b = code.tuple(pick(rng));
        if (i % 2 == 0) b[0] = code.group().add(b[0], code.group().sub(code.component_sum(a), code.component_sum(b)));
        closed = std::max(closed, std::abs(p(code.flat(a), code.flat(b)) - code.pc_matrix_element(a, b)));
      }
    }
    o.detail << ' ' << name << ": idem=" << idem << " rank=" << rank << " closed_form=" << closed << " (" << entries
             << " entries)";
    o.require(idem < 1e-10 && herm < 1e-10 && tr < 1e-10 && rank == d && closed < 1e-12, name);
  }
}

void perfect_entanglement(Outcome& o) {
  const StabilizerCode<double> z2(FiniteAbelianGroup({2}));
  const auto r2 = verify_perfect_entanglement<double>(z2.projector_pc(), 2, {});
  o.detail << " d=2 pairs=" << r2.inputs["operator_pairs"].get<long>()
           << " max_residual=" << r2.find("max_operator_residual")->value;
  o.require(r2.overall() && r2.inputs["operator_pairs"] == 1024, "d=2");

  const StabilizerCode<double> z3(FiniteAbelianGroup({3}));
  PerfectEntanglementOptions opt;
  opt.mode = VerificationMode::Sampled;
  opt.seed = 3;
  opt.sampled_vectors = 100;
  const auto r3 = verify_perfect_entanglement<double>(z3.projector_pc(), 3, opt);
  o.detail << " d=3 marginal=" << r3.find("max_marginal_deviation")->value
           << " entropy=" << r3.find("max_entropy_deficit")->value;
  o.require(r3.overall(), "d=3");
}

void weyl_algebra(Outcome& o) {
  const StabilizerCode<double> code(FiniteAbelianGroup({2}));
  std::vector<M> u, v;
  for (Index f = 0; f < code.dim(); ++f) {
    u.push_back(code.weyl_u(code.tuple(f)));
    v.push_back(code.weyl_v(code.tuple(f)));
  }
  double comm = 0;
  for (Index a = 0; a < code.dim(); ++a)
    for (Index b = 0; b < code.dim(); ++b)
      comm = std::max(comm, (v[b] * u[a] - code.chi(code.tuple(a), code.tuple(b)) * u[a] * v[b]).norm());
  const auto c = code.subgroup_c();
  std::vector<M> w;
  for (const auto& x : c) w.push_back(code.w_op(x));
  double rep = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) rep = std::max(rep, (w[i] * w[j] - code.w_op(code.add(c[i], c[j]))).norm());
  o.detail << " commutation=" << comm << " (1024 pairs) representation=" << rep << " (" << c.size() * c.size()
           << " pairs)";
  o.require(comm < 1e-12, "commutation");
  o.require(rep < 1e-10, "representation");
}

void separable_range(Outcome& o) {
  auto rng = seeded_engine(909);
  std::uniform_int_distribution<int> terms(1, 6);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  double worst = 0;
  for (const auto& dims : {std::vector<Index>{2, 2}, std::vector<Index>{2, 3}}) {
    const MultipartiteSpace space(dims);
    for (int t = 0; t < 100; ++t) {
      std::vector<WeightedProduct<double>> mix;
      double total = 0;
      for (int k = terms(rng); k > 0; --k) {
        ProductVector<double> pv{{random_unit_vector<double>(dims[0], rng), random_unit_vector<double>(dims[1], rng)}};
        const double q = weight(rng);
        total += q;
        mix.push_back({q, pv});
      }
      for (auto& m : mix) m.weight /= total;
      const auto r = separable_range_check<double>(space, mix);
      worst = std::max(worst, r.find("max_out_of_range_residual")->value);
      o.require(r.overall(), tag(dims) + " trial " + std::to_string(t));
    }
  }
  o.detail << " max_residual=" << worst << " (200 mixtures)";
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run_criterion(1, "dimension formula", 1, dimension_formula);
  failed += !run_criterion(2, "no product vector in constructed subspaces", 60, no_product_vectors);
  failed += !run_criterion(3, "product vector at max+1", 120, converse_at_max_plus_one);
  failed += !run_criterion(4, "explicit basis n=2..8", 10, explicit_basis);
  failed += !run_criterion(5, "exact 2x2 oracle", 10, exact_oracle);
  failed += !run_criterion(6, "stabilizer projector", 60, stabilizer_projector);
  failed += !run_criterion(7, "perfect entanglement", 300, perfect_entanglement);
  failed += !run_criterion(8, "Weyl algebra", 30, weyl_algebra);
  failed += !run_criterion(9, "separable range", 10, separable_range);
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
