// Numerical search for product vectors inside a subspace.
//
// Seesaw: maximize F(u_1..u_k) = ||P_S (u_1 (x) ... (x) u_k)||^2 over unit
// factors, replacing one factor at a time by the top eigenvector of the
// quadratic form obtained by fixing the others. F is nondecreasing across
// updates. A value of 1 means the product vector lies in S; values bounded
// away from 1 over many restarts are heuristic evidence (not a proof) that
// S is completely entangled.
#pragma once

#include "ces/report.hpp"
#include "ces/tensor_core.hpp"
#include "ces/vandermonde.hpp"

namespace ces {

template <typename Real = double>
struct SeesawConfig {
  int restarts = 200;
  int max_iters = 5000;
  /// A restart stops once one full sweep improves F by less than this.
  Real tol_converge = Real(1e-15);
  /// product_found iff best_overlap > 1 - tol_decision.
  Real tol_decision = Real(1e-6);
  std::uint64_t seed = 0;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(tol_converge > 0) || !(tol_decision > 0)) throw std::invalid_argument("tolerances must be positive");
  }
};

enum class Verdict { ProductFound, NoneFound };

inline const char* to_string(Verdict v) { return v == Verdict::ProductFound ? "product_found" : "none_found"; }

template <typename Real = double>
struct SearchOutcome {
  Real best_overlap = 0;
  ProductVector<Real> witness;
  std::vector<Real> per_restart_values;
  std::vector<int> per_restart_iterations;
  int unconverged_restarts = 0;
  /// Number of sweeps in which F decreased by more than 1e-12.
  int monotonicity_violations = 0;
  Verdict verdict = Verdict::NoneFound;
};

namespace detail {

/// Precomputed per-factor coordinates of every flat index.
class CoordinateTable {
 public:
  explicit CoordinateTable(const MultipartiteSpace& space) : parties_(space.parties()) {
    coords_.resize(static_cast<std::size_t>(space.total_dim() * parties_));
    for (Index flat = 0; flat < space.total_dim(); ++flat) {
      const auto multi = space.multi_index(flat);
      for (Index i = 0; i < parties_; ++i) coords_[static_cast<std::size_t>(flat * parties_ + i)] = multi[i];
    }
  }
  Index operator()(Index flat, Index party) const { return coords_[static_cast<std::size_t>(flat * parties_ + party)]; }

 private:
  Index parties_;
  std::vector<Index> coords_;
};

template <typename Real>
Real overlap(const CMatrix<Real>& basis, const CVector<Real>& v) {
  return (basis.adjoint() * v).squaredNorm();
}

/// G(x_i, l) = sum over the other coordinates of conj(Q(x, l)) prod_{j != i} u_j(x_j),
/// so that F as a function of u_i is ||G^T u_i||^2.
template <typename Real>
CMatrix<Real> contract_all_but(const CMatrix<Real>& basis, const MultipartiteSpace& space,
                               const CoordinateTable& coords, const std::vector<CVector<Real>>& factors,
                               Index party) {
  CMatrix<Real> g = CMatrix<Real>::Zero(space.dim(party), basis.cols());
  for (Index flat = 0; flat < space.total_dim(); ++flat) {
    Complex<Real> w(1);
    for (Index j = 0; j < space.parties(); ++j)
      if (j != party) w *= factors[static_cast<std::size_t>(j)](coords(flat, j));
    if (w == Complex<Real>(0)) continue;
    g.row(coords(flat, party)) += w * basis.row(flat).conjugate();
  }
  return g;
}

}  // namespace detail

/// Alternating maximization of the squared projection of a product vector
/// onto s. Restart r draws its initial factors from seeded_engine(seed, r).
template <typename Real>
SearchOutcome<Real> seesaw_search(const Subspace<Real>& s, const SeesawConfig<Real>& cfg) {
  cfg.validate();
  const MultipartiteSpace& space = s.space();
  if (space.parties() < 2) throw DimensionError("seesaw search needs k >= 2 subsystems");
  const detail::CoordinateTable coords(space);
  const CMatrix<Real>& basis = s.basis();

  SearchOutcome<Real> out;
  out.best_overlap = Real(-1);
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = seeded_engine(cfg.seed, static_cast<std::uint64_t>(restart));
    std::vector<CVector<Real>> factors;
    for (Index d : space.dims()) factors.push_back(random_unit_vector<Real>(d, rng));

    Real value = detail::overlap<Real>(basis, tensor_product<Real>(std::span<const CVector<Real>>(factors)));
    bool converged = false;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
      const Real before = value;
      for (Index party = 0; party < space.parties(); ++party) {
        const CMatrix<Real> g = detail::contract_all_but<Real>(basis, space, coords, factors, party);
        const CMatrix<Real> m = g.conjugate() * g.transpose();
        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(m);
        factors[static_cast<std::size_t>(party)] = es.eigenvectors().col(m.rows() - 1);
        value = std::min(Real(1), std::max(Real(0), es.eigenvalues()(m.rows() - 1)));
      }
      if (value < before - Real(1e-12)) ++out.monotonicity_violations;
      if (value - before < cfg.tol_converge || value >= Real(1) - Real(1e-15)) {
        converged = true;
        ++iter;
        break;
      }
    }
    if (!converged) ++out.unconverged_restarts;

    // Recompute from the witness rather than trusting the eigenvalue.
    value = detail::overlap<Real>(basis, tensor_product<Real>(std::span<const CVector<Real>>(factors)));
    out.per_restart_values.push_back(value);
    out.per_restart_iterations.push_back(iter);
    if (value > out.best_overlap) {
      out.best_overlap = value;
      out.witness.factors = factors;
    }
  }
  out.verdict = out.best_overlap > Real(1) - cfg.tol_decision ? Verdict::ProductFound : Verdict::NoneFound;
  return out;
}

template <typename Real = double>
struct OracleResult {
  bool has_product = false;
  /// det of the single basis matrix (dim 1 only).
  Complex<Real> determinant{};
  std::optional<ProductVector<Real>> witness;
};

/// Exact decision for C^2 (x) C^2: a 2x2 matrix is a product vector iff its
/// determinant vanishes, and det(c1 M1 + c2 M2) is a binary quadratic form,
/// which always has a nontrivial complex root.
template <typename Real>
OracleResult<Real> exact_oracle_2x2(const Subspace<Real>& s, Real det_tol = Real(1e-12)) {
  if (s.space().dims() != std::vector<Index>{2, 2}) throw DimensionError("exact oracle requires dims (2,2)");
  const auto as_matrix = [](const auto& col) {
    Eigen::Matrix<Complex<Real>, 2, 2> m;
    m << col(0), col(1), col(2), col(3);
    return m;
  };
  const auto witness_from = [](const Eigen::Matrix<Complex<Real>, 2, 2>& m) {
    Eigen::JacobiSVD<Eigen::Matrix<Complex<Real>, 2, 2>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ProductVector<Real> pv;
    pv.factors.push_back(svd.matrixU().col(0));
    pv.factors.push_back(svd.matrixV().col(0).conjugate());
    return pv;
  };

  OracleResult<Real> res;
  const auto m1 = as_matrix(s.vector(0));
  if (s.dim() == 1) {
    res.determinant = m1.determinant();
    res.has_product = std::abs(res.determinant) < det_tol;
    if (res.has_product) res.witness = witness_from(m1);
    return res;
  }
  const auto m2 = as_matrix(s.vector(1));
  const Complex<Real> a = m1.determinant();
  const Complex<Real> c = m2.determinant();
  const Complex<Real> b = (m1 + m2).determinant() - a - c;
  // Root (t, 1) of a t^2 + b t + c, or (1, 0) if a vanishes.
  Eigen::Matrix<Complex<Real>, 2, 2> root;
  if (std::abs(a) < det_tol) {
    root = m1;
  } else {
    const Complex<Real> disc = std::sqrt(b * b - Real(4) * a * c);
    const Complex<Real> q = -(b + (std::real(std::conj(b) * disc) >= 0 ? disc : -disc)) / Real(2);
    const Complex<Real> t = std::abs(q) > Real(0) ? q / a : Complex<Real>(0);
    root = t * m1 + m2;
  }
  res.has_product = true;
  res.witness = witness_from(root);
  return res;
}

/// Haar-random subspaces of dimension max_ces_dim + 1 always contain a
/// product vector; checks that seesaw finds one in every trial.
template <typename Real>
VerificationReport max_plus_one_sweep(const MultipartiteSpace& space, int trials, const SeesawConfig<Real>& cfg) {
  if (space.total_dim() > 256) throw DimensionError("sweep limited to total dimension <= 256");
  const Index m = max_ces_dim(space.dims()) + 1;
  VerificationReport r;
  r.command = "max_plus_one_sweep";
  r.inputs["dims"] = space.dims();
  r.inputs["trials"] = trials;
  r.inputs["subspace_dim"] = m;
  r.inputs["seed"] = cfg.seed;
  r.inputs["restarts"] = cfg.restarts;
  int found = 0;
  Real worst = 1;
  Json failed = Json::array();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(t);
    auto rng = seeded_engine(trial_seed, 0x5eed);
    const auto s = haar_random_subspace<Real>(space, m, rng);
    SeesawConfig<Real> c = cfg;
    c.seed = trial_seed;
    const auto outcome = seesaw_search<Real>(s, c);
    worst = std::min(worst, outcome.best_overlap);
    if (outcome.verdict == Verdict::ProductFound)
      ++found;
    else
      failed.push_back({{"trial", t}, {"seed", trial_seed}, {"best_overlap", static_cast<double>(outcome.best_overlap)}});
  }
  r.add(Check::equal("trials_with_product_found", found, trials));
  r.add(Check::above("min_best_overlap", static_cast<double>(worst), static_cast<double>(Real(1) - cfg.tol_decision)));
  r.notes["failures"] = failed;
  return r;
}

}  // namespace ces
