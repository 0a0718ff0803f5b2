// Completely entangled subspaces of maximal dimension from power-sequence
// product vectors, plus the separable-range criterion.
#pragma once

#include "ces/report.hpp"
#include "ces/tensor_core.hpp"

#include <numbers>

namespace ces {

/// prod d_i - sum d_i + k - 1: the largest dimension of a subspace with no
/// nonzero product vector.
inline Index max_ces_dim(std::span<const Index> dims) {
  if (dims.size() < 2) throw DimensionError("need at least two subsystems (k >= 2)");
  Index prod = 1, sum = 0;
  for (Index d : dims) {
    if (d < 1) throw DimensionError("local dimensions must be >= 1");
    prod *= d;
    sum += d;
  }
  return prod - sum + static_cast<Index>(dims.size()) - 1;
}

/// Number of power-sequence product vectors needed: sum d_i - k + 1.
inline Index constraint_count(std::span<const Index> dims) {
  if (dims.size() < 2) throw DimensionError("need at least two subsystems (k >= 2)");
  Index sum = 0;
  for (Index d : dims) sum += d;
  return sum - static_cast<Index>(dims.size()) + 1;
}

/// N pairwise-distinct complex nodes.
template <typename Real = double>
class LambdaSet {
 public:
  static constexpr Real min_separation = Real(1e-12);

  explicit LambdaSet(std::vector<Complex<Real>> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("lambda set is empty");
    for (std::size_t i = 0; i < values_.size(); ++i)
      for (std::size_t j = i + 1; j < values_.size(); ++j)
        if (std::abs(values_[i] - values_[j]) <= min_separation)
          throw std::invalid_argument("lambda values " + std::to_string(i) + " and " + std::to_string(j) +
                                      " coincide");
  }

  /// exp(2 pi i (m + offset) / N), m = 0..N-1.
  static LambdaSet roots_of_unity(Index n, Real offset = Real(0)) {
    std::vector<Complex<Real>> v;
    for (Index m = 0; m < n; ++m)
      v.push_back(std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * (Real(m) + offset) / Real(n)));
    return LambdaSet(std::move(v));
  }

  /// Seeded uniform points on the unit circle.
  static LambdaSet random_unit_circle(Index n, std::uint64_t seed) {
    auto rng = seeded_engine(seed, 0x1a3bda);
    std::uniform_real_distribution<Real> phase(Real(0), Real(2) * std::numbers::pi_v<Real>);
    std::vector<Complex<Real>> v;
    for (Index m = 0; m < n; ++m) v.push_back(std::polar(Real(1), phase(rng)));
    return LambdaSet(std::move(v));
  }

  Index size() const noexcept { return static_cast<Index>(values_.size()); }
  const std::vector<Complex<Real>>& values() const noexcept { return values_; }
  Complex<Real> operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Complex<Real>> values_;
};

/// Nonzero local factors u_1, ..., u_k.
template <typename Real = double>
struct ProductVector {
  std::vector<CVector<Real>> factors;

  CVector<Real> embed() const { return tensor_product<Real>(std::span<const CVector<Real>>(factors)); }
  CVector<Real> embed(const MultipartiteSpace& space) const {
    return tensor_product<Real>(space, std::span<const CVector<Real>>(factors));
  }
  /// Copy with every factor scaled to unit norm.
  ProductVector normalized() const {
    ProductVector out = *this;
    for (auto& f : out.factors) f.normalize();
    return out;
  }
};

/// (1, lambda, lambda^2, ..., lambda^{d-1}), with lambda^0 = 1.
template <typename Real>
CVector<Real> vandermonde_vector(Complex<Real> lambda, Index d) {
  if (d < 1) throw DimensionError("vandermonde_vector needs d >= 1");
  CVector<Real> v(d);
  Complex<Real> p(1);
  for (Index x = 0; x < d; ++x) {
    v(x) = p;
    p *= lambda;
  }
  return v;
}

/// One power-sequence product vector per lambda.
template <typename Real>
std::vector<ProductVector<Real>> constraint_product_vectors(const MultipartiteSpace& space,
                                                           const LambdaSet<Real>& lambdas) {
  const Index n = constraint_count(space.dims());
  if (lambdas.size() != n)
    throw std::invalid_argument("lambda set has " + std::to_string(lambdas.size()) + " values, dims " +
                                describe(space) + " need " + std::to_string(n));
  std::vector<ProductVector<Real>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    ProductVector<Real> pv;
    for (Index d : space.dims()) pv.factors.push_back(vandermonde_vector<Real>(lambdas[i], d));
    out.push_back(std::move(pv));
  }
  CMatrix<Real> stacked(space.total_dim(), n);
  for (Index i = 0; i < n; ++i) stacked.col(i) = out[i].embed().normalized();
  const Index r = numerical_rank<Real>(stacked);
  if (r != n)
    throw std::invalid_argument("constraint vectors are degenerate: rank " + std::to_string(r) + " < " +
                                std::to_string(n));
  return out;
}

/// Embedded constraint vectors, each normalized, as matrix columns.
template <typename Real>
CMatrix<Real> constraint_matrix(const MultipartiteSpace& space, const LambdaSet<Real>& lambdas) {
  const auto pvs = constraint_product_vectors<Real>(space, lambdas);
  CMatrix<Real> m(space.total_dim(), static_cast<Index>(pvs.size()));
  for (std::size_t i = 0; i < pvs.size(); ++i) m.col(static_cast<Index>(i)) = pvs[i].embed().normalized();
  return m;
}

template <typename Real = double>
LambdaSet<Real> default_lambdas(const MultipartiteSpace& space) {
  return LambdaSet<Real>::roots_of_unity(constraint_count(space.dims()));
}

/// Orthogonal complement of the power-sequence product vectors; its
/// dimension is exactly max_ces_dim(dims).
template <typename Real = double>
Subspace<Real> construct_ces(const MultipartiteSpace& space, std::optional<LambdaSet<Real>> lambdas = std::nullopt) {
  const Index expected = max_ces_dim(space.dims());
  if (expected < 1)
    throw DimensionError("dims " + describe(space) + " admit no nonzero completely entangled subspace");
  const LambdaSet<Real> nodes = lambdas ? *lambdas : default_lambdas<Real>(space);
  const CMatrix<Real> constraints = constraint_matrix<Real>(space, nodes);
  auto s = orthogonal_complement<Real>(space, constraints);
  if (!s) throw std::logic_error("complement of the constraint vectors is empty");
  if (s->dim() != expected || constraints.cols() + s->dim() != space.total_dim())
    throw std::logic_error("constructed subspace has dimension " + std::to_string(s->dim()) + ", expected " +
                           std::to_string(expected));
  return *std::move(s);
}

/// <constraint_i | basis_l> for every pair; max residual gated at tol.
template <typename Real>
VerificationReport verify_no_product_constraints(const Subspace<Real>& s, const LambdaSet<Real>& lambdas,
                                                 Real tol = Tolerances<Real>::orth) {
  VerificationReport r;
  r.command = "verify_no_product_constraints";
  r.inputs["dims"] = s.space().dims();
  r.inputs["lambda_count"] = lambdas.size();
  const CMatrix<Real> c = constraint_matrix<Real>(s.space(), lambdas);
  const CMatrix<Real> overlaps = c.adjoint() * s.basis();
  r.add(Check::below("max_constraint_overlap", static_cast<double>(overlaps.cwiseAbs().maxCoeff()),
                     static_cast<double>(tol)));
  r.add(Check::equal("pairs_checked", static_cast<double>(overlaps.size()),
                     static_cast<double>(c.cols() * s.dim())));
  return r;
}

template <typename Real = double>
struct WeightedProduct {
  Real weight;
  ProductVector<Real> vector;
};

/// Builds rho = sum q_i |u_i><u_i| (unit u_i) and checks every u_i lies in
/// range(rho) via ||(I - P_range) u_i||.
template <typename Real>
VerificationReport separable_range_check(const MultipartiteSpace& space,
                                         std::span<const WeightedProduct<Real>> mixture,
                                         Real tol = Real(1e-9)) {
  if (mixture.empty()) throw std::invalid_argument("mixture is empty");
  Real total = 0;
  for (const auto& term : mixture) {
    if (!(term.weight > Real(0))) throw std::invalid_argument("mixture weights must be positive");
    total += term.weight;
  }
  if (std::abs(total - Real(1)) > Tolerances<Real>::trace) throw std::invalid_argument("mixture weights must sum to 1");

  std::vector<CVector<Real>> units;
  CMatrix<Real> rho = CMatrix<Real>::Zero(space.total_dim(), space.total_dim());
  for (const auto& term : mixture) {
    CVector<Real> u = term.vector.embed(space);
    if (u.norm() == Real(0)) throw std::invalid_argument("product vector has a zero factor");
    u.normalize();
    rho += term.weight * u * u.adjoint();
    units.push_back(std::move(u));
  }
  const DensityOperator<Real> state(rho);

  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(rho);
  const Real top = es.eigenvalues().maxCoeff();
  CMatrix<Real> range_proj = CMatrix<Real>::Zero(space.total_dim(), space.total_dim());
  Index rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > Tolerances<Real>::rank * top) {
      range_proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++rank;
    }
  }

  Real worst = 0;
  for (const auto& u : units) worst = std::max(worst, (u - range_proj * u).norm());

  VerificationReport r;
  r.command = "separable_range_check";
  r.inputs["dims"] = space.dims();
  r.inputs["terms"] = mixture.size();
  r.add(Check::below("max_out_of_range_residual", static_cast<double>(worst), static_cast<double>(tol)));
  r.notes["rank_rho"] = rank;
  r.notes["trace_rho"] = static_cast<double>(state.matrix().trace().real());
  return r;
}

/// P_S / dim S: a state supported exactly on S.
template <typename Real>
DensityOperator<Real> mixed_state_on(const Subspace<Real>& s) {
  return DensityOperator<Real>(projector<Real>(s) / static_cast<Real>(s.dim()));
}

}  // namespace ces
