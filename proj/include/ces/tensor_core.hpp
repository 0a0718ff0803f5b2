// Dense complex linear algebra on multipartite tensor-product spaces.
//
// Flat index convention: subsystem 0 is the most significant (slowest
// varying) factor, so for dims (d0, d1) the basis vector |x0 x1> sits at
// flat index x0 * d1 + x1.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ces {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Numerical thresholds shared by every module.
template <typename Real = double>
struct Tolerances {
  static constexpr Real orth = Real(1e-9);
  static constexpr Real proj = Real(1e-9);
  /// Relative to the largest singular value.
  static constexpr Real rank = Real(1e-9);
  static constexpr Real psd = Real(1e-10);
  static constexpr Real trace = Real(1e-10);
  static constexpr Real herm = Real(1e-9);
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of local dimensions (d_1, ..., d_k).
class MultipartiteSpace {
 public:
  MultipartiteSpace() = default;
  explicit MultipartiteSpace(std::vector<Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("space needs at least one subsystem");
    total_ = 1;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] < 1) {
        throw DimensionError("subsystem " + std::to_string(i) + " has dimension " +
                             std::to_string(dims_[i]) + " (< 1)");
      }
      total_ *= dims_[i];
    }
  }

  const std::vector<Index>& dims() const noexcept { return dims_; }
  Index parties() const noexcept { return static_cast<Index>(dims_.size()); }
  Index dim(Index i) const { return dims_.at(static_cast<std::size_t>(i)); }
  Index total_dim() const noexcept { return total_; }

  /// Product of the local dimensions over a set of subsystems.
  Index dim_of(std::span<const Index> subsystems) const {
    Index d = 1;
    for (Index i : subsystems) d *= dim(i);
    return d;
  }

  std::vector<Index> multi_index(Index flat) const {
    if (flat < 0 || flat >= total_) throw std::out_of_range("flat index out of range");
    std::vector<Index> out(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
      out[i] = flat % dims_[i];
      flat /= dims_[i];
    }
    return out;
  }

  Index flat_index(std::span<const Index> multi) const {
    if (multi.size() != dims_.size()) throw DimensionError("multi-index has wrong arity");
    Index flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (multi[i] < 0 || multi[i] >= dims_[i]) throw std::out_of_range("multi-index out of range");
      flat = flat * dims_[i] + multi[i];
    }
    return flat;
  }

  /// Sorted complement of `keep` in {0, ..., k-1}.
  std::vector<Index> complement(std::span<const Index> keep) const {
    std::vector<Index> out;
    for (Index i = 0; i < parties(); ++i) {
      if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const MultipartiteSpace&, const MultipartiteSpace&) = default;

 private:
  std::vector<Index> dims_;
  Index total_ = 0;
};

inline std::string describe(const MultipartiteSpace& space) {
  std::ostringstream os;
  for (std::size_t i = 0; i < space.dims().size(); ++i) os << (i ? "x" : "") << space.dims()[i];
  return os.str();
}

namespace detail {

inline void check_subset(const MultipartiteSpace& space, std::span<const Index> keep) {
  if (keep.empty()) throw DimensionError("subsystem set must be nonempty");
  if (static_cast<Index>(keep.size()) >= space.parties())
    throw DimensionError("subsystem set must be a proper subset");
  std::vector<Index> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DimensionError("subsystem set has duplicates");
  if (sorted.front() < 0 || sorted.back() >= space.parties())
    throw DimensionError("subsystem index out of range");
}

/// For every flat index, its position in H(E) and in H(E') (both with the
/// inherited significance order).
struct SplitTable {
  std::vector<Index> kept;
  std::vector<Index> traced;
  Index kept_dim = 1;
  Index traced_dim = 1;
};

inline SplitTable split_table(const MultipartiteSpace& space, std::span<const Index> keep) {
  SplitTable t;
  std::vector<bool> in_keep(static_cast<std::size_t>(space.parties()), false);
  for (Index i : keep) in_keep[static_cast<std::size_t>(i)] = true;
  t.kept.resize(static_cast<std::size_t>(space.total_dim()));
  t.traced.resize(static_cast<std::size_t>(space.total_dim()));
  for (Index i = 0; i < space.parties(); ++i) (in_keep[i] ? t.kept_dim : t.traced_dim) *= space.dim(i);
  std::vector<Index> multi(static_cast<std::size_t>(space.parties()), 0);
  for (Index flat = 0; flat < space.total_dim(); ++flat) {
    Index e = 0, c = 0;
    for (Index i = 0; i < space.parties(); ++i) {
      if (in_keep[i])
        e = e * space.dim(i) + multi[i];
      else
        c = c * space.dim(i) + multi[i];
    }
    t.kept[flat] = e;
    t.traced[flat] = c;
    for (Index i = space.parties(); i-- > 0;) {
      if (++multi[i] < space.dim(i)) break;
      multi[i] = 0;
    }
  }
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tensor products

/// u_1 (x) ... (x) u_k with factor 0 most significant.
template <typename Real>
CVector<Real> tensor_product(std::span<const CVector<Real>> factors) {
  if (factors.empty()) throw DimensionError("tensor product of zero factors");
  CVector<Real> out = CVector<Real>::Ones(1);
  for (const auto& f : factors) {
    CVector<Real> next(out.size() * f.size());
    for (Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
    out = std::move(next);
  }
  return out;
}

/// Checked variant: factor i must have length space.dim(i).
template <typename Real>
CVector<Real> tensor_product(const MultipartiteSpace& space, std::span<const CVector<Real>> factors) {
  std::ostringstream err;
  if (static_cast<Index>(factors.size()) != space.parties())
    err << "expected " << space.parties() << " factors, got " << factors.size() << "; ";
  for (std::size_t i = 0; i < factors.size() && i < space.dims().size(); ++i) {
    if (factors[i].size() != space.dims()[i])
      err << "factor " << i << " has length " << factors[i].size() << ", expected " << space.dims()[i] << "; ";
  }
  if (!err.str().empty()) throw DimensionError("tensor_product: " + err.str());
  return tensor_product<Real>(factors);
}

/// Reshape a vector on H into the d(E) x d(E') matrix M with
/// psi = sum M(e, c) |e>|c>.
template <typename Real>
CMatrix<Real> matricize(const CVector<Real>& psi, const MultipartiteSpace& space, std::span<const Index> keep) {
  if (psi.size() != space.total_dim()) throw DimensionError("vector length does not match space");
  detail::check_subset(space, keep);
  const auto t = detail::split_table(space, keep);
  CMatrix<Real> m(t.kept_dim, t.traced_dim);
  for (Index flat = 0; flat < psi.size(); ++flat) m(t.kept[flat], t.traced[flat]) = psi(flat);
  return m;
}

// ---------------------------------------------------------------------------
// Partial trace

/// Tr_{H(E')} of an operator on H; the result acts on H(E).
template <typename Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& op, const MultipartiteSpace& space, std::span<const Index> keep) {
  if (op.rows() != space.total_dim() || op.cols() != space.total_dim())
    throw DimensionError("operator shape does not match space");
  detail::check_subset(space, keep);
  const auto t = detail::split_table(space, keep);
  // Group flat indices by their traced coordinate.
  std::vector<std::vector<Index>> by_traced(static_cast<std::size_t>(t.traced_dim));
  for (Index flat = 0; flat < space.total_dim(); ++flat) by_traced[t.traced[flat]].push_back(flat);
  CMatrix<Real> out = CMatrix<Real>::Zero(t.kept_dim, t.kept_dim);
  for (const auto& group : by_traced) {
    for (Index r : group)
      for (Index c : group) out(t.kept[r], t.kept[c]) += op(r, c);
  }
  return out;
}

/// Tr_{H(E')} |a><b| without forming the full outer product.
template <typename Real>
CMatrix<Real> partial_trace_outer(const CVector<Real>& a, const CVector<Real>& b, const MultipartiteSpace& space,
                                  std::span<const Index> keep) {
  const CMatrix<Real> ma = matricize<Real>(a, space, keep);
  const CMatrix<Real> mb = matricize<Real>(b, space, keep);
  return ma * mb.adjoint();
}

// ---------------------------------------------------------------------------
// Subspaces

template <typename Real>
Real gram_deviation(const CMatrix<Real>& basis) {
  if (basis.cols() == 0) return Real(0);
  return ((basis.adjoint() * basis) - CMatrix<Real>::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

/// Nonzero subspace held as an orthonormal basis (columns of `basis`).
template <typename Real = double>
class Subspace {
 public:
  Subspace(MultipartiteSpace space, CMatrix<Real> basis, Real tol = Tolerances<Real>::orth)
      : space_(std::move(space)), basis_(std::move(basis)) {
    if (basis_.rows() != space_.total_dim())
      throw DimensionError("basis vectors have length " + std::to_string(basis_.rows()) + ", space has dimension " +
                           std::to_string(space_.total_dim()));
    if (basis_.cols() < 1) throw DimensionError("subspace must be nonzero");
    if (basis_.cols() > space_.total_dim()) throw DimensionError("more basis vectors than the space dimension");
    const Real dev = gram_deviation<Real>(basis_);
    if (!(dev <= tol)) {
      std::ostringstream os;
      os << "basis is not orthonormal (Gram deviation " << dev << ")";
      throw std::invalid_argument(os.str());
    }
  }

  /// Orthonormalizes an arbitrary spanning set; rank decided by SVD.
  static Subspace span_of(MultipartiteSpace space, const CMatrix<Real>& vectors);

  const MultipartiteSpace& space() const noexcept { return space_; }
  const CMatrix<Real>& basis() const noexcept { return basis_; }
  Index dim() const noexcept { return basis_.cols(); }
  auto vector(Index i) const { return basis_.col(i); }

 private:
  MultipartiteSpace space_;
  CMatrix<Real> basis_;
};

/// Number of singular values above tol * sigma_max.
template <typename Real>
Index numerical_rank(const CMatrix<Real>& m, Real tol = Tolerances<Real>::rank) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix<Real>> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == Real(0)) return 0;
  return static_cast<Index>((s.array() > tol * s(0)).count());
}

/// Orthonormal basis of span(vectors)^perp. std::nullopt means the
/// complement is the zero subspace.
template <typename Real>
std::optional<Subspace<Real>> orthogonal_complement(const MultipartiteSpace& space, const CMatrix<Real>& vectors,
                                                    Real rank_tol = Tolerances<Real>::rank) {
  const Index n = space.total_dim();
  if (vectors.cols() > 0 && vectors.rows() != n) throw DimensionError("input vectors do not live in the space");
  if (vectors.cols() == 0) return Subspace<Real>(space, CMatrix<Real>::Identity(n, n));
  Eigen::JacobiSVD<CMatrix<Real>> svd(vectors, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const Index r = s(0) == Real(0) ? 0 : static_cast<Index>((s.array() > rank_tol * s(0)).count());
  if (r == n) return std::nullopt;
  return Subspace<Real>(space, svd.matrixU().rightCols(n - r));
}

template <typename Real>
Subspace<Real> Subspace<Real>::span_of(MultipartiteSpace space, const CMatrix<Real>& vectors) {
  if (vectors.rows() != space.total_dim()) throw DimensionError("input vectors do not live in the space");
  Eigen::JacobiSVD<CMatrix<Real>> svd(vectors, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const Index r = (s.size() == 0 || s(0) == Real(0))
                      ? 0
                      : static_cast<Index>((s.array() > Tolerances<Real>::rank * s(0)).count());
  if (r == 0) throw DimensionError("span of the given vectors is zero");
  return Subspace<Real>(std::move(space), svd.matrixU().leftCols(r));
}

template <typename Real>
CMatrix<Real> projector(const Subspace<Real>& s) {
  return s.basis() * s.basis().adjoint();
}

// ---------------------------------------------------------------------------
// States, spectra, entropy

template <typename Real>
bool is_hermitian(const CMatrix<Real>& m, Real tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

class NotAStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermitian, positive semidefinite, unit-trace operator.
template <typename Real = double>
class DensityOperator {
 public:
  explicit DensityOperator(CMatrix<Real> op) : op_(std::move(op)) {
    if (op_.rows() != op_.cols()) throw NotAStateError("density operator must be square");
    if (!is_hermitian<Real>(op_, Tolerances<Real>::herm)) throw NotAStateError("density operator is not Hermitian");
    const Real tr = op_.trace().real();
    if (std::abs(tr - Real(1)) > Tolerances<Real>::trace) {
      std::ostringstream os;
      os << "density operator has trace " << tr;
      throw NotAStateError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(op_, Eigen::EigenvaluesOnly);
    eigenvalues_ = es.eigenvalues();
    if (eigenvalues_.size() > 0 && eigenvalues_(0) < -Tolerances<Real>::psd) {
      std::ostringstream os;
      os << "density operator has negative eigenvalue " << eigenvalues_(0);
      throw NotAStateError(os.str());
    }
  }

  static DensityOperator pure(const CVector<Real>& psi) { return DensityOperator(psi * psi.adjoint()); }

  const CMatrix<Real>& matrix() const noexcept { return op_; }
  /// Ascending.
  const RVector<Real>& eigenvalues() const noexcept { return eigenvalues_; }
  Index dim() const noexcept { return op_.rows(); }

 private:
  CMatrix<Real> op_;
  RVector<Real> eigenvalues_;
};

/// -sum lambda log2 lambda with 0 log 0 = 0.
template <typename Real>
Real von_neumann_entropy(const DensityOperator<Real>& rho) {
  Real s = 0;
  for (Index i = 0; i < rho.eigenvalues().size(); ++i) {
    const Real l = rho.eigenvalues()(i);
    if (l > Real(0)) s -= l * std::log2(l);
  }
  return std::clamp(s, Real(0), std::log2(static_cast<Real>(rho.dim())));
}

/// Singular values of the E|E' matricization, descending; there are
/// min(d(E), d(E')) of them.
template <typename Real>
RVector<Real> schmidt_coefficients(const CVector<Real>& psi, const MultipartiteSpace& space,
                                   std::span<const Index> keep) {
  const Real norm = psi.norm();
  if (std::abs(norm - Real(1)) > Tolerances<Real>::orth) {
    std::ostringstream os;
    os << "schmidt_coefficients: input has norm " << norm << ", expected 1";
    throw std::invalid_argument(os.str());
  }
  const CMatrix<Real> m = matricize<Real>(psi, space, keep);
  Eigen::JacobiSVD<CMatrix<Real>> svd(m);
  return svd.singularValues();
}

// ---------------------------------------------------------------------------
// Random generation (seeded, reproducible on one platform)

template <typename Real, typename Rng>
CVector<Real> random_gaussian_vector(Index n, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CVector<Real> v(n);
  for (Index i = 0; i < n; ++i) {
    const Real re = normal(rng);
    const Real im = normal(rng);
    v(i) = Complex<Real>(re, im);
  }
  return v;
}

template <typename Real, typename Rng>
CVector<Real> random_unit_vector(Index n, Rng& rng) {
  CVector<Real> v = random_gaussian_vector<Real>(n, rng);
  return v / v.norm();
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
template <typename Real, typename Rng>
CMatrix<Real> random_unitary(Index n, Rng& rng) {
  CMatrix<Real> g(n, n);
  for (Index c = 0; c < n; ++c) g.col(c) = random_gaussian_vector<Real>(n, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex<Real> d = r(i, i);
    if (std::abs(d) > Real(0)) q.col(i) *= d / std::abs(d);
  }
  return q;
}

/// Haar-random m-dimensional subspace.
template <typename Real, typename Rng>
Subspace<Real> haar_random_subspace(const MultipartiteSpace& space, Index m, Rng& rng) {
  if (m < 1 || m > space.total_dim()) throw DimensionError("requested subspace dimension out of range");
  CMatrix<Real> g(space.total_dim(), m);
  for (Index c = 0; c < m; ++c) g.col(c) = random_gaussian_vector<Real>(space.total_dim(), rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(space.total_dim(), m);
  return Subspace<Real>(space, std::move(q));
}

/// Seeded engine for stream `stream` of a computation keyed by `seed`.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace ces
