// Closed-form orthonormal basis of the maximal completely entangled
// subspace of C^n (x) C^n: the antisymmetric block plus one symmetric block
// K_j per antidiagonal j = 2 .. 2n-4.
#pragma once

#include "ces/report.hpp"
#include "ces/tensor_core.hpp"
#include "ces/vandermonde.hpp"

#include <numbers>

namespace ces {

template <typename Real = double>
struct BasisBlock {
  /// "B0" or "K<j>".
  std::string label;
  /// Antidiagonal index for K blocks, -1 for B0.
  Index antidiagonal = -1;
  /// n^2 x count, one basis vector per column.
  CMatrix<Real> vectors;

  Index size() const noexcept { return vectors.cols(); }
};

namespace detail {

inline Index pair_index(Index n, Index x, Index y) { return x * n + y; }

/// Adds c (|x y> + |y x>) to v.
template <typename Real>
void add_symmetric_pair(CVector<Real>& v, Index n, Index x, Index y, Complex<Real> c) {
  v(pair_index(n, x, y)) += c;
  v(pair_index(n, y, x)) += c;
}

/// Basis of symmetric tensors on one antidiagonal with zero coefficient sum.
/// The antidiagonal's off-center pairs are (first + m, last - m) for
/// m = 0 .. pairs-1; `center` is set when the antidiagonal has a diagonal
/// point.
///
/// Anchor vector (only with a center): [sum_m pairs - 2*pairs |c c>] / sqrt(2 pairs (2 pairs + 1)).
/// Fourier family: sum_m exp(2 pi i m p / pairs) pairs / sqrt(2 pairs), p = 1 .. pairs-1.
template <typename Real>
CMatrix<Real> antidiagonal_block(Index n, Index first, Index last, Index pairs, std::optional<Index> center) {
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  std::vector<CVector<Real>> cols;
  if (center) {
    const Real len = Real(2 * pairs);
    CVector<Real> v = CVector<Real>::Zero(n * n);
    for (Index m = 0; m < pairs; ++m) add_symmetric_pair<Real>(v, n, first + m, last - m, Real(1));
    v(pair_index(n, *center, *center)) = -len;
    v /= std::sqrt(len * (len + Real(1)));
    cols.push_back(std::move(v));
  }
  for (Index p = 1; p < pairs; ++p) {
    CVector<Real> v = CVector<Real>::Zero(n * n);
    for (Index m = 0; m < pairs; ++m)
      add_symmetric_pair<Real>(v, n, first + m, last - m,
                               std::polar(Real(1), two_pi * Real(m * p) / Real(pairs)));
    v /= std::sqrt(Real(2 * pairs));
    cols.push_back(std::move(v));
  }
  CMatrix<Real> out(n * n, static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = cols[i];
  return out;
}

}  // namespace detail

/// (|xy> - |yx>)/sqrt(2) for 0 <= x < y <= n-1, lexicographic.
template <typename Real = double>
BasisBlock<Real> antisymmetric_basis(Index n) {
  if (n < 2) throw DimensionError("explicit basis needs n >= 2");
  BasisBlock<Real> b{"B0", -1, CMatrix<Real>::Zero(n * n, n * (n - 1) / 2)};
  const Real s = Real(1) / std::sqrt(Real(2));
  Index col = 0;
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y, ++col) {
      b.vectors(detail::pair_index(n, x, y), col) = s;
      b.vectors(detail::pair_index(n, y, x), col) = -s;
    }
  return b;
}

/// Basis of K_j. Empty for j in {0, 1, 2n-3, 2n-2}.
///
///   j <= n-1, even: pairs (m, j-m), m < j/2, center j/2       -> j/2 vectors
///   j <= n-1, odd:  pairs (m, j-m), m <= (j-1)/2              -> (j-1)/2 vectors
///   j >= n,   even: pairs (j-n+1+m, n-1-m), m < (2n-2-j)/2, center j/2
///                                                              -> (2n-2-j)/2 vectors
///   j >= n,   odd:  pairs (j-n+1+m, n-1-m), m < (2n-1-j)/2     -> (2n-3-j)/2 vectors
template <typename Real = double>
BasisBlock<Real> kj_basis(Index n, Index j) {
  if (n < 2) throw DimensionError("explicit basis needs n >= 2");
  if (j < 0 || j > 2 * n - 2)
    throw std::out_of_range("antidiagonal index " + std::to_string(j) + " outside [0, " + std::to_string(2 * n - 2) +
                            "]");
  BasisBlock<Real> b{"K" + std::to_string(j), j, CMatrix<Real>(n * n, 0)};
  if (j < 2 || j > 2 * n - 4) return b;

  const bool even = j % 2 == 0;
  const Index first = j <= n - 1 ? 0 : j - n + 1;
  const Index last = j - first;
  // Number of points on the antidiagonal is last - first + 1.
  const Index points = last - first + 1;
  const Index pairs = points / 2;
  b.vectors = detail::antidiagonal_block<Real>(n, first, last, pairs, even ? std::optional<Index>(j / 2) : std::nullopt);
  return b;
}

/// B0 followed by K_2 .. K_{2n-4}; (n-1)^2 vectors in total.
template <typename Real = double>
std::vector<BasisBlock<Real>> full_explicit_basis(Index n) {
  std::vector<BasisBlock<Real>> blocks;
  blocks.push_back(antisymmetric_basis<Real>(n));
  for (Index j = 2; j <= 2 * n - 4; ++j) blocks.push_back(kj_basis<Real>(n, j));
  return blocks;
}

template <typename Real>
CMatrix<Real> stack_blocks(std::span<const BasisBlock<Real>> blocks) {
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows = b.vectors.rows();
    cols += b.size();
  }
  CMatrix<Real> out(rows, cols);
  Index c = 0;
  for (const auto& b : blocks) {
    out.middleCols(c, b.size()) = b.vectors;
    c += b.size();
  }
  return out;
}

/// Expected |B_j| from the closed-form count per case.
inline Index expected_block_size(Index n, Index j) {
  if (j < 2 || j > 2 * n - 4) return 0;
  if (j <= n - 1) return j % 2 == 0 ? j / 2 : (j - 1) / 2;
  return j % 2 == 0 ? (2 * n - 2 - j) / 2 : (2 * n - 3 - j) / 2;
}

/// Structural checks on the generated basis: counts, orthonormality,
/// symmetry/antisymmetry, antidiagonal support and zero coefficient sums.
template <typename Real>
VerificationReport check_explicit_basis(Index n, std::span<const BasisBlock<Real>> blocks) {
  VerificationReport r;
  r.command = "check_explicit_basis";
  r.inputs["n"] = n;
  const CMatrix<Real> all = stack_blocks<Real>(blocks);
  r.add(Check::equal("vector_count", static_cast<double>(all.cols()), static_cast<double>((n - 1) * (n - 1))));
  r.add(Check::below("gram_deviation", static_cast<double>(gram_deviation<Real>(all)), 1e-12));

  Index count_ok = 0;
  Real sym_err = 0, support_err = 0, sum_err = 0, antisym_err = 0;
  for (const auto& b : blocks) {
    if (b.antidiagonal < 0) {
      for (Index c = 0; c < b.size(); ++c)
        for (Index x = 0; x < n; ++x)
          for (Index y = 0; y < n; ++y)
            antisym_err = std::max(antisym_err, std::abs(b.vectors(x * n + y, c) + b.vectors(y * n + x, c)));
      if (b.size() == n * (n - 1) / 2) ++count_ok;
      continue;
    }
    const Index j = b.antidiagonal;
    if (b.size() == expected_block_size(n, j)) ++count_ok;
    for (Index c = 0; c < b.size(); ++c) {
      Complex<Real> sum(0);
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
          const Complex<Real> v = b.vectors(x * n + y, c);
          sym_err = std::max(sym_err, std::abs(v - b.vectors(y * n + x, c)));
          if (x + y == j)
            sum += v;
          else
            support_err = std::max(support_err, std::abs(v));
        }
      sum_err = std::max(sum_err, std::abs(sum));
    }
  }
  r.add(Check::equal("blocks_with_expected_size", static_cast<double>(count_ok), static_cast<double>(blocks.size())));
  r.add(Check::below("antisymmetry_residual_B0", static_cast<double>(antisym_err), 1e-15));
  r.add(Check::below("symmetry_residual_K", static_cast<double>(sym_err), 1e-15));
  r.add(Check::below("off_antidiagonal_residual_K", static_cast<double>(support_err), 1e-15));
  r.add(Check::below("antidiagonal_sum_residual_K", static_cast<double>(sum_err), 1e-12));
  return r;
}

/// Compares the explicit basis with the complement of {u_l (x) u_l}.
template <typename Real>
VerificationReport cross_validate_with_vandermonde(Index n, const LambdaSet<Real>& lambdas) {
  if (lambdas.size() != 2 * n - 1)
    throw std::invalid_argument("cross validation needs 2n-1 = " + std::to_string(2 * n - 1) + " lambdas");
  const MultipartiteSpace space({n, n});
  const auto blocks = full_explicit_basis<Real>(n);
  const CMatrix<Real> explicit_vectors = stack_blocks<Real>(std::span<const BasisBlock<Real>>(blocks));
  const CMatrix<Real> explicit_proj = explicit_vectors * explicit_vectors.adjoint();

  const CMatrix<Real> constraints = constraint_matrix<Real>(space, lambdas);
  const auto complement = orthogonal_complement<Real>(space, constraints);
  const Index complement_dim = complement ? complement->dim() : 0;
  const CMatrix<Real> complement_proj =
      complement ? projector<Real>(*complement) : CMatrix<Real>::Zero(n * n, n * n).eval();

  VerificationReport r;
  r.command = "cross_validate_with_vandermonde";
  r.inputs["n"] = n;
  r.add(Check::equal("complement_dim", static_cast<double>(complement_dim), static_cast<double>((n - 1) * (n - 1))));
  r.add(Check::below("projector_frobenius_distance", static_cast<double>((explicit_proj - complement_proj).norm()),
                     1e-8));
  r.add(Check::below("max_overlap_with_constraints",
                     static_cast<double>((constraints.adjoint() * explicit_vectors).cwiseAbs().maxCoeff()), 1e-9));
  return r;
}

}  // namespace ces
