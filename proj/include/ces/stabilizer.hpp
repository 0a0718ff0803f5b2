// Five-qudit perfectly entangled stabilizer subspace over a finite abelian
// group A = Z_{m_1} x ... x Z_{m_r}.
//
// Basis states |x>, x in A^5, are flattened with x_0 most significant and
// each group element encoded in mixed radix (first cyclic factor most
// significant). Bicharacter: <a, b> = exp(2 pi i sum_i a_i b_i / m_i).
#pragma once

#include "ces/report.hpp"
#include "ces/tensor_core.hpp"

#include <array>
#include <numbers>

namespace ces {

class CapabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Group elements are encoded as integers in [0, order()).
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    if (orders_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
    order_ = 1;
    for (int m : orders_) {
      if (m < 1) throw std::invalid_argument("cyclic orders must be positive");
      order_ *= m;
    }
    if (order_ < 2) throw std::invalid_argument("group order must be >= 2");
    add_.resize(static_cast<std::size_t>(order_ * order_));
    neg_.resize(static_cast<std::size_t>(order_));
    for (int a = 0; a < order_; ++a) {
      const auto ca = components(a);
      std::vector<int> n(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) n[i] = (orders_[i] - ca[i]) % orders_[i];
      neg_[static_cast<std::size_t>(a)] = encode(n);
      for (int b = 0; b < order_; ++b) {
        const auto cb = components(b);
        std::vector<int> s(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) s[i] = (ca[i] + cb[i]) % orders_[i];
        add_[static_cast<std::size_t>(a * order_ + b)] = encode(s);
      }
    }
  }

  /// "Z3", "Z2xZ2", ...
  static FiniteAbelianGroup parse(const std::string& text) {
    std::vector<int> orders;
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] != 'Z') throw std::invalid_argument("bad group '" + text + "': expected 'Z' at " + std::to_string(pos));
      std::size_t end = text.find('x', pos);
      if (end == std::string::npos) end = text.size();
      const std::string digits = text.substr(pos + 1, end - pos - 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
        throw std::invalid_argument("bad group '" + text + "': expected cyclic order after 'Z'");
      orders.push_back(std::stoi(digits));
      pos = end == text.size() ? end : end + 1;
      if (end != text.size() && pos == text.size()) throw std::invalid_argument("bad group '" + text + "': trailing 'x'");
    }
    return FiniteAbelianGroup(std::move(orders));
  }

  int order() const noexcept { return order_; }
  const std::vector<int>& cyclic_orders() const noexcept { return orders_; }
  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(orders_[i]);
    return s;
  }

  int add(int a, int b) const { return add_[static_cast<std::size_t>(a * order_ + b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }

  std::vector<int> components(int a) const {
    std::vector<int> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      c[i] = a % orders_[i];
      a /= orders_[i];
    }
    return c;
  }
  int encode(const std::vector<int>& c) const {
    int a = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) a = a * orders_[i] + c[i];
    return a;
  }

  /// Phase sum_i a_i b_i / m_i as a fraction of a full turn, in [0, 1).
  double pairing_turns(int a, int b) const {
    const auto ca = components(a), cb = components(b);
    double t = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) t += double((ca[i] * cb[i]) % orders_[i]) / orders_[i];
    return t - std::floor(t);
  }

 private:
  std::vector<int> orders_;
  int order_ = 0;
  std::vector<int> add_;
  std::vector<int> neg_;
};

/// Element of A^5.
using GroupElementTuple = std::array<int, 5>;

/// Operators and maps of the stabilizer construction on L^2(A)^{(x)5}.
template <typename Real = double>
class StabilizerCode {
 public:
  static constexpr Index max_dense_dim = 1024;

  explicit StabilizerCode(FiniteAbelianGroup group) : group_(std::move(group)) {
    const int d = group_.order();
    dim_ = 1;
    for (int i = 0; i < 5; ++i) {
      dim_ *= d;
      if (dim_ > max_dense_dim)
        throw CapabilityError("group " + group_.name() + " of order " + std::to_string(d) +
                              " needs d^5 > 1024; dense construction supports d <= 4");
    }
    chi_.resize(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        chi_[static_cast<std::size_t>(a * d + b)] =
            std::polar(Real(1), Real(2) * std::numbers::pi_v<Real> * Real(group_.pairing_turns(a, b)));
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  int d() const noexcept { return group_.order(); }
  Index dim() const noexcept { return dim_; }
  MultipartiteSpace space() const {
    const Index d = this->d();
    return MultipartiteSpace({d, d, d, d, d});
  }

  /// Bicharacter on A.
  Complex<Real> chi(int a, int b) const { return chi_[static_cast<std::size_t>(a * d() + b)]; }
  /// Product bicharacter on A^5.
  Complex<Real> chi(const GroupElementTuple& a, const GroupElementTuple& b) const {
    Complex<Real> c(1);
    for (int i = 0; i < 5; ++i) c *= chi(a[i], b[i]);
    return c;
  }

  GroupElementTuple add(const GroupElementTuple& a, const GroupElementTuple& b) const {
    GroupElementTuple s;
    for (int i = 0; i < 5; ++i) s[i] = group_.add(a[i], b[i]);
    return s;
  }
  GroupElementTuple neg(const GroupElementTuple& a) const {
    GroupElementTuple s;
    for (int i = 0; i < 5; ++i) s[i] = group_.neg(a[i]);
    return s;
  }
  int component_sum(const GroupElementTuple& x) const {
    int s = 0;
    for (int v : x) s = group_.add(s, v);
    return s;
  }
  bool in_c(const GroupElementTuple& x) const { return component_sum(x) == 0; }

  /// (x0..x4) -> (x4, x0, x1, x2, x3)
  static GroupElementTuple sigma(const GroupElementTuple& x) { return {x[4], x[0], x[1], x[2], x[3]}; }
  /// (x0..x4) -> (x1, x2, x3, x4, x0)
  static GroupElementTuple sigma_inv(const GroupElementTuple& x) { return {x[1], x[2], x[3], x[4], x[0]}; }
  GroupElementTuple tau(const GroupElementTuple& x) const { return add(sigma(sigma(x)), sigma_inv(sigma_inv(x))); }

  Index flat(const GroupElementTuple& x) const {
    Index f = 0;
    for (int v : x) f = f * d() + v;
    return f;
  }
  GroupElementTuple tuple(Index flat) const {
    GroupElementTuple x;
    for (int i = 5; i-- > 0;) {
      x[i] = static_cast<int>(flat % d());
      flat /= d();
    }
    return x;
  }

  /// Every x in C (component sum zero), in flat order; d^4 elements.
  std::vector<GroupElementTuple> subgroup_c() const {
    std::vector<GroupElementTuple> out;
    for (Index f = 0; f < dim_; ++f) {
      const auto x = tuple(f);
      if (in_c(x)) out.push_back(x);
    }
    return out;
  }

  /// U_a |x> = |a + x>.
  CMatrix<Real> weyl_u(const GroupElementTuple& a) const {
    CMatrix<Real> u = CMatrix<Real>::Zero(dim_, dim_);
    for (Index f = 0; f < dim_; ++f) u(flat(add(a, tuple(f))), f) = Real(1);
    return u;
  }

  /// V_b |x> = <b, x> |x>.
  CMatrix<Real> weyl_v(const GroupElementTuple& b) const {
    CMatrix<Real> v = CMatrix<Real>::Zero(dim_, dim_);
    for (Index f = 0; f < dim_; ++f) v(f, f) = chi(b, tuple(f));
    return v;
  }

  /// Phase <x, sigma^2(x)> of W_x.
  Complex<Real> w_phase(const GroupElementTuple& x) const { return chi(x, sigma(sigma(x))); }

  /// W_x = <x, sigma^2 x> U_x V_{tau(x)}, defined for x in C.
  CMatrix<Real> w_op(const GroupElementTuple& x) const {
    if (!in_c(x)) throw std::invalid_argument("W_x is only a representation on C; x has nonzero component sum");
    CMatrix<Real> w = CMatrix<Real>::Zero(dim_, dim_);
    accumulate_w(w, x, Complex<Real>(1));
    return w;
  }

  /// U_a v without forming the matrix.
  CVector<Real> apply_u(const GroupElementTuple& a, const CVector<Real>& v) const {
    CVector<Real> out(dim_);
    for (Index f = 0; f < dim_; ++f) out(flat(add(a, tuple(f)))) = v(f);
    return out;
  }
  CVector<Real> apply_v(const GroupElementTuple& b, const CVector<Real>& v) const {
    CVector<Real> out(dim_);
    for (Index f = 0; f < dim_; ++f) out(f) = chi(b, tuple(f)) * v(f);
    return out;
  }
  /// W_x v for any x in A^5 (no membership check).
  CVector<Real> apply_w(const GroupElementTuple& x, const CVector<Real>& v) const {
    return w_phase(x) * apply_u(x, apply_v(tau(x), v));
  }

  /// U_sigma |x> = |sigma(x)>.
  CMatrix<Real> u_sigma() const {
    CMatrix<Real> u = CMatrix<Real>::Zero(dim_, dim_);
    for (Index f = 0; f < dim_; ++f) u(flat(sigma(tuple(f))), f) = Real(1);
    return u;
  }

  /// P_C = d^{-4} sum_{x in C} W_x, summed directly.
  CMatrix<Real> projector_pc() const {
    CMatrix<Real> p = CMatrix<Real>::Zero(dim_, dim_);
    const Real scale = Real(1) / std::pow(Real(d()), 4);
    for (const auto& x : subgroup_c()) accumulate_w(p, x, Complex<Real>(scale));
    return p;
  }

  /// <a|P_C|b>: zero unless sum(a_i - b_i) = 0, else
  /// d^{-4} <a, sigma^2 a> conj(<b, sigma^2 b>).
  Complex<Real> pc_matrix_element(const GroupElementTuple& a, const GroupElementTuple& b) const {
    if (component_sum(a) != component_sum(b)) return Complex<Real>(0);
    return w_phase(a) * std::conj(w_phase(b)) / std::pow(Real(d()), 4);
  }

  CMatrix<Real> pc_closed_form() const {
    CMatrix<Real> p(dim_, dim_);
    for (Index r = 0; r < dim_; ++r)
      for (Index c = 0; c < dim_; ++c) p(r, c) = pc_matrix_element(tuple(r), tuple(c));
    return p;
  }

 private:
  /// out += scale * W_x, using <W_x>_{x+b, b} = phase(x) <tau(x), b>.
  void accumulate_w(CMatrix<Real>& out, const GroupElementTuple& x, Complex<Real> scale) const {
    const Complex<Real> phase = scale * w_phase(x);
    const GroupElementTuple t = tau(x);
    for (Index f = 0; f < dim_; ++f) {
      const auto b = tuple(f);
      out(flat(add(x, b)), f) += phase * chi(t, b);
    }
  }

  FiniteAbelianGroup group_;
  Index dim_ = 0;
  std::vector<Complex<Real>> chi_;
};

/// Every subset E of {0..4} with d(E) <= d(E') for five equal factors:
/// the 5 singletons and the 10 pairs.
inline std::vector<std::vector<Index>> balanced_subsets_of_five() {
  std::vector<std::vector<Index>> out;
  for (Index i = 0; i < 5; ++i) out.push_back({i});
  for (Index i = 0; i < 5; ++i)
    for (Index j = i + 1; j < 5; ++j) out.push_back({i, j});
  return out;
}

inline std::string subset_name(std::span<const Index> e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "}";
}

template <typename Real>
Real projector_defect(const CMatrix<Real>& p) {
  return std::max((p * p - p).norm(), (p - p.adjoint()).norm());
}

/// Orthonormal basis of range(P) for a projector P (eigenvalues > 1/2).
template <typename Real>
CMatrix<Real> projector_range(const CMatrix<Real>& p) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(p);
  const Index r = static_cast<Index>((es.eigenvalues().array() > Real(0.5)).count());
  return es.eigenvectors().rightCols(r);
}

template <typename Real, typename Rng>
CVector<Real> random_range_vector(const CMatrix<Real>& p, Rng& rng) {
  CVector<Real> v = p * random_gaussian_vector<Real>(p.rows(), rng);
  return v / v.norm();
}

enum class VerificationMode { Exhaustive, Sampled };

struct PerfectEntanglementOptions {
  VerificationMode mode = VerificationMode::Exhaustive;
  std::uint64_t seed = 0;
  int sampled_pairs = 1000;
  int sampled_vectors = 100;
  double operator_tol = 1e-10;
  double state_tol = 1e-9;
};

/// Checks (P|a><b|P)(E) = <b|P|a>/d(E) I_E over pairs (a, b) of basis
/// states (all of them in exhaustive mode, which suffices by linearity) and,
/// in sampled mode, rho(E) = I/d(E) with entropy log2 d(E) for random unit
/// vectors in range(P). E ranges over all 15 subsets with |E| <= 2.
template <typename Real>
VerificationReport verify_perfect_entanglement(const CMatrix<Real>& p, Index local_dim,
                                               const PerfectEntanglementOptions& opt) {
  const MultipartiteSpace space({local_dim, local_dim, local_dim, local_dim, local_dim});
  if (p.rows() != space.total_dim() || p.cols() != space.total_dim())
    throw DimensionError("operator does not act on five copies of C^" + std::to_string(local_dim));
  if (projector_defect<Real>(p) > Real(1e-8)) throw std::invalid_argument("operator is not an orthogonal projector");

  VerificationReport r;
  r.command = "verify_perfect_entanglement";
  r.inputs["local_dim"] = local_dim;
  r.inputs["mode"] = opt.mode == VerificationMode::Exhaustive ? "exhaustive" : "sampled";
  r.inputs["seed"] = opt.seed;

  const auto subsets = balanced_subsets_of_five();
  const Index n = space.total_dim();

  std::vector<std::pair<Index, Index>> pairs;
  if (opt.mode == VerificationMode::Exhaustive) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    auto rng = seeded_engine(opt.seed, 0xab);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int i = 0; i < opt.sampled_pairs; ++i) {
      const Index a = pick(rng);
      pairs.emplace_back(a, pick(rng));
    }
  }
  r.inputs["operator_pairs"] = pairs.size();

  Json per_subset = Json::object();
  Real overall_op = 0;
  for (const auto& e : subsets) {
    const auto t = detail::split_table(space, e);
    // Matricized columns of P, built lazily per subset.
    std::vector<CMatrix<Real>> cols(static_cast<std::size_t>(n));
    std::vector<bool> have(static_cast<std::size_t>(n), false);
    const auto col = [&](Index i) -> const CMatrix<Real>& {
      if (!have[i]) {
        CMatrix<Real> m(t.kept_dim, t.traced_dim);
        for (Index f = 0; f < n; ++f) m(t.kept[f], t.traced[f]) = p(f, i);
        cols[i] = std::move(m);
        have[i] = true;
      }
      return cols[i];
    };
    const CMatrix<Real> identity = CMatrix<Real>::Identity(t.kept_dim, t.kept_dim);
    Real worst = 0;
    for (const auto& [a, b] : pairs) {
      // P|a><b|P = |p_a><p_b| with p_a the a-th column of P.
      const CMatrix<Real> reduced = col(a) * col(b).adjoint();
      const Complex<Real> expected = p(b, a) / Real(t.kept_dim);
      worst = std::max(worst, (reduced - expected * identity).norm());
    }
    per_subset[subset_name(e)] = static_cast<double>(worst);
    overall_op = std::max(overall_op, worst);
  }
  r.add(Check::below("max_operator_residual", static_cast<double>(overall_op), opt.operator_tol));
  r.notes["operator_residual_per_subset"] = per_subset;

  if (opt.mode == VerificationMode::Sampled) {
    auto rng = seeded_engine(opt.seed, 0xcd);
    Real worst_state = 0, worst_entropy = 0;
    Json state_per_subset = Json::object();
    std::vector<Real> subset_worst(subsets.size(), Real(0));
    for (int v = 0; v < opt.sampled_vectors; ++v) {
      const CVector<Real> psi = random_range_vector<Real>(p, rng);
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        const CMatrix<Real> rho = partial_trace_outer<Real>(psi, psi, space, subsets[s]);
        const Index de = rho.rows();
        const Real dev = (rho - CMatrix<Real>::Identity(de, de) / Real(de)).norm();
        const Real ent = std::abs(von_neumann_entropy(DensityOperator<Real>(rho)) - std::log2(Real(de)));
        worst_state = std::max(worst_state, dev);
        worst_entropy = std::max(worst_entropy, ent);
        subset_worst[s] = std::max(subset_worst[s], std::max(dev, ent));
      }
    }
    for (std::size_t s = 0; s < subsets.size(); ++s)
      state_per_subset[subset_name(subsets[s])] = static_cast<double>(subset_worst[s]);
    r.add(Check::below("max_marginal_deviation", static_cast<double>(worst_state), opt.state_tol));
    r.add(Check::below("max_entropy_deficit", static_cast<double>(worst_entropy), opt.state_tol));
    r.notes["state_residual_per_subset"] = state_per_subset;
  }
  return r;
}

/// For random unit psi in range(P), the smallest Schmidt coefficient across
/// every cut E|E' with |E| <= 2 must exceed `min_coefficient`, so psi has
/// no factorization psi_1 (x) psi_2.
template <typename Real>
VerificationReport indecomposability_check(const CMatrix<Real>& p, Index local_dim, std::uint64_t seed,
                                           int samples = 100, Real min_coefficient = Real(0.1)) {
  const MultipartiteSpace space({local_dim, local_dim, local_dim, local_dim, local_dim});
  if (p.rows() != space.total_dim()) throw DimensionError("operator does not match five copies of the local space");
  VerificationReport r;
  r.command = "indecomposability_check";
  r.inputs["local_dim"] = local_dim;
  r.inputs["seed"] = seed;
  r.inputs["samples"] = samples;
  auto rng = seeded_engine(seed, 0xef);
  Real smallest = std::numeric_limits<Real>::infinity();
  Real flatness = 0;
  for (int v = 0; v < samples; ++v) {
    const CVector<Real> psi = random_range_vector<Real>(p, rng);
    for (const auto& e : balanced_subsets_of_five()) {
      const RVector<Real> sc = schmidt_coefficients<Real>(psi, space, e);
      smallest = std::min(smallest, sc.minCoeff());
      const Real expect = Real(1) / std::sqrt(Real(sc.size()));
      flatness = std::max(flatness, (sc.array() - expect).abs().maxCoeff());
    }
  }
  r.add(Check::above("min_schmidt_coefficient", static_cast<double>(smallest), static_cast<double>(min_coefficient)));
  r.notes["max_deviation_from_flat_spectrum"] = static_cast<double>(flatness);
  return r;
}

}  // namespace ces
