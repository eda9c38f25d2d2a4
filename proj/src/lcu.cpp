#include "lcuwalk/lcu.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "lcuwalk/errors.hpp"

namespace lcuwalk {

namespace {

double lattice_s(int l) {
  return 1.0 / std::sin(std::numbers::pi / (2.0 * (2.0 * l + 1.0)));
}

double abs_total(const CoefficientSet& c) {
  double a = 0.0;
  for (double v : c.a) a += std::abs(v);
  return a;
}

CMatrix kron_identity(const CMatrix& b, Eigen::Index d) {
  CMatrix out = CMatrix::Zero(b.rows() * d, b.cols() * d);
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (b(i, j) != cplx{0.0}) out.block(i * d, j * d, d, d).diagonal().setConstant(b(i, j));
  return out;
}

// Coefficients of T_{2m+1}(x)/x in powers of x.
std::vector<double> odd_chebyshev_over_x(int m) {
  std::vector<double> prev{1.0};       // T_0
  std::vector<double> cur{0.0, 1.0};   // T_1
  for (int n = 1; n < 2 * m + 1; ++n) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur.begin() + 1, cur.end()};
}

double horner(const std::vector<double>& coef, double x) {
  double v = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * x + *it;
  return v;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

void check_sine_condition(double s, int l_iters) {
  if (l_iters < 0) throw ParameterError("amplification: l must be non-negative");
  const double r = sine_condition_residual(s, l_iters);
  if (r > 1e-12)
    throw ParameterError(fmt::format("amplification: sine condition off by {:.3e} for s = {}, l = {}",
                                     r, s, l_iters));
}

}  // namespace

AmplificationParams solve_s_l(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("solve_s_l: a must be positive");
  for (int l = 0; l < 1000000; ++l) {
    const double s = lattice_s(l);
    if (s >= a * (1.0 - 1e-12)) return {s, l};
  }
  throw CapacityError("solve_s_l: a too large");
}

double sine_condition_residual(double s, int l_iters) {
  return std::abs(std::sin(std::numbers::pi / (2.0 * (2.0 * l_iters + 1.0))) - 1.0 / s);
}

CMatrix build_select(const CMatrix& u, int k) {
  if (k < 0) throw ParameterError("build_select: k must be non-negative");
  const Eigen::Index d = u.rows();
  const int M = 2 * k + 1;
  CMatrix out = CMatrix::Zero(M * d, M * d);
  CMatrix pos = CMatrix::Identity(d, d);
  out.block(k * d, k * d, d, d) = pos;
  for (int m = 1; m <= k; ++m) {
    pos = u * pos;
    out.block((k + m) * d, (k + m) * d, d, d) = pos;
    out.block((k - m) * d, (k - m) * d, d, d) = pos.adjoint();
  }
  return out;
}

CVector prep_state(const CoefficientSet& c, double s) {
  const double a = abs_total(c);
  if (!(a > 0.0)) throw ParameterError("prep_state: coefficients are all zero");
  if (s < a * (1.0 - 1e-12))
    throw ParameterError(fmt::format("prep_state: s = {} is below sum |a_m| = {}", s, a));
  const Eigen::Index M = static_cast<Eigen::Index>(c.a.size());
  const double ratio = std::min(1.0, a / s);
  const double spare = 1.0 - ratio;
  if (M < 2 && spare > 1e-15)
    throw ParameterError("prep_state: s > sum |a_m| needs at least two selector states");
  CVector chi = CVector::Zero(2 * M);
  for (Eigen::Index i = 0; i < M; ++i)
    chi[i] = std::sqrt(ratio * std::abs(c.a[static_cast<std::size_t>(i)]) / a);
  if (M >= 2) chi[M] = chi[M + 1] = std::sqrt(spare / 2.0);
  return chi;
}

CMatrix build_prep(const CoefficientSet& c, double s) {
  const Eigen::VectorXd chi = prep_state(c, s).real();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(chi);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(chi.size(), chi.size());
  if (q.col(0).dot(chi) < 0.0) q.col(0) *= -1.0;
  return q.cast<cplx>();
}

CMatrix build_W(const CMatrix& b, const CMatrix& select, const CoefficientSet& c) {
  const Eigen::Index M = static_cast<Eigen::Index>(c.a.size());
  if (b.rows() != 2 * M || select.rows() % M != 0)
    throw ParameterError("build_W: dimensions do not match the coefficient set");
  const Eigen::Index d = select.rows() / M;
  CMatrix sel = CMatrix::Zero(2 * M * d, 2 * M * d);
  for (Eigen::Index i = 0; i < M; ++i) {
    sel.block(i * d, i * d, d, d) =
        sign_of(c.a[static_cast<std::size_t>(i)]) * select.block(i * d, i * d, d, d);
    sel.block((M + i) * d, (M + i) * d, d, d).diagonal().setConstant(i % 2 ? -1.0 : 1.0);
  }
  return kron_identity(b.adjoint(), d) * sel * kron_identity(b, d);
}

CMatrix ancilla_projector(Eigen::Index ancilla_dim, Eigen::Index system_dim) {
  CMatrix p = CMatrix::Zero(ancilla_dim * system_dim, ancilla_dim * system_dim);
  p.topLeftCorner(system_dim, system_dim).setIdentity();
  return p;
}

CMatrix amplification_step(const CMatrix& w, const CMatrix& p) {
  const CMatrix refl = CMatrix::Identity(p.rows(), p.cols()) - 2.0 * p;
  return -w * refl * w.adjoint() * refl;
}

LcuAssembly assemble_lcu(const CMatrix& u, const CoefficientSet& c) {
  return assemble_lcu(u, c, solve_s_l(abs_total(c)));
}

LcuAssembly assemble_lcu(const CMatrix& u, const CoefficientSet& c, AmplificationParams sl) {
  LcuAssembly out;
  out.M = static_cast<int>(c.a.size());
  out.k = c.k;
  out.ancilla_dim = 2 * out.M;
  out.system_dim = u.rows();
  out.s = sl.s;
  out.l_iters = sl.l_iters;
  out.W = build_W(build_prep(c, sl.s), build_select(u, c.k), c);
  out.P = ancilla_projector(out.ancilla_dim, out.system_dim);
  out.Z = out.P * out.W * out.P;
  return out;
}

LcuAssembly block_encode_dilation(const CMatrix& v, AmplificationParams sl) {
  const Eigen::Index d = v.rows();
  const CMatrix z = v / sl.s;
  if (spectral_norm(z) > 1.0 + 1e-12) throw ParameterError("dilation: ||V||/s exceeds 1");
  auto root = [](double y) { return cplx{std::sqrt(std::max(0.0, 1.0 - y))}; };
  LcuAssembly out;
  out.M = 1;
  out.ancilla_dim = 2;
  out.system_dim = d;
  out.s = sl.s;
  out.l_iters = sl.l_iters;
  out.W.resize(2 * d, 2 * d);
  out.W.topLeftCorner(d, d) = z;
  out.W.topRightCorner(d, d) = hermitian_function(z * z.adjoint(), root);
  out.W.bottomLeftCorner(d, d) = hermitian_function(z.adjoint() * z, root);
  out.W.bottomRightCorner(d, d) = -z.adjoint();
  out.P = ancilla_projector(2, d);
  out.Z = out.P * out.W * out.P;
  return out;
}

SegmentOperator amplified_block(const CMatrix& w, Eigen::Index ancilla_dim, double s, int l_iters) {
  check_sine_condition(s, l_iters);
  if (ancilla_dim < 1 || w.rows() % ancilla_dim != 0)
    throw ParameterError("amplified_block: ancilla dimension does not divide W");
  const Eigen::Index d = w.rows() / ancilla_dim;
  CMatrix x = w.leftCols(d);
  for (int i = 0; i < l_iters; ++i) {
    x.topRows(d) *= -1.0;
    x = w.adjoint() * x;
    x.topRows(d) *= -1.0;
    x = -(w * x);
  }
  SegmentOperator out;
  out.effective = x.topRows(d);
  out.leakage = x.rows() > d ? spectral_norm(x.bottomRows(x.rows() - d)) : 0.0;
  Eigen::JacobiSVD<CMatrix> svd(s * w.topLeftCorner(d, d));
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    out.delta_cert = std::max(out.delta_cert, std::abs(svd.singularValues()[i] - 1.0));
  return out;
}

SegmentOperator amplified_block(const LcuAssembly& a) {
  auto out = amplified_block(a.W, a.ancilla_dim, a.s, a.l_iters);
  out.k = a.k;
  return out;
}

ChebyshevCheck chebyshev_formula_check(const CMatrix& w, Eigen::Index ancilla_dim, int m_max) {
  if (m_max < 0 || m_max > 5) throw ParameterError("chebyshev_formula_check: m_max must be in [0, 5]");
  const Eigen::Index n = w.rows();
  const Eigen::Index d = n / ancilla_dim;
  const CMatrix p = ancilla_projector(ancilla_dim, d);
  const CMatrix wp = w * p;
  const CMatrix z = p * wp;
  const CMatrix r = amplification_step(w, p);

  Eigen::SelfAdjointEigenSolver<CMatrix> es((z.adjoint() * z + (z.adjoint() * z).adjoint()) * 0.5);
  const CMatrix& q = es.eigenvectors();
  RVector y = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);

  ChebyshevCheck out;
  CMatrix direct = wp;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) direct = r * direct;
    const auto g = odd_chebyshev_over_x(m);
    const double parity = (m % 2) ? -1.0 : 1.0;
    CVector f1(n), f2(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f1[i] = horner(g, std::sqrt(1.0 - y[i]));
      f2[i] = parity * horner(g, std::sqrt(y[i]));
    }
    const CMatrix closed = (wp - z) * (q * f1.asDiagonal() * q.adjoint()) +
                           z * (q * f2.asDiagonal() * q.adjoint());
    const double res = spectral_norm(direct - closed);
    out.residuals.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

LcuCircuit::LcuCircuit(const CMatrix& u, CoefficientSet c, AmplificationParams sl)
    : c_(std::move(c)), sl_(sl), M_(static_cast<int>(c_.a.size())) {
  check_sine_condition(sl_.s, sl_.l_iters);
  if (M_ != 2 * c_.k + 1) throw ParameterError("LcuCircuit: coefficient count must be 2k + 1");
  const Eigen::Index d = u.rows();
  powers_.assign(static_cast<std::size_t>(M_), CMatrix());
  CMatrix pos = CMatrix::Identity(d, d);
  powers_[static_cast<std::size_t>(c_.k)] = pos;
  for (int m = 1; m <= c_.k; ++m) {
    pos = u * pos;
    powers_[static_cast<std::size_t>(c_.k + m)] = pos;
    powers_[static_cast<std::size_t>(c_.k - m)] = pos.adjoint();
  }
  b_ = build_prep(c_, sl_.s).real();
}

LcuCircuit::Blocks LcuCircuit::mix(const Blocks& in, bool transpose) const {
  const Eigen::Index A = b_.rows();
  Blocks out(in.size(), CMatrix::Zero(in[0].rows(), in[0].cols()));
  for (Eigen::Index a = 0; a < A; ++a)
    for (Eigen::Index b = 0; b < A; ++b) {
      const double coef = transpose ? b_(b, a) : b_(a, b);
      if (coef != 0.0) out[static_cast<std::size_t>(a)] += coef * in[static_cast<std::size_t>(b)];
    }
  return out;
}

LcuCircuit::Blocks LcuCircuit::select(const Blocks& in, bool adjoint) const {
  Blocks out(in.size());
  for (int a = 0; a < M_; ++a) {
    const auto idx = static_cast<std::size_t>(adjoint ? 2 * c_.k - a : a);
    out[static_cast<std::size_t>(a)] =
        sign_of(c_.a[static_cast<std::size_t>(a)]) * (powers_[idx] * in[static_cast<std::size_t>(a)]);
  }
  for (int i = 0; i < M_; ++i) {
    const auto a = static_cast<std::size_t>(M_ + i);
    out[a] = (i % 2) ? CMatrix(-in[a]) : in[a];
  }
  return out;
}

LcuCircuit::Blocks LcuCircuit::apply_w(const Blocks& in, bool adjoint) const {
  return mix(select(mix(in, false), adjoint), true);
}

LcuCircuit::Output LcuCircuit::apply(const CMatrix& input) const {
  Blocks x(static_cast<std::size_t>(2 * M_), CMatrix::Zero(input.rows(), input.cols()));
  x[0] = input;
  x = apply_w(x, false);
  for (int i = 0; i < sl_.l_iters; ++i) {
    x[0] *= -1.0;
    x = apply_w(x, true);
    x[0] *= -1.0;
    x = apply_w(x, false);
    for (auto& blk : x) blk *= -1.0;
  }
  Output out;
  out.block = x[0];
  CMatrix rest((x.size() - 1) * input.rows(), input.cols());
  for (std::size_t a = 1; a < x.size(); ++a)
    rest.middleRows(static_cast<Eigen::Index>(a - 1) * input.rows(), input.rows()) = x[a];
  out.leakage = rest.size() ? spectral_norm(rest) : 0.0;
  return out;
}

CMatrix LcuCircuit::truncated_sum() const {
  CMatrix v = CMatrix::Zero(powers_[0].rows(), powers_[0].cols());
  for (int a = 0; a < M_; ++a) v += c_.a[static_cast<std::size_t>(a)] * powers_[static_cast<std::size_t>(a)];
  return v;
}

}  // namespace lcuwalk
