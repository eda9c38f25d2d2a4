#pragma once

#include <vector>

#include "lcuwalk/bessel.hpp"
#include "lcuwalk/linalg.hpp"

namespace lcuwalk {

/// Operators on ancilla (x) system are ordered ancilla-major: index
/// a * D + j. The ancilla is a flag qubit times an M-state selector,
/// a = flag * M + (m + k), so ancilla index 0 is flag 0, m = -k.

/// (s, l) on the lattice sin(pi / (2 (2l + 1))) = 1/s.
struct AmplificationParams {
  double s = 1.0;
  int l_iters = 0;
};

/// Smallest l with 1/sin(pi / (2 (2l + 1))) >= a (relative slack 1e-12).
AmplificationParams solve_s_l(double a);

/// |sin(pi / (2 (2l + 1))) - 1/s|.
double sine_condition_residual(double s, int l_iters);

/// sum_{m=-k}^{k} |m><m| (x) U^m, negative powers via U^dag.
CMatrix build_select(const CMatrix& u, int k);

/// Ancilla state prepared from |00>:
///   sqrt(a/s)|0> (x) sum_m sqrt(|a_m|/a)|m> + sqrt(1-a/s)|1> (x) (|0>+|1>)/sqrt2.
/// Signs of the coefficients are carried by the select stage instead.
/// Throws ParameterError for s < a, or s > a with a single selector state.
CVector prep_state(const CoefficientSet& c, double s);

/// Real orthogonal B with B|00> = prep_state(c, s).
CMatrix build_prep(const CoefficientSet& c, double s);

/// W = (B^dag (x) I) sel' (B (x) I), where sel' applies sign(a_m) U^m on
/// flag 0 and (+1, -1, +1, ...) over the selector on flag 1. The flag-1
/// contribution to PWP then cancels and PWP = |00><00| (x) V~/s exactly.
CMatrix build_W(const CMatrix& b, const CMatrix& select, const CoefficientSet& c);

/// |00><00| (x) I_D.
CMatrix ancilla_projector(Eigen::Index ancilla_dim, Eigen::Index system_dim);

/// R = -W (1 - 2P) W^dag (1 - 2P).
CMatrix amplification_step(const CMatrix& w, const CMatrix& p);

struct LcuAssembly {
  int M = 1;
  Eigen::Index ancilla_dim = 2;
  Eigen::Index system_dim = 0;
  double s = 1.0;
  int l_iters = 0;
  int k = -1;  // -1 when not built from a coefficient set
  CMatrix W;
  CMatrix P;
  CMatrix Z;   // PWP
};

/// Dense assembly of select, B and W for unitary U. s and l default to
/// solve_s_l(c.abs_sum).
LcuAssembly assemble_lcu(const CMatrix& u, const CoefficientSet& c);
LcuAssembly assemble_lcu(const CMatrix& u, const CoefficientSet& c, AmplificationParams sl);

/// Single-qubit dilation of an arbitrary contraction Z = V/s:
///   W = [[Z, sqrt(1 - Z Z^dag)], [sqrt(1 - Z^dag Z), -Z^dag]].
/// Used to feed amplification an operator that is only close to unitary.
LcuAssembly block_encode_dilation(const CMatrix& v, AmplificationParams sl);

/// Block extracted from P R^l W P.
struct SegmentOperator {
  int k = -1;
  CMatrix effective;         // D x D
  double leakage = 0.0;      // ||(1 - P) R^l W P||
  double delta_cert = 0.0;   // max |sigma_i(s * PWP block) - 1|
};

/// Throws ParameterError when the sine condition fails by more than 1e-12.
SegmentOperator amplified_block(const CMatrix& w, Eigen::Index ancilla_dim, double s,
                                int l_iters);
SegmentOperator amplified_block(const LcuAssembly& a);

struct ChebyshevCheck {
  std::vector<double> residuals;  // m = 0..m_max
  double max_residual = 0.0;
};

/// R^m W P against (WP - Z) g_m(sqrt(1 - Z^dag Z)) + (-1)^m Z g_m(sqrt(Z^dag Z))
/// with g_m(x) = T_{2m+1}(x)/x evaluated as a polynomial. Throws
/// ParameterError for m_max outside [0, 5].
ChebyshevCheck chebyshev_formula_check(const CMatrix& w, Eigen::Index ancilla_dim, int m_max);

/// Matrix-free form of the same circuit for a unitary U of modest size.
/// The state is kept as 2M blocks of D x c, so W costs 2k + 1 block
/// products plus two (2M)^2 mixes instead of a dense (2MD)^2 multiply.
class LcuCircuit {
 public:
  LcuCircuit(const CMatrix& u, CoefficientSet c, AmplificationParams sl);

  struct Output {
    CMatrix block;         // P-component of R^l W P applied to the input
    double leakage = 0.0;  // norm of the rest
  };

  Output apply(const CMatrix& input) const;

  /// sum_m a_m U^m.
  CMatrix truncated_sum() const;

  const CoefficientSet& coefficients() const noexcept { return c_; }
  AmplificationParams params() const noexcept { return sl_; }

 private:
  using Blocks = std::vector<CMatrix>;
  Blocks mix(const Blocks& in, bool transpose) const;
  Blocks select(const Blocks& in, bool adjoint) const;
  Blocks apply_w(const Blocks& in, bool adjoint) const;

  CoefficientSet c_;
  AmplificationParams sl_;
  int M_;
  std::vector<CMatrix> powers_;  // U^m at m + k
  Eigen::MatrixXd b_;
};

}  // namespace lcuwalk
