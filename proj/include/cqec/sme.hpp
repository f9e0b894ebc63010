#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cqec/codes.hpp"

namespace cqec {

/// Dense matrix of a Pauli string with the standard single-qubit
/// conventions (Y carries its usual phases); qubit 0 is the first tensor
/// factor, so basis state |q0 q1 ...> has q0 in the most significant bit.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

/// Dense operator tables for one code, built once and shared immutably
/// across trajectory workers: error channels E_k, syndrome generators M_i,
/// syndrome projectors Pi_m, and the logical basis of the code space.
struct CodeOperators {
  int n = 0;
  int dim = 0;  // 2^n
  double gamma = 0.0;
  double kappa = 0.0;
  std::vector<Eigen::MatrixXcd> error_ops;
  std::vector<Eigen::MatrixXcd> generator_ops;
  std::vector<Eigen::MatrixXcd> syndrome_projectors;
  Eigen::VectorXcd logical_zero;  // empty when the code has no logical qubit
  Eigen::VectorXcd logical_one;

  int num_syndromes() const {
    return static_cast<int>(syndrome_projectors.size());
  }
};

CodeOperators build_code_operators(const StabilizerCode& code);

/// Density matrix of the encoded logical state c0|0_L> + c1|1_L>.
/// Requires |c0|^2 + |c1|^2 = 1 within 1e-12.
Eigen::MatrixXcd encode(std::complex<double> c0, std::complex<double> c1,
                        const CodeOperators& ops);
Eigen::VectorXcd encode_vector(std::complex<double> c0,
                               std::complex<double> c1,
                               const CodeOperators& ops);

/// One Euler-Maruyama step of the conditional-state equation:
///   rho += sum_k gamma T[E_k] rho dt + sum_i kappa T[M_i] rho dt
///        + sum_i sqrt(kappa) H[M_i] rho (dY_i - 2 sqrt(kappa) Tr[M_i rho] dt)
/// with T[X]rho = X rho X - rho and H[X]rho = X rho + rho X - 2 Tr[X rho] rho,
/// followed by re-Hermitization and trace renormalization. Throws
/// NumericalFailure if the trace collapses below 1e-6 before renormalizing.
void sme_step_inplace(Eigen::MatrixXcd& rho, const CodeOperators& ops,
                      const Eigen::Ref<const Eigen::VectorXd>& dY, double dt,
                      double t = 0.0);

/// Tr[Pi_m rho] for each syndrome m.
Eigen::VectorXd syndrome_probs(const Eigen::MatrixXcd& rho,
                               const CodeOperators& ops);

/// <psi| R rho R |psi> for a (self-inverse) correction operator R.
double recovery_fidelity(const Eigen::MatrixXcd& rho,
                         const PauliString& correction,
                         const Eigen::VectorXcd& psi);

/// Validity diagnostics: Hermiticity defect, trace defect, most negative
/// eigenvalue.
struct DensityMatrixCheck {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool valid(double herm_tol = 1e-10, double trace_tol = 1e-10,
             double eig_tol = -1e-8) const {
    return hermiticity_error <= herm_tol && trace_error <= trace_tol &&
           min_eigenvalue >= eig_tol;
  }
};

DensityMatrixCheck check_density_matrix(const Eigen::MatrixXcd& rho);

}  // namespace cqec
