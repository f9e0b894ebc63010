#include "cqec/sme.hpp"

#include <cmath>
#include <stdexcept>

#include "cqec/errors.hpp"

namespace cqec {

namespace {

using Complex = std::complex<double>;

Eigen::Matrix2cd single_qubit_matrix(bool x_bit, bool z_bit) {
  Eigen::Matrix2cd m;
  const Complex i(0.0, 1.0);
  if (x_bit && z_bit) {
    m << 0, -i, i, 0;  // Y
  } else if (x_bit) {
    m << 0, 1, 1, 0;  // X
  } else if (z_bit) {
    m << 1, 0, 0, -1;  // Z
  } else {
    m.setIdentity();
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  Eigen::MatrixXcd m = single_qubit_matrix(p.x_bit(0), p.z_bit(0));
  for (int q = 1; q < p.n; ++q) {
    m = kron(m, single_qubit_matrix(p.x_bit(q), p.z_bit(q)));
  }
  return m;
}

CodeOperators build_code_operators(const StabilizerCode& code) {
  CodeOperators ops;
  ops.n = code.n;
  ops.dim = 1 << code.n;
  ops.gamma = code.gamma;
  ops.kappa = code.kappa;
  for (const auto& e : code.error_channels) {
    ops.error_ops.push_back(pauli_matrix(e));
  }
  for (const auto& m : code.generators) {
    ops.generator_ops.push_back(pauli_matrix(m));
  }

  int g = static_cast<int>(code.generators.size());
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(ops.dim, ops.dim);
  for (int s = 0; s < (1 << g); ++s) {
    Eigen::MatrixXcd projector = eye;
    for (int i = 0; i < g; ++i) {
      double sign = ((s >> i) & 1) ? -1.0 : 1.0;
      projector = projector * (0.5 * (eye + sign * ops.generator_ops[i]));
    }
    ops.syndrome_projectors.push_back(projector);
  }

  // Logical basis from the stabilizer projector; empty when the code
  // stabilizes a unique state (no logical qubit).
  if (code.n > g) {
    Eigen::MatrixXcd stab_projector = eye;
    for (int i = 0; i < g; ++i) {
      stab_projector = stab_projector * (0.5 * (eye + ops.generator_ops[i]));
    }
    Eigen::VectorXcd reference = Eigen::VectorXcd::Zero(ops.dim);
    reference[0] = 1.0;  // |00...0>
    Eigen::VectorXcd zero = stab_projector * reference;
    double norm = zero.norm();
    if (norm < 1e-12) {
      throw ConstructionError("code " + code.id +
                              ": |0...0> has no component in the code space");
    }
    zero /= norm;
    PauliString logical_x{code.n, static_cast<std::uint32_t>((1u << code.n) - 1),
                          0};  // X on every qubit
    Eigen::VectorXcd one = pauli_matrix(logical_x) * zero;
    ops.logical_zero = zero;
    ops.logical_one = one;
  }
  return ops;
}

Eigen::VectorXcd encode_vector(Complex c0, Complex c1,
                               const CodeOperators& ops) {
  if (ops.logical_zero.size() == 0) {
    throw std::invalid_argument("code has no logical qubit to encode");
  }
  double norm2 = std::norm(c0) + std::norm(c1);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("encode: |c0|^2 + |c1|^2 must equal 1");
  }
  return c0 * ops.logical_zero + c1 * ops.logical_one;
}

Eigen::MatrixXcd encode(Complex c0, Complex c1, const CodeOperators& ops) {
  Eigen::VectorXcd psi = encode_vector(c0, c1, ops);
  return psi * psi.adjoint();
}

void sme_step_inplace(Eigen::MatrixXcd& rho, const CodeOperators& ops,
                      const Eigen::Ref<const Eigen::VectorXd>& dY, double dt,
                      double t) {
  Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
  for (const auto& e : ops.error_ops) {
    delta.noalias() += (ops.gamma * dt) * (e * rho * e);
    delta -= (ops.gamma * dt) * rho;
  }
  double sqrt_kappa = std::sqrt(ops.kappa);
  for (size_t i = 0; i < ops.generator_ops.size(); ++i) {
    const Eigen::MatrixXcd& m = ops.generator_ops[i];
    Eigen::MatrixXcd m_rho = m * rho;
    double expectation = m_rho.trace().real();
    delta.noalias() += (ops.kappa * dt) * (m_rho * m);
    delta -= (ops.kappa * dt) * rho;
    double innovation = dY[i] - 2.0 * sqrt_kappa * expectation * dt;
    delta.noalias() += (sqrt_kappa * innovation) *
                       (m_rho + rho * m - 2.0 * expectation * rho);
  }
  rho += delta;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  double trace = rho.trace().real();
  if (!(trace > 1e-6) || !std::isfinite(trace)) {
    throw NumericalFailure("density matrix trace collapsed (trace=" +
                               std::to_string(trace) + ")",
                           t);
  }
  rho /= trace;
}

Eigen::VectorXd syndrome_probs(const Eigen::MatrixXcd& rho,
                               const CodeOperators& ops) {
  Eigen::VectorXd probs(ops.num_syndromes());
  for (int m = 0; m < ops.num_syndromes(); ++m) {
    probs[m] = (ops.syndrome_projectors[m] * rho).trace().real();
  }
  return probs;
}

double recovery_fidelity(const Eigen::MatrixXcd& rho,
                         const PauliString& correction,
                         const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd corrected = pauli_matrix(correction).adjoint() * psi;
  return (corrected.adjoint() * rho * corrected).value().real();
}

DensityMatrixCheck check_density_matrix(const Eigen::MatrixXcd& rho) {
  DensityMatrixCheck check;
  check.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  check.trace_error = std::abs(rho.trace().real() - 1.0) +
                      std::abs(rho.trace().imag());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (rho + rho.adjoint()));
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  return check;
}

}  // namespace cqec
