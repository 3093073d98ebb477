// Copyright 2026 The qndlz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/operator_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace qndlz {

DensityMatrix::DensityMatrix(ComplexMatrix m, const StateTolerances& tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionMismatch("density matrix must be square");
  }
  const StateCheck c = check_state(m_);
  if (!c.ok(tol)) {
    throw InvalidArgument("not a valid density matrix: trace error " + std::to_string(c.trace_error) +
                          ", hermiticity error " + std::to_string(c.hermiticity_error) +
                          ", min eigenvalue " + std::to_string(c.min_eigenvalue));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Qubit partial_trace_meter(const ComplexMatrix& rho, const HilbertLayout& layout) {
  const int m = layout.meter_dim();
  if (rho.rows() != layout.joint_dim() || rho.cols() != layout.joint_dim()) {
    throw DimensionMismatch("partial_trace_meter: operator is " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) + ", layout expects " +
                            std::to_string(layout.joint_dim()));
  }
  Qubit out;
  for (int q = 0; q < 2; ++q) {
    for (int r = 0; r < 2; ++r) {
      out(q, r) = rho.block(q * m, r * m, m, m).trace();
    }
  }
  return out;
}

ComplexMatrix partial_trace_qubit(const ComplexMatrix& rho, const HilbertLayout& layout) {
  const int m = layout.meter_dim();
  if (rho.rows() != layout.joint_dim() || rho.cols() != layout.joint_dim()) {
    throw DimensionMismatch("partial_trace_qubit: dimension mismatch");
  }
  return rho.block(0, 0, m, m) + rho.block(m, m, m, m);
}

double hermiticity_error(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch("hermitian_eig: matrix must be square");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_error(h) > 1e-10 * scale) {
    throw InvalidArgument("hermitian_eig: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InvalidArgument("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2) {
  if (r1.rows() != r2.rows() || r1.cols() != r2.cols()) {
    throw DimensionMismatch("trace_distance: dimension mismatch");
  }
  const ComplexMatrix diff = r1 - r2;
  const ComplexMatrix sym = 0.5 * (diff + diff.adjoint());
  if (sym.rows() == 2) {
    // Closed form for 2x2: eigenvalues are (tr/2) +- sqrt((a-d)^2/4 + |b|^2).
    const double a = sym(0, 0).real();
    const double d = sym(1, 1).real();
    const double half_tr = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(sym(0, 1)));
    return 0.5 * (std::abs(half_tr + rad) + std::abs(half_tr - rad));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

StateCheck check_state(const ComplexMatrix& rho, bool with_spectrum) {
  StateCheck c;
  c.finite = rho.allFinite();
  if (!c.finite) {
    c.trace_error = c.hermiticity_error = std::numeric_limits<double>::infinity();
    c.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return c;
  }
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  c.hermiticity_error = hermiticity_error(rho);
  c.min_eigenvalue = with_spectrum ? min_eigenvalue(rho) : 0.0;
  return c;
}

Qubit pauli_x() {
  Qubit m;
  m << 0, 1, 1, 0;
  return m;
}

Qubit pauli_y() {
  Qubit m;
  m << 0, -kI, kI, 0;
  return m;
}

Qubit pauli_z() {
  Qubit m;
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix annihilation(int n_max) {
  if (n_max < 1) {
    throw InvalidArgument("annihilation: n_max must be >= 1");
  }
  ComplexMatrix a = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 1; k <= n_max; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return a;
}

ComplexMatrix creation(int n_max) { return annihilation(n_max).adjoint(); }

ComplexMatrix number_op(int n_max) {
  if (n_max < 1) {
    throw InvalidArgument("number_op: n_max must be >= 1");
  }
  ComplexMatrix n = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return n;
}

double occupancy_from_beta(double beta, double omega_c) {
  if (!(beta > 0.0) || !(omega_c > 0.0)) {
    throw InvalidArgument("occupancy_from_beta: beta and omega_c must be positive");
  }
  return 1.0 / std::expm1(beta * omega_c);
}

double thermal_tail(double n, int n_max) {
  if (n <= 0.0) {
    return 0.0;
  }
  const double r = n / (n + 1.0);
  return std::pow(r, n_max + 1);
}

ComplexMatrix thermal_state(double n, int n_max) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("thermal_state: occupancy must be finite and >= 0");
  }
  if (n_max < 1) {
    throw InvalidArgument("thermal_state: n_max must be >= 1");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  if (n == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  const double r = n / (n + 1.0);
  double norm = 0.0;
  double p = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    rho(k, k) = p;
    norm += p;
    p *= r;
  }
  rho /= norm;
  return rho;
}

double top_levels_population(const ComplexMatrix& meter_rho) {
  const Eigen::Index d = meter_rho.rows();
  double pop = meter_rho(d - 1, d - 1).real();
  if (d >= 2) {
    pop += meter_rho(d - 2, d - 2).real();
  }
  return pop;
}

}  // namespace qndlz
