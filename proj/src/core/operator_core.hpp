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

#pragma once

// Dense complex linear algebra shared by every engine: tensor products,
// partial traces, Hermitian spectra, trace distance and the truncated
// bosonic operators of the meter.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qndlz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Qubit = Eigen::Matrix2cd;
using QubitVector = Eigen::Vector2cd;

inline constexpr Complex kI{0.0, 1.0};

/// Joint qubit-meter index layout. The qubit factor is the slow index:
/// joint index = q * meter_dim + m.
struct HilbertLayout {
  static constexpr int qubit_dim = 2;
  int n_max = 1;

  int meter_dim() const { return n_max + 1; }
  int joint_dim() const { return qubit_dim * meter_dim(); }
  int index(int q, int m) const { return q * meter_dim() + m; }
};

/// State-validity tolerances applied to propagated density matrices.
struct StateTolerances {
  double trace = 1e-8;
  double hermiticity = 1e-10;
  double positivity = -1e-7;  // smallest admissible eigenvalue
};

struct StateCheck {
  double trace_error = 0.0;        // |Tr rho - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;
  bool finite = true;

  bool ok(const StateTolerances& tol = {}) const {
    return finite && trace_error <= tol.trace && hermiticity_error <= tol.hermiticity &&
           min_eigenvalue >= tol.positivity;
  }
};

/// Validated density matrix. Construction checks the invariants in StateCheck.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const StateTolerances& tol = {});

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // orthonormal columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_M over the meter factor of a joint operator laid out per `layout`.
/// Works for any operator, not only states.
Qubit partial_trace_meter(const ComplexMatrix& rho, const HilbertLayout& layout);

/// Reduced meter operator (trace over the qubit).
ComplexMatrix partial_trace_qubit(const ComplexMatrix& rho, const HilbertLayout& layout);

EigenSystem hermitian_eig(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

/// Half-normalized trace distance, D = (1/2) sum_k |lambda_k(r1 - r2)|.
double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2);

double hermiticity_error(const ComplexMatrix& m);
StateCheck check_state(const ComplexMatrix& rho, bool with_spectrum = true);

Qubit pauli_x();
Qubit pauli_y();
Qubit pauli_z();

ComplexMatrix annihilation(int n_max);
ComplexMatrix creation(int n_max);
ComplexMatrix number_op(int n_max);

/// n = 1 / (exp(beta * omega_c) - 1).
double occupancy_from_beta(double beta, double omega_c);

/// Probability weight of a geometric (thermal) distribution beyond level n_max.
double thermal_tail(double n, int n_max);

/// Diagonal thermal state with mean occupancy n, renormalized on {0..n_max}.
ComplexMatrix thermal_state(double n, int n_max);

/// Population in the two highest Fock levels of a meter state.
double top_levels_population(const ComplexMatrix& meter_rho);

}  // namespace qndlz
