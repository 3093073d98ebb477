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


#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/operator_core.hpp"

using namespace qndlz;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

ComplexMatrix random_density(int dim, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(dim, dim, rng);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("operator_core") {

TEST_CASE("kron obeys the mixed-product rule") {
  std::mt19937_64 rng(1);
  const auto a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
  const auto c = random_matrix(2, 2, rng), d = random_matrix(3, 3, rng);
  CHECK(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-12);
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  // qubit-major layout: (q, m) -> q * 3 + m
  CHECK(std::abs(k(1 * 3 + 2, 0 * 3 + 1) - a(1, 0) * b(2, 1)) < 1e-14);
}

TEST_CASE("partial traces") {
  SUBCASE("Bell state reduces to the maximally mixed qubit") {
    const HilbertLayout layout{1};
    ComplexVector psi = ComplexVector::Zero(4);
    psi(layout.index(0, 0)) = 1.0 / std::sqrt(2.0);
    psi(layout.index(1, 1)) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rho = psi * psi.adjoint();
    CHECK(max_abs(partial_trace_meter(rho, layout) - Qubit::Identity() / 2.0) < 1e-15);
    CHECK(max_abs(partial_trace_qubit(rho, layout) - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("product operators factor") {
    std::mt19937_64 rng(2);
    const HilbertLayout layout{4};
    const ComplexMatrix q = random_matrix(2, 2, rng);
    const ComplexMatrix m = random_matrix(5, 5, rng);
    const ComplexMatrix joint = kron(q, m);
    CHECK(max_abs(partial_trace_meter(joint, layout) - q * m.trace()) < 1e-12);
    CHECK(max_abs(partial_trace_qubit(joint, layout) - m * q.trace()) < 1e-12);
  }
  SUBCASE("wrong dimension is rejected") {
    CHECK_THROWS_AS(partial_trace_meter(ComplexMatrix::Identity(5, 5), HilbertLayout{2}), DimensionMismatch);
  }
}

TEST_CASE("hermitian_eig reconstructs the matrix") {
  std::mt19937_64 rng(3);
  for (int dim : {2, 7, 30}) {
    const ComplexMatrix a = random_matrix(dim, dim, rng);
    const ComplexMatrix h = a + a.adjoint();
    const EigenSystem es = hermitian_eig(h);
    const ComplexMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(max_abs(back - h) < 1e-10);
    CHECK(max_abs(es.vectors.adjoint() * es.vectors - ComplexMatrix::Identity(dim, dim)) < 1e-12);
    for (int i = 1; i < dim; ++i) CHECK(es.values(i) >= es.values(i - 1));
    CHECK(min_eigenvalue(h) == doctest::Approx(es.values(0)).epsilon(1e-12));
  }
}

TEST_CASE("trace distance") {
  SUBCASE("qubit states: half the Bloch distance") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.55, 0.55);
    for (int k = 0; k < 20; ++k) {
      const Eigen::Vector3d r1(u(rng), u(rng), u(rng)), r2(u(rng), u(rng), u(rng));
      auto state = [](const Eigen::Vector3d& r) {
        Qubit s = Qubit::Identity() + r(0) * pauli_x() + r(1) * pauli_y() + r(2) * pauli_z();
        return ComplexMatrix(s / 2.0);
      };
      CHECK(trace_distance(state(r1), state(r2)) == doctest::Approx(0.5 * (r1 - r2).norm()).epsilon(1e-12));
    }
  }
  SUBCASE("orthogonal pure states are at distance one") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    b(2, 2) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  }
  SUBCASE("metric properties on random states") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
      const auto r1 = random_density(4, rng), r2 = random_density(4, rng), r3 = random_density(4, rng);
      const double d12 = trace_distance(r1, r2);
      CHECK(d12 >= 0.0);
      CHECK(d12 <= 1.0 + 1e-12);
      CHECK(d12 == doctest::Approx(trace_distance(r2, r1)));
      CHECK(d12 <= trace_distance(r1, r3) + trace_distance(r3, r2) + 1e-12);
    }
  }
}

TEST_CASE("state checks and DensityMatrix") {
  std::mt19937_64 rng(6);
  const auto rho = random_density(6, rng);
  const StateCheck c = check_state(rho);
  CHECK(c.ok());
  CHECK(c.trace_error < 1e-14);
  CHECK_NOTHROW(DensityMatrix{rho});

  ComplexMatrix bad = rho;
  bad(0, 1) += Complex(1e-3, 0.0);
  CHECK(hermiticity_error(bad) == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidArgument);

  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK(check_state(negative).min_eigenvalue == doctest::Approx(-0.2));
  CHECK_FALSE(check_state(negative).ok());
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(2, 3)), DimensionMismatch);
}

TEST_CASE("truncated bosonic operators") {
  const int n_max = 6;
  const ComplexMatrix a = annihilation(n_max), ad = creation(n_max), n = number_op(n_max);
  for (int k = 1; k <= n_max; ++k) CHECK(std::abs(a(k - 1, k) - std::sqrt(double(k))) < 1e-15);
  CHECK(max_abs(ad - a.adjoint()) == 0.0);
  CHECK(max_abs(ad * a - n) < 1e-14);
  const ComplexMatrix comm = a * ad - ad * a;
  for (int k = 0; k < n_max; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
  CHECK(std::abs(comm(n_max, n_max) + double(n_max)) < 1e-14);  // truncation edge
}

TEST_CASE("thermal meter state") {
  const double n = occupancy_from_beta(10.0, 1.0);
  CHECK(n == doctest::Approx(1.0 / std::expm1(10.0)).epsilon(1e-14));
  CHECK(n == doctest::Approx(4.54e-5).epsilon(1e-3));
  const ComplexMatrix th = thermal_state(0.7, 40);
  CHECK(std::abs(th.trace() - 1.0) < 1e-14);
  CHECK(std::abs((number_op(40) * th).trace().real() - 0.7) < 1e-8);
  // geometric ratio n/(n+1)
  CHECK(th(3, 3).real() / th(2, 2).real() == doctest::Approx(0.7 / 1.7).epsilon(1e-12));
  CHECK(thermal_tail(0.7, 40) == doctest::Approx(std::pow(0.7 / 1.7, 41)).epsilon(1e-9));
  CHECK(thermal_state(0.0, 3)(0, 0).real() == 1.0);
  CHECK(top_levels_population(th) == doctest::Approx(th(39, 39).real() + th(40, 40).real()));
}

}  // TEST_SUITE
