// Copyright 2026 The edrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "edrsim/qsim.h"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace edrsim;

namespace {

constexpr double kTol = 1e-12;

ComplexMatrix ry(double angle) {
    ComplexMatrix m(2, 2);
    m << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
    return m;
}

ComplexMatrix hadamard() {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

ComplexMatrix cnot() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

ComplexVector random_pure(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g;
    ComplexVector v(dim);
    for (std::size_t k = 0; k < dim; k++) {
        v(k) = Complex(g(rng), g(rng));
    }
    return v.normalized();
}

}  // namespace

TEST(qsim, kron_of_z_with_z_is_diagonal) {
    ComplexMatrix zz = kron(pauli::z(), pauli::z());
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 1, -1, -1, 1;
    EXPECT_LT((zz - expected).cwiseAbs().maxCoeff(), kTol);
}

TEST(qsim, kron_orders_first_factor_major) {
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1;
    ComplexMatrix m = kron(p0, pauli::x());
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 1) = expected(1, 0) = 1;
    EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), kTol);
}

TEST(qsim, kron_is_associative) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    auto random_matrix = [&](int n) {
        ComplexMatrix m(n, n);
        for (int r = 0; r < n; r++) {
            for (int c = 0; c < n; c++) {
                m(r, c) = Complex(g(rng), g(rng));
            }
        }
        return m;
    };
    ComplexMatrix a = random_matrix(2), b = random_matrix(2), c = random_matrix(4);
    EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(qsim, ry_quarter_turn_gives_half_coherence) {
    auto rho = apply_unitary(DensityMatrix::zero_state(1), ry(M_PI / 2), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(rho(0, 1).real(), 0.5, kTol);
    EXPECT_NEAR(rho(0, 1).imag(), 0.0, kTol);
    EXPECT_NEAR(rho(0, 0).real(), 0.5, kTol);
}

TEST(qsim, bell_state_reduces_to_maximally_mixed) {
    auto rho = DensityMatrix::zero_state(2);
    rho = apply_unitary(rho, hadamard(), std::array<std::size_t, 1>{0});
    rho = apply_unitary(rho, cnot(), std::array<std::size_t, 2>{0, 1});
    for (std::size_t keep : {0, 1}) {
        auto reduced = partial_trace(rho, std::array<std::size_t, 1>{keep});
        EXPECT_LT((reduced.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), kTol);
    }
    EXPECT_NEAR(rho.purity(), 1.0, kTol);
}

TEST(qsim, expectation_of_y_on_right_circular_state) {
    ComplexVector r(2);
    r << 1, Complex(0, -1);
    auto rho = DensityMatrix::from_pure(r / std::sqrt(2.0));
    EXPECT_NEAR(expectation(rho, pauli::y()), -1.0, kTol);
    EXPECT_NEAR(expectation(rho, pauli::z()), 0.0, kTol);
}

TEST(qsim, embed_operator_matches_explicit_kron) {
    ComplexMatrix embedded = embed_operator(pauli::x(), std::array<std::size_t, 1>{1}, 3);
    ComplexMatrix expected = kron(pauli::identity(), kron(pauli::x(), pauli::identity()));
    EXPECT_LT((embedded - expected).cwiseAbs().maxCoeff(), kTol);

    // CNOT with control 2 and target 0 on three qubits, built from projectors.
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    ComplexMatrix reversed = kron(pauli::identity(), kron(pauli::identity(), p0)) +
                             kron(pauli::x(), kron(pauli::identity(), p1));
    EXPECT_LT((embed_operator(cnot(), std::array<std::size_t, 2>{2, 0}, 3) - reversed).cwiseAbs().maxCoeff(), kTol);
}

TEST(qsim, apply_unitary_agrees_with_full_matrix_product) {
    std::mt19937_64 rng(11);
    auto rho = DensityMatrix::from_pure(random_pure(rng, 8));
    std::array<std::size_t, 2> targets{2, 0};
    auto out = apply_unitary(rho, cnot(), targets);
    ComplexMatrix u = embed_operator(cnot(), targets, 3);
    ComplexMatrix expected = u * rho.matrix() * u.adjoint();
    EXPECT_LT((out.matrix() - expected).cwiseAbs().maxCoeff(), kTol);
}

TEST(qsim, purity_is_invariant_under_unitaries) {
    std::mt19937_64 rng(3);
    ComplexMatrix mix = 0.3 * DensityMatrix::from_pure(random_pure(rng, 4)).matrix() +
                        0.7 * DensityMatrix::from_pure(random_pure(rng, 4)).matrix();
    auto rho = DensityMatrix::from_matrix(mix);
    double before = rho.purity();
    for (int k = 0; k < 20; k++) {
        rho = apply_unitary(rho, ry(0.37 * k), std::array<std::size_t, 1>{static_cast<std::size_t>(k % 2)});
        rho = apply_unitary(rho, cnot(), std::array<std::size_t, 2>{0, 1});
    }
    EXPECT_NEAR(rho.purity(), before, 1e-12);
    EXPECT_NO_THROW(rho.check_invariants());
}

TEST(qsim, partial_trace_keeps_requested_order) {
    auto a = DensityMatrix::zero_state(1);
    auto b = apply_unitary(DensityMatrix::zero_state(1), pauli::x(), std::array<std::size_t, 1>{0});
    auto ab = tensor(a, b);
    auto ba = partial_trace(ab, std::array<std::size_t, 2>{1, 0});
    EXPECT_NEAR(ba(2, 2).real(), 1.0, kTol);
    EXPECT_NEAR(ab(1, 1).real(), 1.0, kTol);
}

TEST(qsim, measure_probabilities_msb_first) {
    auto rho = apply_unitary(DensityMatrix::zero_state(3), pauli::x(), std::array<std::size_t, 1>{2});
    auto p = measure_probabilities(rho, std::array<std::size_t, 2>{2, 0});
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(p[2], 1.0, kTol);
    EXPECT_NEAR(p[0] + p[1] + p[3], 0.0, kTol);
}

TEST(qsim, kraus_channel_depolarizes_fully) {
    double q = 0.25;
    std::vector<ComplexMatrix> ops = {
        std::sqrt(q) * pauli::identity(), std::sqrt(q) * pauli::x(), std::sqrt(q) * pauli::y(),
        std::sqrt(q) * pauli::z()};
    KrausChannel full(ops);
    auto out = apply_channel(DensityMatrix::zero_state(1), full, std::array<std::size_t, 1>{0});
    EXPECT_LT((out.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LT(full.completeness_defect(), kTol);
}

TEST(qsim, kraus_then_composes_in_order) {
    KrausChannel flip({pauli::x()});
    KrausChannel dephase({std::sqrt(0.5) * pauli::identity(), std::sqrt(0.5) * pauli::z()});
    auto rho = apply_unitary(DensityMatrix::zero_state(1), ry(M_PI / 3), std::array<std::size_t, 1>{0});
    auto seq = apply_channel(apply_channel(rho, flip, std::array<std::size_t, 1>{0}), dephase, std::array<std::size_t, 1>{0});
    auto composed = apply_channel(rho, flip.then(dephase), std::array<std::size_t, 1>{0});
    EXPECT_LT((seq.matrix() - composed.matrix()).cwiseAbs().maxCoeff(), kTol);
    EXPECT_TRUE(KrausChannel::identity(2).is_identity());
    EXPECT_FALSE(flip.is_identity());
}

TEST(qsim, rejects_invalid_inputs) {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix::from_matrix(bad), std::invalid_argument);  // trace 2
    ComplexMatrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(negative), std::invalid_argument);
    EXPECT_THROW(KrausChannel({0.5 * pauli::x()}), std::invalid_argument);
    auto rho = DensityMatrix::zero_state(2);
    EXPECT_THROW(apply_unitary(rho, 2.0 * pauli::x(), std::array<std::size_t, 1>{0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, pauli::x(), std::array<std::size_t, 1>{2}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(rho, cnot(), std::array<std::size_t, 2>{1, 1}), std::invalid_argument);
    ComplexMatrix non_hermitian = ComplexMatrix::Zero(4, 4);
    non_hermitian(0, 1) = 1;
    EXPECT_THROW(expectation(rho, non_hermitian), std::invalid_argument);
}

TEST(qsim, maximally_mixed_has_minimal_purity) {
    auto rho = DensityMatrix::maximally_mixed(3);
    EXPECT_NEAR(rho.purity(), 1.0 / 8, kTol);
    EXPECT_NEAR(rho.trace(), 1.0, kTol);
    EXPECT_NEAR(rho.min_eigenvalue(), 1.0 / 8, 1e-12);
}
