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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace edrsim {

namespace {

std::size_t log2_exact(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        n++;
    }
    if ((std::size_t{1} << n) != dim) {
        throw std::invalid_argument("Dimension " + std::to_string(dim) + " is not a power of two.");
    }
    return n;
}

void check_targets(std::span<const std::size_t> targets, std::size_t num_qubits, const char *what) {
    if (targets.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty qubit list.");
    }
    for (std::size_t i = 0; i < targets.size(); i++) {
        if (targets[i] >= num_qubits) {
            throw std::invalid_argument(
                std::string(what) + ": qubit " + std::to_string(targets[i]) + " out of range for " +
                std::to_string(num_qubits) + " qubits.");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument(
                    std::string(what) + ": duplicate qubit " + std::to_string(targets[i]) + ".");
            }
        }
    }
}

/// Bit position of qubit q inside an n-qubit basis index.
inline std::size_t bit_of(std::size_t q, std::size_t n) {
    return std::size_t{1} << (n - 1 - q);
}

/// Full-register offsets for each local basis index of the target qubits.
std::vector<std::size_t> scatter_table(std::span<const std::size_t> targets, std::size_t n) {
    std::size_t k = targets.size();
    std::vector<std::size_t> table(std::size_t{1} << k, 0);
    for (std::size_t local = 0; local < table.size(); local++) {
        std::size_t full = 0;
        for (std::size_t t = 0; t < k; t++) {
            if (local & (std::size_t{1} << (k - 1 - t))) {
                full |= bit_of(targets[t], n);
            }
        }
        table[local] = full;
    }
    return table;
}

/// Returns op (on targets) times m, acting on the row index of m.
ComplexMatrix left_apply(const ComplexMatrix &op, const ComplexMatrix &m, std::span<const std::size_t> targets, std::size_t n) {
    std::vector<std::size_t> offsets = scatter_table(targets, n);
    std::size_t target_mask = 0;
    for (auto q : targets) {
        target_mask |= bit_of(q, n);
    }
    std::size_t local_dim = offsets.size();
    ComplexMatrix out(m.rows(), m.cols());
    std::vector<Complex> gathered(local_dim);
    for (std::size_t base = 0; base < static_cast<std::size_t>(m.rows()); base++) {
        if (base & target_mask) {
            continue;
        }
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            for (std::size_t j = 0; j < local_dim; j++) {
                gathered[j] = m(static_cast<Eigen::Index>(base | offsets[j]), c);
            }
            for (std::size_t r = 0; r < local_dim; r++) {
                Complex acc = 0;
                for (std::size_t j = 0; j < local_dim; j++) {
                    acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) * gathered[j];
                }
                out(static_cast<Eigen::Index>(base | offsets[r]), c) = acc;
            }
        }
    }
    return out;
}

void check_square_power_of_two(const ComplexMatrix &m, std::size_t expected_qubits, const char *what) {
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != (std::size_t{1} << expected_qubits)) {
        throw std::invalid_argument(
            std::string(what) + ": operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            " but acts on " + std::to_string(expected_qubits) + " qubit(s).");
    }
}

inline void debug_validate([[maybe_unused]] const DensityMatrix &rho) {
#ifndef NDEBUG
    rho.check_invariants();
#endif
}

}  // namespace

namespace pauli {
ComplexMatrix identity() {
    return ComplexMatrix::Identity(2, 2);
}
ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_hermitian(const ComplexMatrix &m, double tolerance) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const ComplexMatrix &m, double tolerance) {
    if (m.rows() != m.cols()) {
        return false;
    }
    ComplexMatrix defect = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const std::size_t> targets, std::size_t num_qubits) {
    check_targets(targets, num_qubits, "embed_operator");
    check_square_power_of_two(op, targets.size(), "embed_operator");
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return left_apply(op, ComplexMatrix::Identity(dim, dim), targets, num_qubits);
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
}

DensityMatrix DensityMatrix::zero_state(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Qubit count must be in 1.." + std::to_string(kMaxQubits) + ".");
    }
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(0, 0) = 1;
    return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Qubit count must be in 1.." + std::to_string(kMaxQubits) + ".");
    }
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return DensityMatrix(num_qubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector &amplitudes) {
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kEqualityTolerance) {
        throw std::invalid_argument("State vector is not normalized.");
    }
    return from_matrix(amplitudes * amplitudes.adjoint());
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("Density matrix must be square.");
    }
    std::size_t n = log2_exact(static_cast<std::size_t>(matrix.rows()));
    if (n == 0 || n > kMaxQubits) {
        throw std::invalid_argument("Qubit count must be in 1.." + std::to_string(kMaxQubits) + ".");
    }
    DensityMatrix rho(n, std::move(matrix));
    try {
        rho.check_invariants();
    } catch (const std::logic_error &e) {
        throw std::invalid_argument(e.what());
    }
    return rho;
}

double DensityMatrix::trace() const {
    return matrix_.trace().real();
}

double DensityMatrix::purity() const {
    // trace(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
    return matrix_.cwiseAbs2().sum();
}

double DensityMatrix::min_eigenvalue() const {
    ComplexMatrix hermitian_part = (matrix_ + matrix_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_invariants() const {
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kEqualityTolerance) {
        throw std::logic_error("Density matrix is not Hermitian (defect " + std::to_string(asym) + ").");
    }
    Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1, 0)) > kEqualityTolerance) {
        throw std::logic_error("Density matrix trace is " + std::to_string(tr.real()) + ", expected 1.");
    }
    double lowest = min_eigenvalue();
    if (lowest < -kPsdTolerance) {
        throw std::logic_error("Density matrix has negative eigenvalue " + std::to_string(lowest) + ".");
    }
}

// ---------------------------------------------------------------------------
// KrausChannel
// ---------------------------------------------------------------------------

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators) : operators_(std::move(operators)), num_qubits_(0) {
    if (operators_.empty()) {
        throw std::invalid_argument("Kraus channel needs at least one operator.");
    }
    const auto dim = operators_.front().rows();
    for (const auto &k : operators_) {
        if (k.rows() != dim || k.cols() != dim) {
            throw std::invalid_argument("Kraus operators must be square and share one dimension.");
        }
    }
    num_qubits_ = log2_exact(static_cast<std::size_t>(dim));
    if (num_qubits_ == 0) {
        throw std::invalid_argument("Kraus operators must act on at least one qubit.");
    }
    double defect = completeness_defect();
    if (defect > kEqualityTolerance) {
        throw std::invalid_argument("Kraus set is not complete (defect " + std::to_string(defect) + ").");
    }
}

KrausChannel KrausChannel::identity(std::size_t num_qubits) {
    auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

double KrausChannel::completeness_defect() const {
    auto dim = operators_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto &k : operators_) {
        sum += k.adjoint() * k;
    }
    return (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::then(const KrausChannel &next) const {
    if (next.dim() != dim()) {
        throw std::invalid_argument("Cannot compose channels of different dimension.");
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(operators_.size() * next.operators_.size());
    for (const auto &b : next.operators_) {
        for (const auto &a : operators_) {
            ComplexMatrix ba = b * a;
            if (ba.cwiseAbs().maxCoeff() > 0) {
                ops.push_back(std::move(ba));
            }
        }
    }
    return KrausChannel(std::move(ops));
}

bool KrausChannel::is_identity(double tolerance) const {
    // A channel is the identity map iff every Kraus operator is proportional to I.
    auto dim = operators_.front().rows();
    for (const auto &k : operators_) {
        Complex scale = k.trace() / static_cast<double>(dim);
        if ((k - scale * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tolerance) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

DensityMatrix apply_unitary(const DensityMatrix &state, const ComplexMatrix &u, std::span<const std::size_t> targets) {
    check_targets(targets, state.num_qubits(), "apply_unitary");
    check_square_power_of_two(u, targets.size(), "apply_unitary");
    if (!is_unitary(u)) {
        throw std::invalid_argument("apply_unitary: operator is not unitary.");
    }
    std::size_t n = state.num_qubits();
    // U rho U^dag = U (U rho)^dag because rho is Hermitian.
    ComplexMatrix half = left_apply(u, state.matrix_, targets, n);
    DensityMatrix out(n, left_apply(u, half.adjoint(), targets, n));
    debug_validate(out);
    return out;
}

DensityMatrix apply_channel(const DensityMatrix &state, const KrausChannel &channel, std::span<const std::size_t> targets) {
    check_targets(targets, state.num_qubits(), "apply_channel");
    if (channel.num_qubits() != targets.size()) {
        throw std::invalid_argument(
            "apply_channel: channel acts on " + std::to_string(channel.num_qubits()) + " qubit(s) but " +
            std::to_string(targets.size()) + " target(s) given.");
    }
    if (channel.completeness_defect() > kEqualityTolerance) {
        throw std::invalid_argument("apply_channel: incomplete Kraus set.");
    }
    std::size_t n = state.num_qubits();
    ComplexMatrix acc = ComplexMatrix::Zero(state.matrix_.rows(), state.matrix_.cols());
    for (const auto &k : channel.operators()) {
        // K rho K^dag = K (K rho)^dag.
        ComplexMatrix half = left_apply(k, state.matrix_, targets, n);
        acc += left_apply(k, half.adjoint(), targets, n);
    }
    DensityMatrix out(n, std::move(acc));
    debug_validate(out);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &state, std::span<const std::size_t> keep) {
    std::size_t n = state.num_qubits();
    check_targets(keep, n, "partial_trace");
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; q++) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    std::vector<std::size_t> keep_offsets = scatter_table(keep, n);
    std::vector<std::size_t> traced_offsets{0};
    if (!traced.empty()) {
        traced_offsets = scatter_table(traced, n);
    }
    auto kd = static_cast<Eigen::Index>(keep_offsets.size());
    ComplexMatrix reduced = ComplexMatrix::Zero(kd, kd);
    for (Eigen::Index r = 0; r < kd; r++) {
        for (Eigen::Index c = 0; c < kd; c++) {
            Complex acc = 0;
            for (auto env : traced_offsets) {
                acc += state.matrix_(
                    static_cast<Eigen::Index>(keep_offsets[static_cast<std::size_t>(r)] | env),
                    static_cast<Eigen::Index>(keep_offsets[static_cast<std::size_t>(c)] | env));
            }
            reduced(r, c) = acc;
        }
    }
    DensityMatrix out(keep.size(), std::move(reduced));
    debug_validate(out);
    return out;
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::size_t n = a.num_qubits() + b.num_qubits();
    if (n > kMaxQubits) {
        throw std::invalid_argument("tensor: result exceeds " + std::to_string(kMaxQubits) + " qubits.");
    }
    return DensityMatrix(n, kron(a.matrix_, b.matrix_));
}

double expectation(const DensityMatrix &state, const ComplexMatrix &observable) {
    if (observable.rows() != observable.cols() || static_cast<std::size_t>(observable.rows()) != state.dim()) {
        throw std::invalid_argument("expectation: observable dimension does not match the state.");
    }
    if (!is_hermitian(observable)) {
        throw std::invalid_argument("expectation: observable is not Hermitian.");
    }
    // trace(rho * obs) = sum_ij rho_ij obs_ji.
    Complex value = (state.matrix().array() * observable.transpose().array()).sum();
    if (std::abs(value.imag()) >= 1e-10) {
        throw std::logic_error("expectation: imaginary residue " + std::to_string(value.imag()) + ".");
    }
    return value.real();
}

std::vector<double> measure_probabilities(const DensityMatrix &state, std::span<const std::size_t> targets) {
    std::size_t n = state.num_qubits();
    check_targets(targets, n, "measure_probabilities");
    std::size_t k = targets.size();
    std::vector<double> probs(std::size_t{1} << k, 0.0);
    for (std::size_t i = 0; i < state.dim(); i++) {
        std::size_t local = 0;
        for (std::size_t t = 0; t < k; t++) {
            if (i & bit_of(targets[t], n)) {
                local |= std::size_t{1} << (k - 1 - t);
            }
        }
        probs[local] += state(i, i).real();
    }
    for (auto &p : probs) {
        // Diagonal entries of a PSD matrix are >= 0; strip round-off.
        p = std::max(p, 0.0);
    }
    return probs;
}

}  // namespace edrsim
