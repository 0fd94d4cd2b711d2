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

#ifndef EDRSIM_QSIM_H
#define EDRSIM_QSIM_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace edrsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance for equalities (Hermiticity, trace, unitarity, Kraus completeness).
inline constexpr double kEqualityTolerance = 1e-12;
/// Lowest admissible eigenvalue of a density matrix.
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr std::size_t kMaxQubits = 10;

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Tensor product with `a`'s indices major.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &m, double tolerance = kEqualityTolerance);
bool is_unitary(const ComplexMatrix &m, double tolerance = kEqualityTolerance);

/// Embeds a k-qubit operator acting on `targets` into the full n-qubit space.
/// Qubit 0 is the most significant bit of a basis index; `targets[0]` is the
/// most significant bit of the operator's own index.
ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const std::size_t> targets, std::size_t num_qubits);

class KrausChannel;

/// Exact mixed state of an n-qubit register.
///
/// Every value handed out by this class or by the free functions below
/// satisfies: Hermitian and unit trace within kEqualityTolerance, and
/// positive semidefinite down to -kPsdTolerance. The eigenvalue check is only
/// run on construction from external data, by `check_invariants`, and in
/// debug builds after each operation.
class DensityMatrix {
   public:
    /// The all-zeros computational basis state |0...0><0...0|.
    static DensityMatrix zero_state(std::size_t num_qubits);
    static DensityMatrix from_pure(const ComplexVector &amplitudes);
    /// Validates all invariants, including positivity. Throws std::invalid_argument.
    static DensityMatrix from_matrix(ComplexMatrix matrix);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    double trace() const;
    /// trace(rho^2).
    double purity() const;
    double min_eigenvalue() const;

    /// Throws std::logic_error naming the first broken invariant.
    void check_invariants() const;

   private:
    DensityMatrix(std::size_t num_qubits, ComplexMatrix matrix);
    friend DensityMatrix apply_unitary(const DensityMatrix &, const ComplexMatrix &, std::span<const std::size_t>);
    friend DensityMatrix apply_channel(const DensityMatrix &, const KrausChannel &, std::span<const std::size_t>);
    friend DensityMatrix partial_trace(const DensityMatrix &, std::span<const std::size_t>);
    friend DensityMatrix tensor(const DensityMatrix &, const DensityMatrix &);

    std::size_t num_qubits_;
    ComplexMatrix matrix_;
};

/// Completely positive trace preserving map in Kraus form.
class KrausChannel {
   public:
    /// Throws std::invalid_argument unless the operators are square, of equal
    /// power-of-two dimension, and complete.
    explicit KrausChannel(std::vector<ComplexMatrix> operators);

    static KrausChannel identity(std::size_t num_qubits);

    const std::vector<ComplexMatrix> &operators() const {
        return operators_;
    }
    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(operators_.front().rows());
    }

    /// Channel equal to applying `this` first and `next` second.
    KrausChannel then(const KrausChannel &next) const;

    /// Max-norm distance of sum_k K_k^dag K_k from the identity.
    double completeness_defect() const;

    /// Whether the channel acts as the identity map (up to tolerance).
    bool is_identity(double tolerance = kEqualityTolerance) const;

   private:
    std::vector<ComplexMatrix> operators_;
    std::size_t num_qubits_;
};

/// rho -> U rho U^dag with U acting on `targets`.
DensityMatrix apply_unitary(const DensityMatrix &state, const ComplexMatrix &u, std::span<const std::size_t> targets);

/// rho -> sum_k K_k rho K_k^dag with the channel acting on `targets`.
DensityMatrix apply_channel(const DensityMatrix &state, const KrausChannel &channel, std::span<const std::size_t> targets);

/// Reduced state on `keep`, ordered as listed.
DensityMatrix partial_trace(const DensityMatrix &state, std::span<const std::size_t> keep);

/// Product state a (x) b; a's qubits come first.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// trace(rho * obs) for a Hermitian observable on the full register.
double expectation(const DensityMatrix &state, const ComplexMatrix &observable);

/// Computational basis probabilities over `targets` without collapsing the
/// state. Entry b is the probability of bitstring b, with `targets[0]` the
/// most significant bit.
std::vector<double> measure_probabilities(const DensityMatrix &state, std::span<const std::size_t> targets);

}  // namespace edrsim

#endif
