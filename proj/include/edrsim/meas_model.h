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

#ifndef EDRSIM_MEAS_MODEL_H
#define EDRSIM_MEAS_MODEL_H

#include "edrsim/qsim.h"

namespace edrsim {

/// Two-outcome POVM {(I + sZ)/2, (I - sZ)/2} of strength s = cos(theta).
struct PovmPair {
    ComplexMatrix plus;
    ComplexMatrix minus;
    double strength;
};

/// Throws std::invalid_argument for strength outside [0, 1].
PovmPair build_povm(double strength);

/// Indirect measurement of a +-1 valued system observable: a meter prepared
/// in Ry(meter_angle)|0>, coupled by `interaction` (system (x) meter), then
/// read out with `meter_observable`.
struct IndirectMeasurement {
    ComplexMatrix system_observable;
    ComplexMatrix meter_observable;
    ComplexMatrix interaction;
    double meter_angle;

    /// A = Z, M = Z, U = CNOT(system -> meter), meter angle arccos(strength).
    static IndirectMeasurement z_apparatus(double strength);

    /// system (x) Ry(meter_angle)|0><0|Ry^dag.
    DensityMatrix composite_input(const DensityMatrix &system) const;

    /// <[U^dag (I (x) M) U - A (x) I]^2>^(1/2) on composite_input(system).
    double error(const DensityMatrix &system) const;

    /// <[U^dag (B (x) I) U - B (x) I]^2>^(1/2) on composite_input(system).
    double disturbance(const DensityMatrix &system, const ComplexMatrix &b) const;
};

/// Operator-definition error of Z for the apparatus of the given strength,
/// evaluated on the single-qubit state entering the apparatus.
double exact_error(const DensityMatrix &system, double strength);

/// Operator-definition disturbance of X for the apparatus of the given strength.
double exact_disturbance(const DensityMatrix &system, double strength);

/// sqrt(<A^2> - <A>^2). Tiny negative variances from round-off clamp to 0.
double standard_deviation(const DensityMatrix &state, const ComplexMatrix &observable);

/// |<AB - BA>| / 2.
double commutator_bound(const DensityMatrix &state, const ComplexMatrix &a, const ComplexMatrix &b);

/// (|0> - i|1>)/sqrt(2), the -1 eigenstate of Y.
DensityMatrix right_circular_state();

}  // namespace edrsim

#endif
