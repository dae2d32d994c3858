// Copyright 2026 The qtlight Authors
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

#ifndef QTLIGHT_SIMULATOR_H
#define QTLIGHT_SIMULATOR_H

#include <cstddef>
#include <optional>

#include "qtlight/circuit.h"
#include "qtlight/noise.h"
#include "qtlight/state.h"

namespace qtl {

/// Applies the gate's block to its target on every basis pair whose control
/// qubits all match their polarity.
PureState apply_gate(PureState state, const Gate &gate);
void apply_gate_inplace(PureState &state, const Gate &gate);

/// Runs the gates in order starting from |0...0> (or the given state).
PureState run_circuit(const Circuit &circuit);
PureState run_circuit(const Circuit &circuit, PureState initial);

/// |<0...0|psi>|^2.
double prob_all_zero(const PureState &state);

/// <Z_q> = sum over basis states of (+1 if bit q is 0 else -1) * p(b).
double expect_z(const PureState &state, size_t qubit);
double expect_z(const MixedState &state, size_t qubit);

/// rho -> G rho G^dagger.
void apply_gate_inplace(MixedState &rho, const Gate &gate);

/// Density-matrix run from |0...0><0...0|. After every gate the channel is
/// applied once to each qubit the gate touches (target and controls).
MixedState run_noisy(const Circuit &circuit, const NoiseChannel &channel);

}  // namespace qtl

#endif
