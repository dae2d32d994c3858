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

#include "qtlight/simulator.h"

#include <string>

#include "qtlight/error.h"

namespace qtl {

namespace {

void check_qubit(size_t qubit, size_t num_qubits) {
    if (qubit >= num_qubits) {
        throw invalid_argument("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits) +
                               " qubits");
    }
}

}  // namespace

void apply_gate_inplace(PureState &state, const Gate &gate) {
    gate.validate(state.num_qubits());
    auto [mask, value] = kernels::control_pattern(gate);
    kernels::apply_block(state.mutable_amplitudes(), gate.target, mask, value, gate_matrix(gate));
}

PureState apply_gate(PureState state, const Gate &gate) {
    apply_gate_inplace(state, gate);
    return state;
}

PureState run_circuit(const Circuit &circuit) {
    return run_circuit(circuit, PureState::zero(circuit.num_qubits()));
}

PureState run_circuit(const Circuit &circuit, PureState initial) {
    if (initial.num_qubits() != circuit.num_qubits()) {
        throw invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) + " qubits but state has " +
                               std::to_string(initial.num_qubits()));
    }
    for (const auto &gate : circuit.gates()) {
        auto [mask, value] = kernels::control_pattern(gate);
        kernels::apply_block(initial.mutable_amplitudes(), gate.target, mask, value, gate_matrix(gate));
    }
    return initial;
}

double prob_all_zero(const PureState &state) {
    return std::norm(state[0]);
}

double expect_z(const PureState &state, size_t qubit) {
    check_qubit(qubit, state.num_qubits());
    const uint64_t bit = uint64_t{1} << qubit;
    double total = 0;
    for (uint64_t b = 0; b < state.dim(); b++) {
        double p = std::norm(state[b]);
        total += (b & bit) ? -p : p;
    }
    return total;
}

double expect_z(const MixedState &state, size_t qubit) {
    check_qubit(qubit, state.num_qubits());
    const uint64_t bit = uint64_t{1} << qubit;
    double total = 0;
    for (uint64_t b = 0; b < state.dim(); b++) {
        double p = state.at(b, b).real();
        total += (b & bit) ? -p : p;
    }
    return total;
}

void apply_gate_inplace(MixedState &rho, const Gate &gate) {
    const size_t n = rho.num_qubits();
    gate.validate(n);
    Matrix2 m = gate_matrix(gate);
    Matrix2 mc{std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
    // Row index lives in the high n bits: G rho.
    auto [row_mask, row_value] = kernels::control_pattern(gate, n);
    kernels::apply_block(rho.mutable_data(), gate.target + n, row_mask, row_value, m);
    // Column index lives in the low n bits: rho G^dagger acts as conj(G) on each row.
    auto [col_mask, col_value] = kernels::control_pattern(gate, 0);
    kernels::apply_block(rho.mutable_data(), gate.target, col_mask, col_value, mc);
}

MixedState run_noisy(const Circuit &circuit, const NoiseChannel &channel) {
    MixedState rho = MixedState::zero(circuit.num_qubits());
    const auto kraus = kraus_set(channel);
    for (const auto &gate : circuit.gates()) {
        apply_gate_inplace(rho, gate);
        apply_channel_inplace(rho, kraus, gate.target);
        for (const auto &c : gate.controls) {
            apply_channel_inplace(rho, kraus, c.qubit);
        }
    }
    return rho;
}

}  // namespace qtl
