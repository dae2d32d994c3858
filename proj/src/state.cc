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

#include "qtlight/state.h"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <string>

#include "qtlight/error.h"

namespace qtl {

PureState PureState::zero(size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw invalid_argument("state width must be in [1, 30], got " + std::to_string(num_qubits));
    }
    std::vector<Complex> amps(size_t{1} << num_qubits);
    amps[0] = 1.0;
    return PureState(num_qubits, std::move(amps));
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
    size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw invalid_argument("amplitude count must be a power of two >= 2, got " + std::to_string(n));
    }
    PureState out(static_cast<size_t>(std::countr_zero(n)), std::move(amplitudes));
    double norm = out.norm_squared();
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
        throw numeric_error("state is not normalized: |psi|^2 = " + std::to_string(norm));
    }
    return out;
}

double PureState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

MixedState MixedState::zero(size_t num_qubits) {
    return from_pure(PureState::zero(num_qubits));
}

MixedState MixedState::from_pure(const PureState &state) {
    size_t d = state.dim();
    std::vector<Complex> rho(d * d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            rho[r * d + c] = state[r] * std::conj(state[c]);
        }
    }
    return MixedState(state.num_qubits(), std::move(rho));
}

MixedState MixedState::from_matrix(size_t num_qubits, std::vector<Complex> rho) {
    if (num_qubits == 0 || num_qubits > 14) {
        throw invalid_argument("density matrix width must be in [1, 14], got " + std::to_string(num_qubits));
    }
    size_t d = size_t{1} << num_qubits;
    if (rho.size() != d * d) {
        throw invalid_argument("density matrix for " + std::to_string(num_qubits) + " qubits needs " +
                               std::to_string(d * d) + " entries, got " + std::to_string(rho.size()));
    }
    return MixedState(num_qubits, std::move(rho));
}

Complex MixedState::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < dim(); k++) {
        t += at(k, k);
    }
    return t;
}

double MixedState::hermiticity_error() const {
    double worst = 0;
    for (size_t r = 0; r < dim(); r++) {
        for (size_t c = r; c < dim(); c++) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

double MixedState::min_eigenvalue() const {
    size_t d = dim();
    Eigen::MatrixXcd m(d, d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            m(r, c) = 0.5 * (at(r, c) + std::conj(at(c, r)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void MixedState::validate(double tol, double eig_tol) const {
    Complex t = trace();
    if (std::abs(t - 1.0) > tol) {
        throw numeric_error("density matrix trace is " + std::to_string(t.real()) + "+" + std::to_string(t.imag()) +
                            "i, expected 1");
    }
    double herm = hermiticity_error();
    if (herm > tol) {
        throw numeric_error("density matrix is not Hermitian (max deviation " + std::to_string(herm) + ")");
    }
    double eig = min_eigenvalue();
    if (eig < -eig_tol) {
        throw numeric_error("density matrix has negative eigenvalue " + std::to_string(eig));
    }
}

namespace kernels {

void apply_block(std::span<Complex> data, size_t target_bit, uint64_t ctrl_mask, uint64_t ctrl_value,
                 const Matrix2 &m) {
    const uint64_t tbit = uint64_t{1} << target_bit;
    const uint64_t n = data.size();
    for (uint64_t i = 0; i < n; i++) {
        if ((i & tbit) || (i & ctrl_mask) != ctrl_value) {
            continue;
        }
        Complex a0 = data[i];
        Complex a1 = data[i | tbit];
        data[i] = m[0] * a0 + m[1] * a1;
        data[i | tbit] = m[2] * a0 + m[3] * a1;
    }
}

std::pair<uint64_t, uint64_t> control_pattern(const Gate &gate, size_t shift) {
    uint64_t mask = 0, value = 0;
    for (const auto &c : gate.controls) {
        uint64_t bit = uint64_t{1} << (c.qubit + shift);
        mask |= bit;
        if (c.on_one) {
            value |= bit;
        }
    }
    return {mask, value};
}

}  // namespace kernels

}  // namespace qtl
