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

#ifndef QTLIGHT_STATE_H
#define QTLIGHT_STATE_H

#include <cstddef>
#include <span>
#include <vector>

#include "qtlight/circuit.h"

namespace qtl {

/// Tolerance on |norm^2 - 1| accepted when a state is constructed from raw amplitudes.
constexpr double kNormTolerance = 1e-10;

/// State vector over n qubits, little-endian: qubit q is bit q of the basis index.
class PureState {
   public:
    /// |0...0>.
    static PureState zero(size_t num_qubits);
    /// Throws unless the length is a power of two and the vector is normalized.
    static PureState from_amplitudes(std::vector<Complex> amplitudes);

    size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    std::span<Complex> mutable_amplitudes() noexcept {
        return amplitudes_;
    }
    const Complex &operator[](size_t basis) const {
        return amplitudes_[basis];
    }
    double norm_squared() const;

   private:
    PureState(size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    }

    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Density matrix over n qubits, stored row-major as a 2^n x 2^n block.
///
/// Element (r, c) sits at flat index r * 2^n + c, so the flat index is a
/// 2n-bit register whose low n bits are the column and high n bits the row.
class MixedState {
   public:
    static MixedState zero(size_t num_qubits);
    static MixedState from_pure(const PureState &state);
    /// Throws on a wrong size. Physical validity is checked separately with validate().
    static MixedState from_matrix(size_t num_qubits, std::vector<Complex> rho);

    size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    size_t dim() const noexcept {
        return size_t{1} << num_qubits_;
    }
    const Complex &at(size_t row, size_t col) const {
        return rho_[row * dim() + col];
    }
    Complex &at(size_t row, size_t col) {
        return rho_[row * dim() + col];
    }
    std::span<const Complex> data() const noexcept {
        return rho_;
    }
    std::span<Complex> mutable_data() noexcept {
        return rho_;
    }

    Complex trace() const;
    /// Largest |rho - rho^dagger| element.
    double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;
    /// Throws a numeric error unless trace, Hermiticity and positivity hold.
    void validate(double tol = 1e-10, double eig_tol = 1e-9) const;

   private:
    MixedState(size_t num_qubits, std::vector<Complex> rho) : num_qubits_(num_qubits), rho_(std::move(rho)) {
    }

    size_t num_qubits_;
    std::vector<Complex> rho_;
};

namespace kernels {

/// Applies a 2x2 block to bit target_bit of a flat register, on indices
/// whose control bits equal ctrl_value under ctrl_mask.
void apply_block(std::span<Complex> data, size_t target_bit, uint64_t ctrl_mask, uint64_t ctrl_value,
                 const Matrix2 &m);

/// Control mask/value pair of a gate, with every qubit index offset by shift.
std::pair<uint64_t, uint64_t> control_pattern(const Gate &gate, size_t shift = 0);

}  // namespace kernels

}  // namespace qtl

#endif
