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

#ifndef QTLIGHT_CIRCUIT_H
#define QTLIGHT_CIRCUIT_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qtl {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

enum class GateKind { H, X, Y, Z, RX, RY, RZ, U3, CNOT, CZ, CU3, MCU3 };

std::string gate_kind_name(GateKind kind);

struct Control {
    size_t qubit;
    /// true: gate fires when the qubit is |1>. false: anti-control, fires on |0>.
    bool on_one = true;

    bool operator==(const Control &) const = default;
};

/// A single-target gate with an arbitrary set of (possibly negated) controls.
///
/// Every kind acts on exactly one target through a 2x2 block. CNOT, CZ and CU3
/// are the X, Z and U3 blocks with exactly one control; MCU3 is the U3 block
/// with any number of controls. The uncontrolled kinds also accept controls,
/// which is how multi-controlled X gates are expressed.
struct Gate {
    GateKind kind;
    /// (theta, phi, lambda). Rotations use only theta.
    std::array<double, 3> params{0.0, 0.0, 0.0};
    size_t target = 0;
    std::vector<Control> controls;

    bool operator==(const Gate &) const = default;

    /// Throws if qubits collide or fall outside [0, num_qubits), or if the
    /// control count does not fit the kind.
    void validate(size_t num_qubits) const;

    /// Mask over target and control qubits.
    uint64_t touched_mask() const;
};

namespace gates {
Gate h(size_t q);
Gate x(size_t q);
Gate y(size_t q);
Gate z(size_t q);
Gate rx(size_t q, double theta);
Gate ry(size_t q, double theta);
Gate rz(size_t q, double theta);
Gate u3(size_t q, double theta, double phi, double lambda);
Gate cnot(size_t control, size_t target);
Gate cz(size_t control, size_t target);
Gate cu3(size_t control, size_t target, double theta, double phi, double lambda);
Gate mcu3(std::vector<Control> controls, size_t target, double theta, double phi, double lambda);
/// Multi-controlled X.
Gate mcx(std::vector<Control> controls, size_t target);
}  // namespace gates

/// The 2x2 block the gate applies to its target when all controls are satisfied.
///
/// RX/RY/RZ are half-angle rotations exp(-i theta sigma / 2). U3 is
///   [[cos(t/2),          -e^{i l} sin(t/2)],
///    [e^{i p} sin(t/2),   e^{i(p+l)} cos(t/2)]].
Matrix2 gate_matrix(const Gate &gate);

/// The gate whose matrix is the adjoint of this one, with the same controls.
Gate adjoint(const Gate &gate);

class Circuit {
   public:
    explicit Circuit(size_t num_qubits);

    size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    size_t size() const noexcept {
        return gates_.size();
    }

    /// Validates the gate against the circuit width before appending.
    Circuit &append(Gate gate);
    /// Appends all gates of another circuit of the same width.
    Circuit &append(const Circuit &other);

    /// Replaces the first angle of gate gate_index.
    void set_angle(size_t gate_index, double theta);

    /// U^dagger: reversed gate order, each gate replaced by its adjoint.
    Circuit inverse() const;

   private:
    size_t num_qubits_;
    std::vector<Gate> gates_;
};

}  // namespace qtl

#endif
