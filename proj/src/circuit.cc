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

#include "qtlight/circuit.h"

#include <cmath>

#include "qtlight/error.h"

namespace qtl {

namespace {

constexpr size_t kMaxQubits = 30;

size_t required_controls(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CU3:
            return 1;
        default:
            return 0;
    }
}

Matrix2 u3_matrix(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return {
        Complex(c, 0),
        -std::polar(1.0, lambda) * s,
        std::polar(1.0, phi) * s,
        std::polar(1.0, phi + lambda) * c,
    };
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::U3:
            return "U3";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CU3:
            return "CU3";
        case GateKind::MCU3:
            return "MCU3";
    }
    throw invalid_argument("unknown gate kind " + std::to_string(static_cast<int>(kind)));
}

void Gate::validate(size_t num_qubits) const {
    std::string name = gate_kind_name(kind);
    if (num_qubits > kMaxQubits) {
        throw invalid_argument("circuit width " + std::to_string(num_qubits) + " exceeds " +
                               std::to_string(kMaxQubits) + " qubits");
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw invalid_argument(name + " gate has a non-finite angle");
        }
    }
    size_t need = required_controls(kind);
    if (need != 0 && controls.size() != need) {
        throw invalid_argument(name + " gate needs exactly " + std::to_string(need) + " control(s), got " +
                               std::to_string(controls.size()));
    }
    if (kind == GateKind::MCU3 && controls.empty()) {
        throw invalid_argument("MCU3 gate needs at least one control");
    }
    if (target >= num_qubits) {
        throw invalid_argument(name + " target qubit " + std::to_string(target) + " out of range for " +
                               std::to_string(num_qubits) + " qubits");
    }
    uint64_t seen = uint64_t{1} << target;
    for (const auto &c : controls) {
        if (c.qubit >= num_qubits) {
            throw invalid_argument(name + " control qubit " + std::to_string(c.qubit) + " out of range for " +
                                   std::to_string(num_qubits) + " qubits");
        }
        uint64_t bit = uint64_t{1} << c.qubit;
        if (seen & bit) {
            throw invalid_argument(name + " gate uses qubit " + std::to_string(c.qubit) + " twice");
        }
        seen |= bit;
    }
}

uint64_t Gate::touched_mask() const {
    uint64_t mask = uint64_t{1} << target;
    for (const auto &c : controls) {
        mask |= uint64_t{1} << c.qubit;
    }
    return mask;
}

namespace gates {

Gate h(size_t q) {
    return Gate{GateKind::H, {}, q, {}};
}
Gate x(size_t q) {
    return Gate{GateKind::X, {}, q, {}};
}
Gate y(size_t q) {
    return Gate{GateKind::Y, {}, q, {}};
}
Gate z(size_t q) {
    return Gate{GateKind::Z, {}, q, {}};
}
Gate rx(size_t q, double theta) {
    return Gate{GateKind::RX, {theta, 0, 0}, q, {}};
}
Gate ry(size_t q, double theta) {
    return Gate{GateKind::RY, {theta, 0, 0}, q, {}};
}
Gate rz(size_t q, double theta) {
    return Gate{GateKind::RZ, {theta, 0, 0}, q, {}};
}
Gate u3(size_t q, double theta, double phi, double lambda) {
    return Gate{GateKind::U3, {theta, phi, lambda}, q, {}};
}
Gate cnot(size_t control, size_t target) {
    return Gate{GateKind::CNOT, {}, target, {Control{control}}};
}
Gate cz(size_t control, size_t target) {
    return Gate{GateKind::CZ, {}, target, {Control{control}}};
}
Gate cu3(size_t control, size_t target, double theta, double phi, double lambda) {
    return Gate{GateKind::CU3, {theta, phi, lambda}, target, {Control{control}}};
}
Gate mcu3(std::vector<Control> controls, size_t target, double theta, double phi, double lambda) {
    return Gate{GateKind::MCU3, {theta, phi, lambda}, target, std::move(controls)};
}
Gate mcx(std::vector<Control> controls, size_t target) {
    return Gate{GateKind::X, {}, target, std::move(controls)};
}

}  // namespace gates

Matrix2 gate_matrix(const Gate &gate) {
    const double theta = gate.params[0];
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    switch (gate.kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
        case GateKind::CNOT:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -i, i, 0};
        case GateKind::Z:
        case GateKind::CZ:
            return {1, 0, 0, -1};
        case GateKind::RX: {
            double c = std::cos(theta / 2), s = std::sin(theta / 2);
            return {c, -i * s, -i * s, c};
        }
        case GateKind::RY: {
            double c = std::cos(theta / 2), s = std::sin(theta / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
        case GateKind::U3:
        case GateKind::CU3:
        case GateKind::MCU3:
            return u3_matrix(theta, gate.params[1], gate.params[2]);
    }
    throw invalid_argument("unknown gate kind " + std::to_string(static_cast<int>(gate.kind)));
}

Gate adjoint(const Gate &gate) {
    Gate out = gate;
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            out.params[0] = -gate.params[0];
            break;
        case GateKind::U3:
        case GateKind::CU3:
        case GateKind::MCU3:
            out.params = {-gate.params[0], -gate.params[2], -gate.params[1]};
            break;
        default:
            break;
    }
    return out;
}

Circuit::Circuit(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw invalid_argument("circuit width must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                               std::to_string(num_qubits));
    }
}

Circuit &Circuit::append(Gate gate) {
    gate.validate(num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw invalid_argument("cannot append a " + std::to_string(other.num_qubits_) + "-qubit circuit to a " +
                               std::to_string(num_qubits_) + "-qubit circuit");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

void Circuit::set_angle(size_t gate_index, double theta) {
    if (gate_index >= gates_.size()) {
        throw invalid_argument("gate index " + std::to_string(gate_index) + " out of range for " +
                               std::to_string(gates_.size()) + " gates");
    }
    if (!std::isfinite(theta)) {
        throw invalid_argument("gate angle must be finite");
    }
    gates_[gate_index].params[0] = theta;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(adjoint(*it));
    }
    return out;
}

}  // namespace qtl
