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

#include "qtlight/noise.h"

#include <cmath>

#include "qtlight/error.h"

namespace qtl {

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::BitFlip:
            return "bitflip";
        case NoiseKind::PhaseFlip:
            return "phaseflip";
        case NoiseKind::BitPhaseFlip:
            return "bitphaseflip";
        case NoiseKind::Depolarizing:
            return "depolarizing";
        case NoiseKind::AmplitudeDamping:
            return "amplitude_damping";
        case NoiseKind::PhaseDamping:
            return "phase_damping";
    }
    throw invalid_argument("unknown noise kind");
}

NoiseKind parse_noise_kind(std::string_view name) {
    for (NoiseKind k : kAllNoiseKinds) {
        std::string canonical = noise_kind_name(k);
        if (name == canonical) {
            return k;
        }
        std::string dashed = canonical;
        for (auto &ch : dashed) {
            if (ch == '_') {
                ch = '-';
            }
        }
        if (name == dashed) {
            return k;
        }
    }
    throw invalid_argument("unknown noise channel '" + std::string(name) + "'");
}

NoiseChannel::NoiseChannel(NoiseKind kind, double param) : kind_(kind), param_(param) {
    if (!(param >= 0.0 && param <= 1.0)) {
        throw invalid_argument(noise_kind_name(kind) + " parameter must be in [0, 1], got " + std::to_string(param));
    }
}

std::vector<Matrix2> kraus_set(NoiseKind kind, double p) {
    NoiseChannel checked(kind, p);
    const Complex i(0, 1);
    const double keep = std::sqrt(1 - p);
    switch (kind) {
        case NoiseKind::BitFlip:
            return {Matrix2{keep, 0, 0, keep}, Matrix2{0, std::sqrt(p), std::sqrt(p), 0}};
        case NoiseKind::PhaseFlip:
            return {Matrix2{keep, 0, 0, keep}, Matrix2{std::sqrt(p), 0, 0, -std::sqrt(p)}};
        case NoiseKind::BitPhaseFlip:
            return {Matrix2{keep, 0, 0, keep}, Matrix2{0, -i * std::sqrt(p), i * std::sqrt(p), 0}};
        case NoiseKind::Depolarizing: {
            double s = std::sqrt(p / 3);
            return {
                Matrix2{keep, 0, 0, keep},
                Matrix2{0, s, s, 0},
                Matrix2{0, -i * s, i * s, 0},
                Matrix2{s, 0, 0, -s},
            };
        }
        case NoiseKind::AmplitudeDamping:
            return {Matrix2{1, 0, 0, keep}, Matrix2{0, std::sqrt(p), 0, 0}};
        case NoiseKind::PhaseDamping:
            return {Matrix2{1, 0, 0, keep}, Matrix2{0, 0, 0, std::sqrt(p)}};
    }
    throw invalid_argument("unknown noise kind");
}

void apply_channel_inplace(MixedState &rho, const std::vector<Matrix2> &kraus, size_t qubit) {
    const size_t n = rho.num_qubits();
    if (qubit >= n) {
        throw invalid_argument("channel qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n) +
                               " qubits");
    }
    auto data = rho.mutable_data();
    std::vector<Complex> original(data.begin(), data.end());
    std::vector<Complex> term(original.size());
    std::fill(data.begin(), data.end(), Complex(0));
    for (const auto &k : kraus) {
        Matrix2 kc{std::conj(k[0]), std::conj(k[1]), std::conj(k[2]), std::conj(k[3])};
        std::copy(original.begin(), original.end(), term.begin());
        kernels::apply_block(term, qubit + n, 0, 0, k);
        kernels::apply_block(term, qubit, 0, 0, kc);
        for (size_t j = 0; j < term.size(); j++) {
            data[j] += term[j];
        }
    }
}

MixedState apply_channel(MixedState rho, const NoiseChannel &channel, size_t qubit) {
    apply_channel_inplace(rho, kraus_set(channel), qubit);
    return rho;
}

}  // namespace qtl
