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

#ifndef QTLIGHT_NOISE_H
#define QTLIGHT_NOISE_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qtlight/circuit.h"
#include "qtlight/state.h"

namespace qtl {

enum class NoiseKind { BitFlip, PhaseFlip, BitPhaseFlip, Depolarizing, AmplitudeDamping, PhaseDamping };

inline constexpr std::array<NoiseKind, 6> kAllNoiseKinds = {
    NoiseKind::BitFlip,      NoiseKind::PhaseFlip,        NoiseKind::BitPhaseFlip,
    NoiseKind::Depolarizing, NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping,
};

/// Lowercase CLI name: bitflip, phaseflip, bitphaseflip, depolarizing,
/// amplitude_damping, phase_damping.
std::string noise_kind_name(NoiseKind kind);
/// Inverse of noise_kind_name. Also accepts "amplitude-damping"/"phase-damping".
NoiseKind parse_noise_kind(std::string_view name);

/// A single-qubit channel with one strength parameter in [0, 1].
class NoiseChannel {
   public:
    NoiseChannel(NoiseKind kind, double param);

    /// The identity channel (depolarizing with p = 0).
    static NoiseChannel none() {
        return NoiseChannel(NoiseKind::Depolarizing, 0.0);
    }

    NoiseKind kind() const noexcept {
        return kind_;
    }
    double param() const noexcept {
        return param_;
    }

   private:
    NoiseKind kind_;
    double param_;
};

/// Kraus operators of the channel. Sum of K^dagger K is the identity.
///
///   bitflip            sqrt(1-p) I, sqrt(p) X
///   phaseflip          sqrt(1-p) I, sqrt(p) Z
///   bitphaseflip       sqrt(1-p) I, sqrt(p) Y
///   depolarizing       sqrt(1-p) I, sqrt(p/3) {X, Y, Z}
///   amplitude_damping  [[1,0],[0,sqrt(1-p)]], [[0,sqrt(p)],[0,0]]
///   phase_damping      [[1,0],[0,sqrt(1-p)]], [[0,0],[0,sqrt(p)]]
std::vector<Matrix2> kraus_set(NoiseKind kind, double param);
inline std::vector<Matrix2> kraus_set(const NoiseChannel &channel) {
    return kraus_set(channel.kind(), channel.param());
}

/// rho -> sum_i K_i rho K_i^dagger with each K_i acting on one qubit.
MixedState apply_channel(MixedState rho, const NoiseChannel &channel, size_t qubit);
/// In-place variant used by the noisy simulator.
void apply_channel_inplace(MixedState &rho, const std::vector<Matrix2> &kraus, size_t qubit);

}  // namespace qtl

#endif
