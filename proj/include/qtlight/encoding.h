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

#ifndef QTLIGHT_ENCODING_H
#define QTLIGHT_ENCODING_H

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "qtlight/circuit.h"
#include "qtlight/image.h"
#include "qtlight/state.h"

namespace qtl {

enum class EncodingMethod { Angle, Frqi, Neqr };

/// "angle", "frqi", "neqr".
std::string encoding_name(EncodingMethod method);
EncodingMethod parse_encoding(std::string_view name);

/// An encoding method applied to side x side images (side in {2, 4}).
struct EncodingSpec {
    EncodingMethod method;
    size_t side;

    /// Throws unless side is 2 or 4.
    EncodingSpec(EncodingMethod method, size_t side);

    /// angle: side^2; frqi: 2 log2(side) + 1; neqr: 2 log2(side) + 8.
    size_t num_qubits() const;
    /// Number of position qubits, 2 log2(side).
    size_t position_qubits() const;
};

enum class AngleScheme {
    FullPi,  // pixel * pi / 255, range [0, pi]
    HalfPi,  // pixel * pi / 510, range [0, pi/2]
};

/// Accepts real-valued pixels so centroid images can be encoded without rounding.
double pixel_to_angle(double pixel, AngleScheme scheme);

/// One RX(pixel * pi / 255) per pixel; pixel k (row-major) drives qubit k.
Circuit build_angle_encoding(const GrayImage &image);
Circuit build_angle_encoding(std::span<const double> pixels);

/// Hadamards on the 2n position qubits, then for each pixel i an MCU3(2 theta_i, 0, 0)
/// on the color qubit 2n, controlled on the bit pattern of i. Zero bits are
/// realized by X-conjugating the control qubit. The result is
///   (1/2^n) sum_i (cos theta_i |0> + sin theta_i |1>) |i>,  theta_i = pixel_i * pi / 510.
Circuit build_frqi(const GrayImage &image);
Circuit build_frqi(std::span<const double> pixels);

/// Hadamards on the 2n position qubits, then for each pixel i and each set bit j
/// of its intensity a multi-controlled X on intensity qubit 2n + j, controlled on
/// the bit pattern of i (zero bits X-conjugated). The result is
///   (1/2^n) sum_i |f_i> |i>.
Circuit build_neqr(const GrayImage &image);

/// Dispatches on the method. NEQR rounds real pixels half-up first.
Circuit build_encoding(EncodingMethod method, std::span<const double> pixels);

/// Inverts build_frqi: theta_i = atan2(|a_{1,i}|, |a_{0,i}|), pixel = round(theta_i * 510 / pi).
GrayImage decode_frqi(const PureState &state, size_t side);
/// Inverts build_neqr: for each position the unique intensity f whose amplitude
/// exceeds 1/2^(n+1) in magnitude.
GrayImage decode_neqr(const PureState &state, size_t side);

}  // namespace qtl

#endif
