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

#include "qtlight/encoding.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qtlight/error.h"

namespace qtl {

namespace {

size_t side_of(size_t pixel_count) {
    if (pixel_count == 4) {
        return 2;
    }
    if (pixel_count == 16) {
        return 4;
    }
    throw invalid_argument("encodings support 2x2 and 4x4 images, got " + std::to_string(pixel_count) + " pixels");
}

size_t checked_side(const GrayImage &image) {
    if (image.width() != image.height()) {
        throw invalid_argument("encodings need square images, got " + std::to_string(image.width()) + "x" +
                               std::to_string(image.height()));
    }
    return side_of(image.size());
}

/// Appends X on each position qubit whose bit in index is 0.
void flip_zero_bits(Circuit &circuit, size_t index, size_t position_qubits) {
    for (size_t q = 0; q < position_qubits; q++) {
        if (!((index >> q) & 1)) {
            circuit.append(gates::x(q));
        }
    }
}

std::vector<Control> all_position_controls(size_t position_qubits) {
    std::vector<Control> controls;
    for (size_t q = 0; q < position_qubits; q++) {
        controls.push_back(Control{q, true});
    }
    return controls;
}

void check_state_width(const PureState &state, size_t expected, const char *what) {
    if (state.num_qubits() != expected) {
        throw invalid_argument(std::string(what) + " state for this side needs " + std::to_string(expected) +
                               " qubits, got " + std::to_string(state.num_qubits()));
    }
    if (std::abs(state.norm_squared() - 1.0) > 1e-8) {
        throw invalid_argument(std::string(what) + " state is not normalized");
    }
}

int round_half_up(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

}  // namespace

std::string encoding_name(EncodingMethod method) {
    switch (method) {
        case EncodingMethod::Angle:
            return "angle";
        case EncodingMethod::Frqi:
            return "frqi";
        case EncodingMethod::Neqr:
            return "neqr";
    }
    throw invalid_argument("unknown encoding method");
}

EncodingMethod parse_encoding(std::string_view name) {
    for (auto m : {EncodingMethod::Angle, EncodingMethod::Frqi, EncodingMethod::Neqr}) {
        if (name == encoding_name(m)) {
            return m;
        }
    }
    throw invalid_argument("unknown encoding '" + std::string(name) + "' (expected angle, frqi or neqr)");
}

EncodingSpec::EncodingSpec(EncodingMethod method, size_t side) : method(method), side(side) {
    if (side != 2 && side != 4) {
        throw invalid_argument("image side must be 2 or 4, got " + std::to_string(side));
    }
}

size_t EncodingSpec::position_qubits() const {
    return 2 * static_cast<size_t>(std::countr_zero(side));
}

size_t EncodingSpec::num_qubits() const {
    switch (method) {
        case EncodingMethod::Angle:
            return side * side;
        case EncodingMethod::Frqi:
            return position_qubits() + 1;
        case EncodingMethod::Neqr:
            return position_qubits() + 8;
    }
    throw invalid_argument("unknown encoding method");
}

double pixel_to_angle(double pixel, AngleScheme scheme) {
    if (!(pixel >= 0.0 && pixel <= 255.0)) {
        throw invalid_argument("pixel value " + std::to_string(pixel) + " outside [0, 255]");
    }
    double full = pixel * std::numbers::pi / 255.0;
    return scheme == AngleScheme::FullPi ? full : pixel * std::numbers::pi / (2.0 * 255.0);
}

Circuit build_angle_encoding(std::span<const double> pixels) {
    side_of(pixels.size());
    Circuit circuit(pixels.size());
    for (size_t k = 0; k < pixels.size(); k++) {
        circuit.append(gates::rx(k, pixel_to_angle(pixels[k], AngleScheme::FullPi)));
    }
    return circuit;
}

Circuit build_angle_encoding(const GrayImage &image) {
    checked_side(image);
    auto real = image.to_real();
    return build_angle_encoding(real);
}

Circuit build_frqi(std::span<const double> pixels) {
    EncodingSpec spec(EncodingMethod::Frqi, side_of(pixels.size()));
    const size_t pos = spec.position_qubits();
    const size_t color = pos;
    Circuit circuit(spec.num_qubits());
    for (size_t q = 0; q < pos; q++) {
        circuit.append(gates::h(q));
    }
    for (size_t i = 0; i < pixels.size(); i++) {
        double theta = pixel_to_angle(pixels[i], AngleScheme::HalfPi);
        flip_zero_bits(circuit, i, pos);
        circuit.append(gates::mcu3(all_position_controls(pos), color, 2 * theta, 0, 0));
        flip_zero_bits(circuit, i, pos);
    }
    return circuit;
}

Circuit build_frqi(const GrayImage &image) {
    checked_side(image);
    auto real = image.to_real();
    return build_frqi(real);
}

Circuit build_neqr(const GrayImage &image) {
    EncodingSpec spec(EncodingMethod::Neqr, checked_side(image));
    const size_t pos = spec.position_qubits();
    Circuit circuit(spec.num_qubits());
    for (size_t q = 0; q < pos; q++) {
        circuit.append(gates::h(q));
    }
    for (size_t i = 0; i < image.size(); i++) {
        unsigned value = image[i];
        if (value == 0) {
            continue;
        }
        flip_zero_bits(circuit, i, pos);
        for (size_t j = 0; j < 8; j++) {
            if ((value >> j) & 1) {
                circuit.append(gates::mcx(all_position_controls(pos), pos + j));
            }
        }
        flip_zero_bits(circuit, i, pos);
    }
    return circuit;
}

Circuit build_encoding(EncodingMethod method, std::span<const double> pixels) {
    switch (method) {
        case EncodingMethod::Angle:
            return build_angle_encoding(pixels);
        case EncodingMethod::Frqi:
            return build_frqi(pixels);
        case EncodingMethod::Neqr: {
            std::vector<int> rounded;
            rounded.reserve(pixels.size());
            for (double p : pixels) {
                pixel_to_angle(p, AngleScheme::FullPi);  // range check
                rounded.push_back(round_half_up(p));
            }
            return build_neqr(GrayImage::square(rounded));
        }
    }
    throw invalid_argument("unknown encoding method");
}

GrayImage decode_frqi(const PureState &state, size_t side) {
    EncodingSpec spec(EncodingMethod::Frqi, side);
    check_state_width(state, spec.num_qubits(), "FRQI");
    const size_t count = side * side;
    const double expected = 1.0 / static_cast<double>(count);
    std::vector<int> pixels(count);
    for (size_t i = 0; i < count; i++) {
        double a0 = std::abs(state[i]);
        double a1 = std::abs(state[count + i]);
        if (std::abs(a0 * a0 + a1 * a1 - expected) > 1e-8) {
            throw invalid_argument("FRQI position " + std::to_string(i) + " carries weight " +
                                   std::to_string(a0 * a0 + a1 * a1) + ", expected " + std::to_string(expected));
        }
        double theta = std::atan2(a1, a0);
        pixels[i] = round_half_up(theta * 2.0 * 255.0 / std::numbers::pi);
    }
    return GrayImage(side, side, pixels);
}

GrayImage decode_neqr(const PureState &state, size_t side) {
    EncodingSpec spec(EncodingMethod::Neqr, side);
    check_state_width(state, spec.num_qubits(), "NEQR");
    const size_t count = side * side;
    const double threshold = 0.5 / std::sqrt(static_cast<double>(count));
    std::vector<int> pixels(count);
    for (size_t i = 0; i < count; i++) {
        int found = -1;
        for (size_t f = 0; f < 256; f++) {
            if (std::abs(state[f * count + i]) > threshold) {
                if (found >= 0) {
                    throw invalid_argument("NEQR position " + std::to_string(i) + " has more than one intensity");
                }
                found = static_cast<int>(f);
            }
        }
        if (found < 0) {
            throw invalid_argument("NEQR position " + std::to_string(i) + " has no intensity");
        }
        pixels[i] = found;
    }
    return GrayImage(side, side, pixels);
}

}  // namespace qtl
