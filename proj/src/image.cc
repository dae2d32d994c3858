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

#include "qtlight/image.h"

#include <cmath>
#include <string>

#include "qtlight/error.h"

namespace qtl {

GrayImage::GrayImage(size_t width, size_t height, std::span<const int> pixels) : width_(width), height_(height) {
    if (pixels.size() != width * height) {
        throw invalid_argument("image " + std::to_string(width) + "x" + std::to_string(height) + " needs " +
                               std::to_string(width * height) + " pixels, got " + std::to_string(pixels.size()));
    }
    pixels_.reserve(pixels.size());
    for (int p : pixels) {
        if (p < 0 || p > 255) {
            throw invalid_argument("pixel value " + std::to_string(p) + " outside [0, 255]");
        }
        pixels_.push_back(static_cast<uint8_t>(p));
    }
}

GrayImage::GrayImage(size_t width, size_t height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width * height) {
        throw invalid_argument("image " + std::to_string(width) + "x" + std::to_string(height) + " needs " +
                               std::to_string(width * height) + " pixels, got " + std::to_string(pixels_.size()));
    }
}

GrayImage GrayImage::square(std::span<const int> pixels) {
    auto side = static_cast<size_t>(std::lround(std::sqrt(static_cast<double>(pixels.size()))));
    if (side == 0 || side * side != pixels.size()) {
        throw invalid_argument("pixel count " + std::to_string(pixels.size()) + " is not a nonzero perfect square");
    }
    return GrayImage(side, side, pixels);
}

std::vector<double> GrayImage::to_real() const {
    return std::vector<double>(pixels_.begin(), pixels_.end());
}

}  // namespace qtl
