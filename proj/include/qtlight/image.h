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

#ifndef QTLIGHT_IMAGE_H
#define QTLIGHT_IMAGE_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qtl {

/// 8-bit grayscale image, row-major.
class GrayImage {
   public:
    GrayImage() = default;
    /// Throws unless pixels.size() == width * height and every value is in [0, 255].
    GrayImage(size_t width, size_t height, std::span<const int> pixels);
    GrayImage(size_t width, size_t height, std::vector<uint8_t> pixels);
    /// Square image from a row-major pixel list whose length is a perfect square.
    static GrayImage square(std::span<const int> pixels);
    static GrayImage square(std::initializer_list<int> pixels) {
        std::vector<int> v(pixels);
        return square(v);
    }

    size_t width() const noexcept {
        return width_;
    }
    size_t height() const noexcept {
        return height_;
    }
    size_t size() const noexcept {
        return pixels_.size();
    }
    std::span<const uint8_t> pixels() const noexcept {
        return pixels_;
    }
    uint8_t at(size_t row, size_t col) const {
        return pixels_[row * width_ + col];
    }
    uint8_t operator[](size_t k) const {
        return pixels_[k];
    }
    std::vector<double> to_real() const;

    bool operator==(const GrayImage &) const = default;

   private:
    size_t width_ = 0;
    size_t height_ = 0;
    std::vector<uint8_t> pixels_;
};

}  // namespace qtl

#endif
