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

#ifndef QTLIGHT_DATASET_H
#define QTLIGHT_DATASET_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtlight/image.h"

namespace qtl {

inline constexpr size_t kNumClasses = 3;
/// Class index order used everywhere: red = 0, yellow = 1, green = 2.
inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {"red", "yellow", "green"};

struct Sample {
    GrayImage image;
    int label;

    bool operator==(const Sample &) const = default;
};

class Dataset {
   public:
    Dataset() = default;
    explicit Dataset(std::vector<Sample> samples);

    /// Throws if the label is outside [0, 3).
    void add(GrayImage image, int label);

    const std::vector<Sample> &samples() const noexcept {
        return samples_;
    }
    size_t size() const noexcept {
        return samples_.size();
    }
    bool empty() const noexcept {
        return samples_.empty();
    }
    const Sample &operator[](size_t k) const {
        return samples_[k];
    }
    std::array<size_t, kNumClasses> class_counts() const;
    /// Count of each class over the total ("number of specific images / total").
    std::array<double, kNumClasses> class_probabilities() const;

    bool operator==(const Dataset &) const = default;

   private:
    std::vector<Sample> samples_;
};

/// Luma 0.299 R + 0.587 G + 0.114 B, rounded half-up.
uint8_t rgb_to_gray(uint8_t r, uint8_t g, uint8_t b);

/// Parses a PGM (P2/P5) or PPM (P3/P6) image. PPM pixels are converted to
/// grayscale. Maxval must be in [1, 255]; values are rescaled to 255.
GrayImage parse_pnm(std::span<const char> bytes);
GrayImage read_pnm(const std::filesystem::path &path);
/// Writes binary P5 by default, ASCII P2 when ascii is set.
std::string format_pgm(const GrayImage &image, bool ascii = false);
void write_pgm(const GrayImage &image, const std::filesystem::path &path, bool ascii = false);

/// Area-average downsampling. Rows (and columns) are split into side groups
/// at floor(g * H / side); each output pixel is the group mean rounded half-up.
GrayImage resize_area(const GrayImage &image, size_t side);

/// Rows "label,p0,...,p{k-1}" with k a perfect square; no header.
Dataset parse_dataset_csv(std::string_view text, size_t side);
std::string format_dataset_csv(const Dataset &dataset);

/// Loads root/dataset.csv if present, otherwise one subdirectory per class
/// (red|stop, yellow|warning, green|go) holding .pgm/.ppm/.pnm files, read in
/// filename order. Every image is resized to side x side.
Dataset load_dataset(const std::filesystem::path &root, size_t side);

struct SyntheticSpec {
    size_t per_class = 200;
    size_t side = 2;
    double brightness_sigma = 20.0;
    uint64_t seed = 42;
};

/// Bright/dim levels of the synthetic class templates.
inline constexpr int kSyntheticBright = 220;
inline constexpr int kSyntheticDim = 30;

/// Noise-free class template: one bright quadrant (top-left for red, top-right
/// for yellow, bottom-left for green) on a dim background.
GrayImage synthetic_template(int label, size_t side);

/// per_class samples of each class (class-major order); each pixel is the
/// template plus seeded Gaussian noise, clamped to [0, 255] and rounded.
Dataset gen_synthetic(const SyntheticSpec &spec);

/// Per-class seeded shuffle, then the first round(fraction * count) samples of
/// each class go to the train side. Both sides keep at least one sample of every class.
std::pair<Dataset, Dataset> stratified_split(const Dataset &dataset, double train_fraction, uint64_t seed);

}  // namespace qtl

#endif
