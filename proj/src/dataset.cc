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

#include "qtlight/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qtlight/error.h"

namespace qtl {

namespace fs = std::filesystem;

namespace {

void check_label(int label) {
    if (label < 0 || label >= static_cast<int>(kNumClasses)) {
        throw data_error("label " + std::to_string(label) + " outside [0, 3)");
    }
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class PnmReader {
   public:
    explicit PnmReader(std::span<const char> bytes) : bytes_(bytes) {
    }

    std::string_view magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P') {
            throw data_error("not a PNM file");
        }
        pos_ = 2;
        return std::string_view(bytes_.data(), 2);
    }

    unsigned next_uint() {
        skip_space_and_comments();
        size_t start = pos_;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            pos_++;
        }
        if (start == pos_) {
            throw data_error("malformed PNM: expected a number at byte " + std::to_string(start));
        }
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(bytes_.data() + start, bytes_.data() + pos_, v);
        if (ec != std::errc()) {
            throw data_error("malformed PNM: number out of range at byte " + std::to_string(start));
        }
        return v;
    }

    /// Consumes the single whitespace byte separating the header from binary data.
    void end_header() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw data_error("malformed PNM: missing whitespace after header");
        }
        pos_++;
    }

    unsigned next_byte() {
        if (pos_ >= bytes_.size()) {
            throw data_error("malformed PNM: truncated pixel data");
        }
        return static_cast<unsigned char>(bytes_[pos_++]);
    }

   private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    pos_++;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                pos_++;
            } else {
                break;
            }
        }
    }

    std::span<const char> bytes_;
    size_t pos_ = 0;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t end = s.find(sep, start);
        out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

int parse_int_field(std::string_view field, size_t line) {
    field = trim(field);
    int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw data_error("dataset.csv line " + std::to_string(line) + ": '" + std::string(field) +
                         "' is not an integer");
    }
    return v;
}

const std::array<std::array<std::string_view, 2>, kNumClasses> kClassDirs = {{
    {"red", "stop"},
    {"yellow", "warning"},
    {"green", "go"},
}};

}  // namespace

Dataset::Dataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
    for (const auto &s : samples_) {
        check_label(s.label);
    }
}

void Dataset::add(GrayImage image, int label) {
    check_label(label);
    samples_.push_back(Sample{std::move(image), label});
}

std::array<size_t, kNumClasses> Dataset::class_counts() const {
    std::array<size_t, kNumClasses> counts{};
    for (const auto &s : samples_) {
        counts[s.label]++;
    }
    return counts;
}

std::array<double, kNumClasses> Dataset::class_probabilities() const {
    if (samples_.empty()) {
        throw data_error("class probabilities of an empty dataset");
    }
    auto counts = class_counts();
    std::array<double, kNumClasses> probs{};
    for (size_t c = 0; c < kNumClasses; c++) {
        probs[c] = static_cast<double>(counts[c]) / static_cast<double>(samples_.size());
    }
    return probs;
}

uint8_t rgb_to_gray(uint8_t r, uint8_t g, uint8_t b) {
    // Exact integer form of floor(0.299 R + 0.587 G + 0.114 B + 0.5).
    return static_cast<uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

GrayImage parse_pnm(std::span<const char> bytes) {
    PnmReader reader(bytes);
    std::string_view magic = reader.magic();
    bool ascii = magic == "P2" || magic == "P3";
    bool color = magic == "P3" || magic == "P6";
    if (magic != "P2" && magic != "P5" && magic != "P3" && magic != "P6") {
        throw data_error("unsupported PNM type " + std::string(magic) + " (expected P2, P3, P5 or P6)");
    }
    unsigned width = reader.next_uint();
    unsigned height = reader.next_uint();
    unsigned maxval = reader.next_uint();
    if (width == 0 || height == 0) {
        throw data_error("PNM image has zero size");
    }
    if (maxval == 0 || maxval > 255) {
        throw data_error("PNM maxval " + std::to_string(maxval) + " unsupported (expected 1..255)");
    }
    if (!ascii) {
        reader.end_header();
    }
    auto read_value = [&]() {
        unsigned v = ascii ? reader.next_uint() : reader.next_byte();
        if (v > maxval) {
            throw data_error("PNM sample " + std::to_string(v) + " exceeds maxval " + std::to_string(maxval));
        }
        return static_cast<uint8_t>((v * 255u * 2 + maxval) / (2 * maxval));
    };
    std::vector<uint8_t> pixels(static_cast<size_t>(width) * height);
    for (auto &p : pixels) {
        if (color) {
            uint8_t r = read_value();
            uint8_t g = read_value();
            uint8_t b = read_value();
            p = rgb_to_gray(r, g, b);
        } else {
            p = read_value();
        }
    }
    return GrayImage(width, height, std::move(pixels));
}

GrayImage read_pnm(const fs::path &path) {
    std::string bytes = read_file(path);
    try {
        return parse_pnm(bytes);
    } catch (const Error &e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

std::string format_pgm(const GrayImage &image, bool ascii) {
    std::string out = (ascii ? "P2\n" : "P5\n") + std::to_string(image.width()) + " " +
                      std::to_string(image.height()) + "\n255\n";
    if (ascii) {
        for (size_t r = 0; r < image.height(); r++) {
            for (size_t c = 0; c < image.width(); c++) {
                out += std::to_string(image.at(r, c));
                out += c + 1 == image.width() ? '\n' : ' ';
            }
        }
    } else {
        for (uint8_t p : image.pixels()) {
            out.push_back(static_cast<char>(p));
        }
    }
    return out;
}

void write_pgm(const GrayImage &image, const fs::path &path, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot write " + path.string());
    }
    out << format_pgm(image, ascii);
}

GrayImage resize_area(const GrayImage &image, size_t side) {
    const size_t h = image.height(), w = image.width();
    if (side == 0 || h < side || w < side) {
        throw invalid_argument("cannot resize a " + std::to_string(w) + "x" + std::to_string(h) + " image to " +
                               std::to_string(side) + "x" + std::to_string(side));
    }
    std::vector<uint8_t> out(side * side);
    for (size_t gy = 0; gy < side; gy++) {
        size_t r0 = gy * h / side, r1 = (gy + 1) * h / side;
        for (size_t gx = 0; gx < side; gx++) {
            size_t c0 = gx * w / side, c1 = (gx + 1) * w / side;
            uint64_t sum = 0;
            for (size_t r = r0; r < r1; r++) {
                for (size_t c = c0; c < c1; c++) {
                    sum += image.at(r, c);
                }
            }
            uint64_t count = (r1 - r0) * (c1 - c0);
            out[gy * side + gx] = static_cast<uint8_t>((2 * sum + count) / (2 * count));
        }
    }
    return GrayImage(side, side, std::move(out));
}

Dataset parse_dataset_csv(std::string_view text, size_t side) {
    Dataset dataset;
    size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        line_no++;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() < 2) {
            throw data_error("dataset.csv line " + std::to_string(line_no) + ": expected label and pixels");
        }
        int label = parse_int_field(fields[0], line_no);
        if (label < 0 || label >= static_cast<int>(kNumClasses)) {
            throw data_error("dataset.csv line " + std::to_string(line_no) + ": label " + std::to_string(label) +
                             " outside [0, 3)");
        }
        std::vector<int> pixels;
        for (size_t k = 1; k < fields.size(); k++) {
            int p = parse_int_field(fields[k], line_no);
            if (p < 0 || p > 255) {
                throw data_error("dataset.csv line " + std::to_string(line_no) + ": pixel " + std::to_string(p) +
                                 " outside [0, 255]");
            }
            pixels.push_back(p);
        }
        GrayImage image;
        try {
            image = GrayImage::square(pixels);
        } catch (const Error &e) {
            throw data_error("dataset.csv line " + std::to_string(line_no) + ": " + e.what());
        }
        if (image.width() < side) {
            throw data_error("dataset.csv line " + std::to_string(line_no) + ": image is " +
                             std::to_string(image.width()) + "x" + std::to_string(image.width()) +
                             ", smaller than requested side " + std::to_string(side));
        }
        dataset.add(resize_area(image, side), label);
    }
    return dataset;
}

std::string format_dataset_csv(const Dataset &dataset) {
    std::string out;
    for (const auto &s : dataset.samples()) {
        out += std::to_string(s.label);
        for (uint8_t p : s.image.pixels()) {
            out += ',';
            out += std::to_string(p);
        }
        out += '\n';
    }
    return out;
}

Dataset load_dataset(const fs::path &root, size_t side) {
    if (!fs::is_directory(root)) {
        throw data_error("dataset root " + root.string() + " is not a directory");
    }
    fs::path csv = root / "dataset.csv";
    if (fs::exists(csv)) {
        return parse_dataset_csv(read_file(csv), side);
    }
    Dataset dataset;
    for (size_t label = 0; label < kNumClasses; label++) {
        fs::path dir;
        for (auto name : kClassDirs[label]) {
            if (fs::is_directory(root / name)) {
                dir = root / name;
                break;
            }
        }
        if (dir.empty()) {
            throw data_error("dataset root " + root.string() + " has no " + std::string(kClassDirs[label][0]) + "|" +
                             std::string(kClassDirs[label][1]) + " directory");
        }
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(dir)) {
            auto ext = entry.path().extension().string();
            if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto &f : files) {
            GrayImage image = read_pnm(f);
            if (image.width() < side || image.height() < side) {
                throw data_error(f.string() + ": image smaller than " + std::to_string(side) + "x" +
                                 std::to_string(side));
            }
            dataset.add(resize_area(image, side), static_cast<int>(label));
        }
    }
    return dataset;
}

GrayImage synthetic_template(int label, size_t side) {
    check_label(label);
    if (side < 2 || side % 2 != 0) {
        throw invalid_argument("synthetic side must be an even number >= 2, got " + std::to_string(side));
    }
    // Bright quadrant origin per class: red top-left, yellow top-right, green bottom-left.
    const size_t half = side / 2;
    const size_t row0 = label == 2 ? half : 0;
    const size_t col0 = label == 1 ? half : 0;
    std::vector<int> pixels(side * side, kSyntheticDim);
    for (size_t r = row0; r < row0 + half; r++) {
        for (size_t c = col0; c < col0 + half; c++) {
            pixels[r * side + c] = kSyntheticBright;
        }
    }
    return GrayImage(side, side, pixels);
}

Dataset gen_synthetic(const SyntheticSpec &spec) {
    if (spec.per_class < 1) {
        throw invalid_argument("synthetic per_class must be >= 1");
    }
    if (!(spec.brightness_sigma >= 0.0) || !std::isfinite(spec.brightness_sigma)) {
        throw invalid_argument("synthetic sigma must be a finite value >= 0");
    }
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Dataset dataset;
    for (int label = 0; label < static_cast<int>(kNumClasses); label++) {
        GrayImage base = synthetic_template(label, spec.side);
        for (size_t k = 0; k < spec.per_class; k++) {
            std::vector<int> pixels(base.size());
            for (size_t i = 0; i < base.size(); i++) {
                double v = base[i] + spec.brightness_sigma * noise(rng);
                pixels[i] = static_cast<int>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
            }
            dataset.add(GrayImage(spec.side, spec.side, pixels), label);
        }
    }
    return dataset;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset &dataset, double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw invalid_argument("train fraction must be in (0, 1), got " + std::to_string(train_fraction));
    }
    std::array<std::vector<size_t>, kNumClasses> by_class;
    for (size_t k = 0; k < dataset.size(); k++) {
        by_class[dataset[k].label].push_back(k);
    }
    std::mt19937_64 rng(seed);
    Dataset train, test;
    for (size_t c = 0; c < kNumClasses; c++) {
        auto &idx = by_class[c];
        if (idx.size() < 2) {
            throw data_error("class " + std::string(kClassNames[c]) + " has " + std::to_string(idx.size()) +
                             " sample(s); a train/test split needs at least 2");
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        auto n_train = static_cast<size_t>(std::floor(train_fraction * static_cast<double>(idx.size()) + 0.5));
        n_train = std::clamp<size_t>(n_train, 1, idx.size() - 1);
        for (size_t k = 0; k < idx.size(); k++) {
            const Sample &s = dataset[idx[k]];
            (k < n_train ? train : test).add(s.image, s.label);
        }
    }
    return {std::move(train), std::move(test)};
}

}  // namespace qtl
