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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "qtlight/error.h"
#include "test_util.h"

using namespace qtl;
using namespace qtl::testing;
namespace fs = std::filesystem;

namespace {

GrayImage parse(std::string_view text) {
    return parse_pnm(std::span<const char>(text.data(), text.size()));
}

class TempDir {
   public:
    TempDir() {
        auto base = fs::temp_directory_path() / "qtlight_dataset_test";
        path_ = base / std::to_string(test_rng(0)() ^ reinterpret_cast<uintptr_t>(this));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path &path() const {
        return path_;
    }

   private:
    fs::path path_;
};

void write_text(const fs::path &p, std::string_view text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST(Pnm, AsciiGray) {
    GrayImage img = parse("P2\n# comment\n2 2\n255\n0 100\n200 255\n");
    EXPECT_EQ(img, GrayImage::square({0, 100, 200, 255}));
}

TEST(Pnm, BinaryGrayRoundTrip) {
    auto rng = test_rng(70);
    GrayImage img = random_image(rng, 4);
    EXPECT_EQ(parse(format_pgm(img)), img);
    EXPECT_EQ(parse(format_pgm(img, true)), img);
    EXPECT_EQ(format_pgm(img).substr(0, 2), "P5");
}

TEST(Pnm, MaxvalIsRescaled) {
    EXPECT_EQ(parse("P2 2 1 15 0 15\n"), GrayImage(2, 1, std::vector<uint8_t>{0, 255}));
}

TEST(Pnm, ColorIsConvertedToLuma) {
    GrayImage img = parse("P3 2 1 255\n255 0 0  10 200 30\n");
    EXPECT_EQ(img[0], rgb_to_gray(255, 0, 0));
    EXPECT_EQ(img[1], rgb_to_gray(10, 200, 30));
    std::string bin = "P6 1 1 255\n";
    bin += std::string{'\x00', '\xff', '\x00'};
    EXPECT_EQ(parse(bin)[0], rgb_to_gray(0, 255, 0));
}

TEST(Pnm, LumaRoundsHalfUp) {
    EXPECT_EQ(rgb_to_gray(255, 255, 255), 255);
    EXPECT_EQ(rgb_to_gray(0, 0, 0), 0);
    EXPECT_EQ(rgb_to_gray(255, 0, 0), 76);   // 76.245
    EXPECT_EQ(rgb_to_gray(0, 255, 0), 150);  // 149.685
    EXPECT_EQ(rgb_to_gray(0, 0, 255), 29);   // 29.07
    EXPECT_EQ(rgb_to_gray(1, 1, 0), 1);      // 0.886
    EXPECT_EQ(rgb_to_gray(0, 0, 5), 1);      // 0.57
}

TEST(Pnm, Errors) {
    EXPECT_THROW(parse("P4 1 1\n"), Error);
    EXPECT_THROW(parse("P2 2 2 255 0 0 0\n"), Error);
    EXPECT_THROW(parse("P2 1 1 255 300\n"), Error);
    EXPECT_THROW(parse("P2 1 1 0 0\n"), Error);
    EXPECT_THROW(parse("P2 1 1 65535 0\n"), Error);
    EXPECT_THROW(parse("P5 2 2 255\n\x01"), Error);
    EXPECT_THROW(parse(""), Error);
    EXPECT_THROW(read_pnm("/nonexistent/qtlight.pgm"), Error);
}

TEST(Resize, BlockMeans) {
    std::vector<int> px(16, 0);
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            px[r * 4 + c] = 100;
        }
    }
    EXPECT_EQ(resize_area(GrayImage(4, 4, px), 2), GrayImage::square({100, 0, 0, 0}));
}

TEST(Resize, RoundsHalfUp) {
    // Block {0, 1, 0, 0} averages 0.25, block {1, 1, 0, 0} 0.5, block {1, 1, 1, 0} 0.75.
    std::vector<int> px = {0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0};
    EXPECT_EQ(resize_area(GrayImage(4, 4, px), 2), GrayImage::square({0, 1, 1, 0}));
}

TEST(Resize, ConstantAndIdentity) {
    auto rng = test_rng(71);
    EXPECT_EQ(resize_area(GrayImage(7, 5, std::vector<uint8_t>(35, 42)), 2), GrayImage::square({42, 42, 42, 42}));
    for (size_t side : {2u, 4u}) {
        GrayImage img = random_image(rng, side);
        EXPECT_EQ(resize_area(img, side), img);
    }
}

TEST(Resize, MatchesFloorPartitionOracle) {
    auto rng = test_rng(72);
    for (int trial = 0; trial < 50; trial++) {
        size_t w = 4 + rng() % 13, h = 4 + rng() % 13, side = trial % 2 ? 4 : 2;
        std::vector<int> px(w * h);
        for (auto &p : px) {
            p = static_cast<int>(rng() % 256);
        }
        GrayImage out = resize_area(GrayImage(w, h, px), side);
        for (size_t gy = 0; gy < side; gy++) {
            for (size_t gx = 0; gx < side; gx++) {
                double sum = 0;
                int n = 0;
                for (size_t y = gy * h / side; y < (gy + 1) * h / side; y++) {
                    for (size_t x = gx * w / side; x < (gx + 1) * w / side; x++) {
                        sum += px[y * w + x];
                        n++;
                    }
                }
                ASSERT_EQ(out.at(gy, gx), static_cast<int>(std::floor(sum / n + 0.5)));
            }
        }
    }
}

TEST(Resize, TooSmallIsError) {
    EXPECT_THROW(resize_area(GrayImage::square({1, 2, 3, 4}), 4), Error);
}

TEST(Csv, RowFormat) {
    Dataset d = parse_dataset_csv("0,0,100,200,255\n", 2);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].label, 0);
    EXPECT_EQ(d[0].image, GrayImage::square({0, 100, 200, 255}));
}

TEST(Csv, RoundTrip) {
    Dataset d = gen_synthetic({.per_class = 7, .side = 4, .brightness_sigma = 40, .seed = 5});
    EXPECT_EQ(parse_dataset_csv(format_dataset_csv(d), 4), d);
}

TEST(Csv, Errors) {
    EXPECT_THROW(parse_dataset_csv("3,0,0,0,0\n", 2), Error);
    EXPECT_THROW(parse_dataset_csv("0,0,0,0\n", 2), Error);
    EXPECT_THROW(parse_dataset_csv("0,0,0,0,256\n", 2), Error);
    EXPECT_THROW(parse_dataset_csv("0,0,0,x,1\n", 2), Error);
}

TEST(Csv, LargerImagesAreResized) {
    std::string row = "2";
    for (int k = 0; k < 16; k++) {
        row += k < 2 || (k >= 4 && k < 6) ? ",100" : ",0";
    }
    Dataset d = parse_dataset_csv(row + "\n", 2);
    EXPECT_EQ(d[0].image, GrayImage::square({100, 0, 0, 0}));
}

TEST(Loader, ClassDirectories) {
    TempDir tmp;
    write_text(tmp.path() / "red" / "a.pgm", "P2 2 2 255 1 2 3 4\n");
    write_text(tmp.path() / "warning" / "b.pgm", "P2 2 2 255 5 6 7 8\n");
    write_text(tmp.path() / "go" / "c.pgm", "P2 2 2 255 9 10 11 12\n");
    write_text(tmp.path() / "go" / "notes.txt", "ignored");
    Dataset d = load_dataset(tmp.path(), 2);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d.class_counts(), (std::array<size_t, 3>{1, 1, 1}));
    EXPECT_EQ(d[1].image, GrayImage::square({5, 6, 7, 8}));
    EXPECT_EQ(d[2].label, 2);
}

TEST(Loader, FilesInNameOrderAndResized) {
    TempDir tmp;
    write_text(tmp.path() / "red" / "b.pgm", "P2 2 2 255 2 2 2 2\n");
    write_text(tmp.path() / "red" / "a.pgm", "P2 4 4 255\n1 1 1 1\n1 1 1 1\n1 1 1 1\n1 1 1 1\n");
    write_text(tmp.path() / "yellow" / "c.pgm", "P2 2 2 255 0 0 0 0\n");
    write_text(tmp.path() / "green" / "d.pgm", "P2 2 2 255 0 0 0 0\n");
    Dataset d = load_dataset(tmp.path(), 2);
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0].image, GrayImage::square({1, 1, 1, 1}));
    EXPECT_EQ(d[1].image, GrayImage::square({2, 2, 2, 2}));
}

TEST(Loader, CsvWins) {
    TempDir tmp;
    write_text(tmp.path() / "dataset.csv", "1,4,3,2,1\n0,1,2,3,4\n");
    Dataset d = load_dataset(tmp.path(), 2);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].label, 1);
}

TEST(Loader, Errors) {
    TempDir tmp;
    EXPECT_THROW(load_dataset(tmp.path() / "missing", 2), Error);
    write_text(tmp.path() / "red" / "a.pgm", "P2 2 2 255 1 2 3 4\n");
    write_text(tmp.path() / "green" / "a.pgm", "P2 2 2 255 1 2 3 4\n");
    EXPECT_THROW(load_dataset(tmp.path(), 2), Error);
    write_text(tmp.path() / "yellow" / "a.pgm", "P2 2 2 255 1 2 3\n");
    EXPECT_THROW(load_dataset(tmp.path(), 2), Error);
}

TEST(Synthetic, ZeroSigmaGivesTemplates) {
    Dataset d = gen_synthetic({.per_class = 3, .side = 2, .brightness_sigma = 0, .seed = 1});
    ASSERT_EQ(d.size(), 9u);
    EXPECT_EQ(synthetic_template(0, 2), GrayImage::square({220, 30, 30, 30}));
    EXPECT_EQ(synthetic_template(1, 2), GrayImage::square({30, 220, 30, 30}));
    EXPECT_EQ(synthetic_template(2, 2), GrayImage::square({30, 30, 220, 30}));
    for (const Sample &s : d.samples()) {
        EXPECT_EQ(s.image, synthetic_template(s.label, 2));
    }
    GrayImage big = synthetic_template(1, 4);
    EXPECT_EQ(big.at(0, 2), 220);
    EXPECT_EQ(big.at(1, 3), 220);
    EXPECT_EQ(big.at(0, 0), 30);
    EXPECT_EQ(resize_area(big, 2), synthetic_template(1, 2));
}

TEST(Synthetic, Deterministic) {
    SyntheticSpec spec{.per_class = 20, .side = 4, .brightness_sigma = 25, .seed = 77};
    EXPECT_EQ(gen_synthetic(spec), gen_synthetic(spec));
    SyntheticSpec other = spec;
    other.seed = 78;
    EXPECT_NE(gen_synthetic(spec), gen_synthetic(other));
    EXPECT_EQ(gen_synthetic(spec).class_counts(), (std::array<size_t, 3>{20, 20, 20}));
}

TEST(Synthetic, ClassicallySeparable) {
    Dataset d = gen_synthetic({.per_class = 200, .side = 2, .brightness_sigma = 20, .seed = 42});
    auto [train, test] = stratified_split(d, 0.8, 42);
    std::array<std::array<double, 4>, 3> mean{};
    auto counts = train.class_counts();
    for (const Sample &s : train.samples()) {
        for (size_t k = 0; k < 4; k++) {
            mean[s.label][k] += s.image[k] / static_cast<double>(counts[s.label]);
        }
    }
    size_t hits = 0;
    for (const Sample &s : test.samples()) {
        int best = 0;
        double best_d = 1e300;
        for (int c = 0; c < 3; c++) {
            double dist = 0;
            for (size_t k = 0; k < 4; k++) {
                dist += (s.image[k] - mean[c][k]) * (s.image[k] - mean[c][k]);
            }
            if (dist < best_d) {
                best_d = dist;
                best = c;
            }
        }
        hits += best == s.label;
    }
    EXPECT_GE(static_cast<double>(hits) / test.size(), 0.95);
}

TEST(Split, CountsPerClass) {
    Dataset d = gen_synthetic({.per_class = 10, .side = 2, .brightness_sigma = 20, .seed = 2});
    auto [train, test] = stratified_split(d, 0.8, 9);
    EXPECT_EQ(train.class_counts(), (std::array<size_t, 3>{8, 8, 8}));
    EXPECT_EQ(test.class_counts(), (std::array<size_t, 3>{2, 2, 2}));
}

TEST(Split, PartitionAndDeterminism) {
    auto rng = test_rng(73);
    Dataset d;
    for (int k = 0; k < 37; k++) {
        d.add(random_image(rng, 2), k % 3);
    }
    auto a = stratified_split(d, 0.7, 5);
    auto b = stratified_split(d, 0.7, 5);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
    EXPECT_NE(stratified_split(d, 0.7, 6).first, a.first);
    EXPECT_EQ(a.first.size() + a.second.size(), d.size());
    std::multiset<std::string> all, parts;
    for (const Sample &s : d.samples()) {
        all.insert(format_pgm(s.image) + char('0' + s.label));
    }
    for (const Dataset *part : {&a.first, &a.second}) {
        for (const Sample &s : part->samples()) {
            parts.insert(format_pgm(s.image) + char('0' + s.label));
        }
    }
    EXPECT_EQ(all, parts);
}

TEST(Split, EveryClassOnBothSides) {
    Dataset d;
    for (int c = 0; c < 3; c++) {
        d.add(GrayImage::square({c, c, c, c}), c);
        d.add(GrayImage::square({c, c, c, 9}), c);
    }
    for (double f : {0.01, 0.5, 0.99}) {
        auto [train, test] = stratified_split(d, f, 1);
        EXPECT_EQ(train.class_counts(), (std::array<size_t, 3>{1, 1, 1}));
        EXPECT_EQ(test.class_counts(), (std::array<size_t, 3>{1, 1, 1}));
    }
}

TEST(Split, Errors) {
    Dataset d;
    d.add(GrayImage::square({0, 0, 0, 0}), 0);
    d.add(GrayImage::square({0, 0, 0, 0}), 1);
    d.add(GrayImage::square({0, 0, 0, 0}), 1);
    d.add(GrayImage::square({0, 0, 0, 0}), 2);
    d.add(GrayImage::square({0, 0, 0, 0}), 2);
    EXPECT_THROW(stratified_split(d, 0.8, 1), Error);
    Dataset ok = gen_synthetic({.per_class = 4, .side = 2, .brightness_sigma = 0, .seed = 1});
    EXPECT_THROW(stratified_split(ok, 0.0, 1), Error);
    EXPECT_THROW(stratified_split(ok, 1.0, 1), Error);
}

TEST(DatasetType, LabelRange) {
    Dataset d;
    EXPECT_THROW(d.add(GrayImage::square({0, 0, 0, 0}), 3), Error);
    EXPECT_THROW(d.add(GrayImage::square({0, 0, 0, 0}), -1), Error);
}
