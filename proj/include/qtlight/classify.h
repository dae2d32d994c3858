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

#ifndef QTLIGHT_CLASSIFY_H
#define QTLIGHT_CLASSIFY_H

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qtlight/circuit.h"
#include "qtlight/dataset.h"
#include "qtlight/encoding.h"
#include "qtlight/image.h"

namespace qtl {

/// Two scores closer than this are treated as equal when picking a class, so
/// that rounding noise never overrides the lowest-index tie rule.
inline constexpr double kTieTolerance = 1e-12;

/// Index of the largest score; a later class wins only if it beats the
/// current best by more than kTieTolerance.
size_t argmax_lowest_tie(std::span<const double> scores);

/// Per-class pixel means of the training images. Kept real-valued.
struct ClassCentroids {
    size_t side = 0;
    std::array<std::vector<double>, kNumClasses> pixels;
};

/// Throws if any class has no samples or image sizes disagree.
ClassCentroids class_centroids(const Dataset &train);

struct OverlapResult {
    std::array<double, kNumClasses> p0{};
    size_t predicted_class = 0;
};

/// The inversion-test circuit: U_c (centroid encoding) followed by U_t^dagger
/// (test encoding).
Circuit build_uu_circuit(std::span<const double> centroid, const GrayImage &test, EncodingMethod method);

/// P0 of the inversion test, |<psi_t|psi_c>|^2. Only FRQI and NEQR are accepted.
double uu_overlap(std::span<const double> centroid, const GrayImage &test, EncodingMethod method);

OverlapResult uu_classify(const GrayImage &test, const ClassCentroids &centroids, EncodingMethod method);

/// H on every qubit, m repetitions of [U_c, U_t^dagger], H on every qubit.
/// With hadamard_layers = false and m = 1 this is build_uu_circuit.
Circuit build_var_uu_circuit(std::span<const double> centroid, const GrayImage &test, EncodingMethod method,
                             size_t layers, bool hadamard_layers = true);

double var_uu_overlap(std::span<const double> centroid, const GrayImage &test, EncodingMethod method,
                      size_t layers);

OverlapResult var_uu_classify(const GrayImage &test, const ClassCentroids &centroids, EncodingMethod method,
                              size_t layers);

/// c_1 N_1 + c_2 N_2 + c_3 N_3. Throws unless every c is in [0, 1], every N >= 0,
/// and the N sum to 1 within 1e-9.
double weighted_accuracy(std::span<const double> per_class_accuracy, std::span<const double> class_probs);

/// Outcome of classifying a labelled set against fixed centroids.
struct ClassificationReport {
    std::vector<size_t> predictions;
    std::array<size_t, kNumClasses> class_counts{};
    std::array<size_t, kNumClasses> correct{};
    std::array<double, kNumClasses> per_class_accuracy{};
    std::array<double, kNumClasses> class_probabilities{};
    double weighted_accuracy = 0;
};

enum class OverlapMethod { UU, VariationalUU };

/// Classifies every sample of test. layers is used only by the variational method.
ClassificationReport classify_dataset(const Dataset &test, const ClassCentroids &centroids, OverlapMethod method,
                                      EncodingMethod encoding, size_t layers = 1);

}  // namespace qtl

#endif
