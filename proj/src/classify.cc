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

#include "qtlight/classify.h"

#include <cmath>
#include <string>

#include "qtlight/error.h"
#include "qtlight/simulator.h"

namespace qtl {

namespace {

void check_overlap_encoding(EncodingMethod method) {
    if (method != EncodingMethod::Frqi && method != EncodingMethod::Neqr) {
        throw invalid_argument("overlap classifiers use frqi or neqr, not " + encoding_name(method));
    }
}

void check_sizes(std::span<const double> centroid, const GrayImage &test) {
    if (centroid.size() != test.size()) {
        throw invalid_argument("centroid has " + std::to_string(centroid.size()) + " pixels, test image has " +
                               std::to_string(test.size()));
    }
}

template <typename Score>
OverlapResult classify_by(const ClassCentroids &centroids, Score score) {
    OverlapResult out;
    for (size_t c = 0; c < kNumClasses; c++) {
        out.p0[c] = score(centroids.pixels[c]);
    }
    out.predicted_class = argmax_lowest_tie(out.p0);
    return out;
}

}  // namespace

size_t argmax_lowest_tie(std::span<const double> scores) {
    if (scores.empty()) {
        throw invalid_argument("argmax of an empty score list");
    }
    size_t best = 0;
    for (size_t k = 1; k < scores.size(); k++) {
        if (scores[k] > scores[best] + kTieTolerance) {
            best = k;
        }
    }
    return best;
}

ClassCentroids class_centroids(const Dataset &train) {
    auto counts = train.class_counts();
    for (size_t c = 0; c < kNumClasses; c++) {
        if (counts[c] == 0) {
            throw data_error("class " + std::string(kClassNames[c]) + " has no training samples");
        }
    }
    ClassCentroids out;
    out.side = train[0].image.width();
    const size_t n = train[0].image.size();
    for (auto &p : out.pixels) {
        p.assign(n, 0.0);
    }
    for (const auto &s : train.samples()) {
        if (s.image.size() != n) {
            throw data_error("training images have inconsistent sizes");
        }
        for (size_t k = 0; k < n; k++) {
            out.pixels[s.label][k] += s.image[k];
        }
    }
    for (size_t c = 0; c < kNumClasses; c++) {
        for (auto &v : out.pixels[c]) {
            v /= static_cast<double>(counts[c]);
        }
    }
    return out;
}

Circuit build_uu_circuit(std::span<const double> centroid, const GrayImage &test, EncodingMethod method) {
    check_overlap_encoding(method);
    check_sizes(centroid, test);
    Circuit circuit = build_encoding(method, centroid);
    auto test_pixels = test.to_real();
    circuit.append(build_encoding(method, test_pixels).inverse());
    return circuit;
}

double uu_overlap(std::span<const double> centroid, const GrayImage &test, EncodingMethod method) {
    return prob_all_zero(run_circuit(build_uu_circuit(centroid, test, method)));
}

OverlapResult uu_classify(const GrayImage &test, const ClassCentroids &centroids, EncodingMethod method) {
    return classify_by(centroids, [&](const std::vector<double> &c) { return uu_overlap(c, test, method); });
}

Circuit build_var_uu_circuit(std::span<const double> centroid, const GrayImage &test, EncodingMethod method,
                             size_t layers, bool hadamard_layers) {
    if (layers < 1) {
        throw invalid_argument("variational UU needs at least one layer");
    }
    Circuit block = build_uu_circuit(centroid, test, method);
    Circuit circuit(block.num_qubits());
    if (hadamard_layers) {
        for (size_t q = 0; q < circuit.num_qubits(); q++) {
            circuit.append(gates::h(q));
        }
    }
    for (size_t m = 0; m < layers; m++) {
        circuit.append(block);
    }
    if (hadamard_layers) {
        for (size_t q = 0; q < circuit.num_qubits(); q++) {
            circuit.append(gates::h(q));
        }
    }
    return circuit;
}

double var_uu_overlap(std::span<const double> centroid, const GrayImage &test, EncodingMethod method,
                      size_t layers) {
    return prob_all_zero(run_circuit(build_var_uu_circuit(centroid, test, method, layers)));
}

OverlapResult var_uu_classify(const GrayImage &test, const ClassCentroids &centroids, EncodingMethod method,
                              size_t layers) {
    return classify_by(centroids,
                       [&](const std::vector<double> &c) { return var_uu_overlap(c, test, method, layers); });
}

double weighted_accuracy(std::span<const double> per_class_accuracy, std::span<const double> class_probs) {
    if (per_class_accuracy.size() != class_probs.size() || per_class_accuracy.empty()) {
        throw invalid_argument("weighted accuracy needs matching, nonempty accuracy and probability lists");
    }
    double total_prob = 0, out = 0;
    for (size_t k = 0; k < class_probs.size(); k++) {
        double c = per_class_accuracy[k], n = class_probs[k];
        if (!(c >= 0.0 && c <= 1.0)) {
            throw invalid_argument("per-class accuracy " + std::to_string(c) + " outside [0, 1]");
        }
        if (!(n >= 0.0)) {
            throw invalid_argument("class probability " + std::to_string(n) + " is negative");
        }
        total_prob += n;
        out += c * n;
    }
    if (std::abs(total_prob - 1.0) > 1e-9) {
        throw invalid_argument("class probabilities sum to " + std::to_string(total_prob) + ", expected 1");
    }
    return out;
}

ClassificationReport classify_dataset(const Dataset &test, const ClassCentroids &centroids, OverlapMethod method,
                                      EncodingMethod encoding, size_t layers) {
    if (test.empty()) {
        throw data_error("nothing to classify: test set is empty");
    }
    ClassificationReport report;
    report.class_counts = test.class_counts();
    report.class_probabilities = test.class_probabilities();
    for (const auto &s : test.samples()) {
        OverlapResult r = method == OverlapMethod::UU ? uu_classify(s.image, centroids, encoding)
                                                      : var_uu_classify(s.image, centroids, encoding, layers);
        report.predictions.push_back(r.predicted_class);
        if (r.predicted_class == static_cast<size_t>(s.label)) {
            report.correct[s.label]++;
        }
    }
    for (size_t c = 0; c < kNumClasses; c++) {
        report.per_class_accuracy[c] =
            report.class_counts[c] == 0
                ? 0.0
                : static_cast<double>(report.correct[c]) / static_cast<double>(report.class_counts[c]);
    }
    report.weighted_accuracy = weighted_accuracy(report.per_class_accuracy, report.class_probabilities);
    return report;
}

}  // namespace qtl
