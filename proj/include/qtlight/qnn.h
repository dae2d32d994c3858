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

#ifndef QTLIGHT_QNN_H
#define QTLIGHT_QNN_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtlight/circuit.h"
#include "qtlight/dataset.h"
#include "qtlight/image.h"
#include "qtlight/noise.h"
#include "qtlight/optimizer.h"
#include "qtlight/state.h"

namespace qtl {

/// Qubits 0, 1, 2 carry the red, yellow and green readouts.
inline constexpr size_t kReadoutQubits = kNumClasses;

/// r_q = (1 - <Z_q>) / 2 for the readout qubits.
using Readout = std::array<double, kReadoutQubits>;

/// Angle-encoded input followed by num_layers of [RY on every qubit, CNOT ring].
/// params[l * num_qubits + q] is the RY angle of qubit q in layer l.
struct QnnModel {
    size_t num_qubits = 4;
    size_t num_layers = 1;
    std::vector<double> params;

    static QnnModel zeros(size_t num_qubits, size_t num_layers);
    /// Throws unless num_qubits >= 3, num_layers >= 1 and params has the right
    /// length with finite entries.
    void validate() const;

    bool operator==(const QnnModel &) const = default;
};

/// A circuit plus the gate positions of the trainable rotations, so parameter
/// j is gates()[param_gates[j]].params[0].
struct ParametrizedCircuit {
    Circuit circuit;
    std::vector<size_t> param_gates;
};

/// Encoding RX layer, then per layer RY(theta_{l,q}) on each qubit and CNOT
/// q -> (q + 1) mod n for q = 0..n-1.
ParametrizedCircuit build_qnn_circuit(const QnnModel &model, const GrayImage &image);

Readout readout(const PureState &state);
Readout readout(const MixedState &state);

Readout qnn_forward(const QnnModel &model, const GrayImage &image);
/// Readout of the same circuit run as a density matrix under the channel.
Readout qnn_forward_noisy(const QnnModel &model, const GrayImage &image, const NoiseChannel &channel);

/// Argmax readout, ties to the lowest class.
size_t predict(const Readout &r);

/// sum_k (r_k - onehot(label)_k)^2.
double qnn_loss(const Readout &pred, int label);

/// Mean loss over the samples. Throws on an empty set.
double qnn_cost(const QnnModel &model, std::span<const Sample> samples);

/// d loss / d theta_j for one sample by the parameter-shift rule:
/// d<Z_q>/d theta = (<Z_q>(theta + pi/2) - <Z_q>(theta - pi/2)) / 2, then the
/// chain rule through r_q and the squared error.
std::vector<double> param_shift_sample_grad(const ParametrizedCircuit &pc, int label);

/// Batch-mean parameter-shift gradient of the cost, summed in batch order.
std::vector<double> param_shift_grad(const QnnModel &model, std::span<const Sample> batch);

/// Fraction of samples whose predicted class matches the label.
double evaluate(const QnnModel &model, std::span<const Sample> samples);
/// The same through the density-matrix simulator under the channel.
double evaluate_noisy(const QnnModel &model, std::span<const Sample> samples, const NoiseChannel &channel);
std::vector<size_t> predict_all(const QnnModel &model, std::span<const Sample> samples);
std::vector<size_t> predict_all_noisy(const QnnModel &model, std::span<const Sample> samples,
                                      const NoiseChannel &channel);

using ConfusionMatrix = std::array<std::array<size_t, kNumClasses>, kNumClasses>;
/// Rows are true classes, columns predicted classes.
ConfusionMatrix confusion_matrix(const QnnModel &model, std::span<const Sample> samples);

struct TrainConfig {
    size_t epochs = 20;
    size_t batch_size = 32;
    double learning_rate = 0.001;
    double train_fraction = 0.8;
    uint64_t seed = 42;
    AdamConfig adam;

    void validate() const;
};

struct EpochMetrics {
    size_t epoch = 0;
    double cost = 0;
    double train_acc = 0;
    double test_acc = 0;

    bool operator==(const EpochMetrics &) const = default;
};

struct Metrics {
    /// Row 0 is the untrained model; row e follows epoch e.
    std::vector<EpochMetrics> epochs;
    /// Final model on the test split.
    ConfusionMatrix confusion{};

    bool operator==(const Metrics &) const = default;
};

struct TrainResult {
    QnnModel model;
    Metrics metrics;
    Dataset train;
    Dataset test;
};

/// Parameters drawn uniformly from [-pi, pi] with the given seed.
QnnModel init_model(size_t num_qubits, size_t num_layers, uint64_t seed);

/// Trains on train_set from init. Each epoch shuffles the training samples with
/// a generator seeded from config.seed, then takes one Adam step per batch.
TrainResult train_qnn(Dataset train_set, Dataset test_set, QnnModel init, const TrainConfig &config);

/// Stratified split, seeded init, then train_qnn.
TrainResult train(const Dataset &dataset, size_t num_layers, const TrainConfig &config);

}  // namespace qtl

#endif
