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

#include "qtlight/qnn.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "qtlight/classify.h"
#include "qtlight/encoding.h"
#include "qtlight/error.h"
#include "qtlight/simulator.h"

namespace qtl {

namespace {

constexpr double kShift = std::numbers::pi / 2;

void check_label(int label) {
    if (label < 0 || label >= static_cast<int>(kNumClasses)) {
        throw invalid_argument("label " + std::to_string(label) + " outside [0, 3)");
    }
}

template <typename State>
Readout readout_of(const State &state) {
    if (state.num_qubits() < kReadoutQubits) {
        throw invalid_argument("readout needs at least 3 qubits");
    }
    Readout r;
    for (size_t q = 0; q < kReadoutQubits; q++) {
        r[q] = (1.0 - expect_z(state, q)) / 2.0;
    }
    return r;
}

// Batch boundaries [start, end) over n items.
std::vector<std::pair<size_t, size_t>> batches(size_t n, size_t batch_size) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t start = 0; start < n; start += batch_size) {
        out.emplace_back(start, std::min(n, start + batch_size));
    }
    return out;
}

}  // namespace

QnnModel QnnModel::zeros(size_t num_qubits, size_t num_layers) {
    QnnModel m{num_qubits, num_layers, std::vector<double>(num_qubits * num_layers, 0.0)};
    m.validate();
    return m;
}

void QnnModel::validate() const {
    if (num_qubits < kReadoutQubits) {
        throw invalid_argument("QNN needs at least 3 qubits, got " + std::to_string(num_qubits));
    }
    if (num_layers < 1) {
        throw invalid_argument("QNN needs at least one layer");
    }
    if (params.size() != num_qubits * num_layers) {
        throw invalid_argument("QNN with " + std::to_string(num_layers) + " layers on " + std::to_string(num_qubits) +
                               " qubits needs " + std::to_string(num_qubits * num_layers) + " parameters, got " +
                               std::to_string(params.size()));
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw invalid_argument("QNN parameters must be finite");
        }
    }
}

ParametrizedCircuit build_qnn_circuit(const QnnModel &model, const GrayImage &image) {
    model.validate();
    if (image.size() != model.num_qubits) {
        throw invalid_argument("QNN on " + std::to_string(model.num_qubits) + " qubits cannot take a " +
                               std::to_string(image.size()) + "-pixel image");
    }
    const size_t n = model.num_qubits;
    ParametrizedCircuit pc{build_angle_encoding(image), {}};
    for (size_t l = 0; l < model.num_layers; l++) {
        for (size_t q = 0; q < n; q++) {
            pc.param_gates.push_back(pc.circuit.size());
            pc.circuit.append(gates::ry(q, model.params[l * n + q]));
        }
        for (size_t q = 0; q < n; q++) {
            pc.circuit.append(gates::cnot(q, (q + 1) % n));
        }
    }
    return pc;
}

Readout readout(const PureState &state) {
    return readout_of(state);
}

Readout readout(const MixedState &state) {
    return readout_of(state);
}

Readout qnn_forward(const QnnModel &model, const GrayImage &image) {
    return readout(run_circuit(build_qnn_circuit(model, image).circuit));
}

Readout qnn_forward_noisy(const QnnModel &model, const GrayImage &image, const NoiseChannel &channel) {
    return readout(run_noisy(build_qnn_circuit(model, image).circuit, channel));
}

size_t predict(const Readout &r) {
    return argmax_lowest_tie(r);
}

double qnn_loss(const Readout &pred, int label) {
    check_label(label);
    double loss = 0;
    for (size_t k = 0; k < kReadoutQubits; k++) {
        double target = static_cast<int>(k) == label ? 1.0 : 0.0;
        loss += (pred[k] - target) * (pred[k] - target);
    }
    return loss;
}

double qnn_cost(const QnnModel &model, std::span<const Sample> samples) {
    if (samples.empty()) {
        throw invalid_argument("cost of an empty sample set");
    }
    double total = 0;
    for (const auto &s : samples) {
        total += qnn_loss(qnn_forward(model, s.image), s.label);
    }
    return total / static_cast<double>(samples.size());
}

std::vector<double> param_shift_sample_grad(const ParametrizedCircuit &pc, int label) {
    check_label(label);
    const Readout base = readout(run_circuit(pc.circuit));
    // d loss / d <Z_k> = 2 (r_k - y_k) * (-1/2).
    Readout dloss_dz;
    for (size_t k = 0; k < kReadoutQubits; k++) {
        double target = static_cast<int>(k) == label ? 1.0 : 0.0;
        dloss_dz[k] = -(base[k] - target);
    }
    std::vector<double> grad(pc.param_gates.size(), 0.0);
    Circuit shifted = pc.circuit;
    for (size_t j = 0; j < pc.param_gates.size(); j++) {
        const size_t g = pc.param_gates[j];
        const double theta = pc.circuit.gates()[g].params[0];
        shifted.set_angle(g, theta + kShift);
        const PureState plus = run_circuit(shifted);
        shifted.set_angle(g, theta - kShift);
        const PureState minus = run_circuit(shifted);
        shifted.set_angle(g, theta);
        double d = 0;
        for (size_t k = 0; k < kReadoutQubits; k++) {
            double dz = (expect_z(plus, k) - expect_z(minus, k)) / 2.0;
            d += dloss_dz[k] * dz;
        }
        grad[j] = d;
    }
    return grad;
}

std::vector<double> param_shift_grad(const QnnModel &model, std::span<const Sample> batch) {
    if (batch.empty()) {
        throw invalid_argument("gradient of an empty batch");
    }
    std::vector<double> total(model.params.size(), 0.0);
    for (const auto &s : batch) {
        auto g = param_shift_sample_grad(build_qnn_circuit(model, s.image), s.label);
        for (size_t j = 0; j < total.size(); j++) {
            total[j] += g[j];
        }
    }
    for (auto &v : total) {
        v /= static_cast<double>(batch.size());
    }
    return total;
}

std::vector<size_t> predict_all(const QnnModel &model, std::span<const Sample> samples) {
    std::vector<size_t> out;
    out.reserve(samples.size());
    for (const auto &s : samples) {
        out.push_back(predict(qnn_forward(model, s.image)));
    }
    return out;
}

std::vector<size_t> predict_all_noisy(const QnnModel &model, std::span<const Sample> samples,
                                      const NoiseChannel &channel) {
    std::vector<size_t> out;
    out.reserve(samples.size());
    for (const auto &s : samples) {
        out.push_back(predict(qnn_forward_noisy(model, s.image, channel)));
    }
    return out;
}

namespace {

double accuracy_of(std::span<const Sample> samples, const std::vector<size_t> &predictions) {
    if (samples.empty()) {
        throw invalid_argument("accuracy of an empty sample set");
    }
    size_t correct = 0;
    for (size_t k = 0; k < samples.size(); k++) {
        correct += predictions[k] == static_cast<size_t>(samples[k].label);
    }
    return static_cast<double>(correct) / static_cast<double>(samples.size());
}

}  // namespace

double evaluate(const QnnModel &model, std::span<const Sample> samples) {
    return accuracy_of(samples, predict_all(model, samples));
}

double evaluate_noisy(const QnnModel &model, std::span<const Sample> samples, const NoiseChannel &channel) {
    return accuracy_of(samples, predict_all_noisy(model, samples, channel));
}

ConfusionMatrix confusion_matrix(const QnnModel &model, std::span<const Sample> samples) {
    ConfusionMatrix m{};
    auto preds = predict_all(model, samples);
    for (size_t k = 0; k < samples.size(); k++) {
        m[samples[k].label][preds[k]]++;
    }
    return m;
}

void TrainConfig::validate() const {
    if (batch_size < 1) {
        throw invalid_argument("batch size must be >= 1");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw invalid_argument("learning rate must be positive");
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw invalid_argument("train fraction must be in (0, 1)");
    }
}

QnnModel init_model(size_t num_qubits, size_t num_layers, uint64_t seed) {
    QnnModel model = QnnModel::zeros(num_qubits, num_layers);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    for (auto &p : model.params) {
        p = dist(rng);
    }
    return model;
}

TrainResult train_qnn(Dataset train_set, Dataset test_set, QnnModel init, const TrainConfig &config) {
    config.validate();
    init.validate();
    auto counts = train_set.class_counts();
    for (size_t c = 0; c < kNumClasses; c++) {
        if (counts[c] == 0) {
            throw data_error("class " + std::string(kClassNames[c]) + " is absent from the training split");
        }
    }
    if (test_set.empty()) {
        throw data_error("test split is empty");
    }

    TrainResult result{std::move(init), {}, std::move(train_set), std::move(test_set)};
    QnnModel &model = result.model;
    const auto &train_samples = result.train.samples();
    const auto &test_samples = result.test.samples();

    auto record = [&](size_t epoch) {
        result.metrics.epochs.push_back(EpochMetrics{
            epoch,
            qnn_cost(model, train_samples),
            evaluate(model, train_samples),
            evaluate(model, test_samples),
        });
    };
    record(0);

    Adam adam(model.params.size(), config.learning_rate, config.adam);
    std::mt19937_64 shuffle_rng(config.seed);
    std::vector<size_t> order(train_samples.size());
    std::vector<Sample> batch;
    for (size_t epoch = 1; epoch <= config.epochs; epoch++) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        for (auto [start, end] : batches(order.size(), config.batch_size)) {
            batch.clear();
            for (size_t k = start; k < end; k++) {
                batch.push_back(train_samples[order[k]]);
            }
            auto grad = param_shift_grad(model, batch);
            adam.step(model.params, grad);
        }
        for (double p : model.params) {
            if (!std::isfinite(p)) {
                throw numeric_error("training diverged: non-finite parameter after epoch " + std::to_string(epoch));
            }
        }
        record(epoch);
    }
    result.metrics.confusion = confusion_matrix(model, test_samples);
    return result;
}

TrainResult train(const Dataset &dataset, size_t num_layers, const TrainConfig &config) {
    config.validate();
    if (dataset.empty()) {
        throw data_error("cannot train on an empty dataset");
    }
    auto [train_set, test_set] = stratified_split(dataset, config.train_fraction, config.seed);
    QnnModel init = init_model(dataset[0].image.size(), num_layers, config.seed);
    return train_qnn(std::move(train_set), std::move(test_set), std::move(init), config);
}

}  // namespace qtl
