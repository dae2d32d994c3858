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

#ifndef QTLIGHT_EXPERIMENT_H
#define QTLIGHT_EXPERIMENT_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtlight/dataset.h"
#include "qtlight/noise.h"
#include "qtlight/qnn.h"

namespace qtl {

/// Process exit codes of the experiment runner.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitData = 3,
    kExitNumeric = 4,
};

/// Resolved settings of one command. Serialized verbatim as run.json, and
/// accepted back as a --config file.
struct ExperimentConfig {
    std::string command;
    /// Dataset directory; empty selects the synthetic generator.
    std::string data;
    size_t per_class = 200;
    double sigma = 20.0;
    size_t side = 2;
    uint64_t seed = 42;
    std::string method;
    std::string encoding;
    size_t layers = 0;
    size_t epochs = 20;
    size_t batch_size = 32;
    double learning_rate = 0.001;
    double train_fraction = 0.8;
    std::string optimizer = "adam";
    std::vector<std::string> channels;
    std::vector<double> grid;
    std::string model;
    std::string output = ".";
    /// gen-synthetic only: "csv" or "pgm".
    std::string format = "csv";

    /// Fills command-dependent defaults and checks method/encoding compatibility.
    /// Throws an invalid-argument error on any inconsistency.
    void resolve();

    TrainConfig train_config() const;
    SyntheticSpec synthetic_spec() const;
};

std::string config_to_json(const ExperimentConfig &config);
/// Overlays the keys present in the JSON text onto config. Unknown keys are rejected.
void merge_config_json(ExperimentConfig &config, std::string_view json_text);

/// Noise parameter grid 0.0, 0.1, ..., 1.0.
std::vector<double> default_noise_grid();

struct NoiseSweepRow {
    NoiseKind channel;
    double param;
    double accuracy;
};

/// Noisy accuracy of the model on the samples for every (channel, param) pair,
/// channel-major.
std::vector<NoiseSweepRow> sweep_noise(const QnnModel &model, std::span<const Sample> samples,
                                       std::span<const NoiseKind> channels, std::span<const double> grid);

/// "epoch,cost,train_acc,test_acc" followed by one row per recorded epoch.
std::string format_metrics_csv(const Metrics &metrics);
/// "channel,param,accuracy" followed by one row per sweep point.
std::string format_noise_sweep_csv(std::span<const NoiseSweepRow> rows);
/// {"num_qubits", "num_layers", "params"} with 17 significant digits per parameter.
std::string format_model_json(const QnnModel &model);
QnnModel parse_model_json(std::string_view text);
std::string format_confusion_json(const ConfusionMatrix &confusion);

/// Writes to a sibling temporary file and renames it over the destination.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

/// Entry point of the qtlight tool. Errors are reported on err as one JSON
/// line {"error": {"code", "kind", "message"}} and mapped to ExitCode values.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qtl

#endif
