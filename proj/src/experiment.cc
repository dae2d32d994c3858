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

#include "qtlight/experiment.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qtlight/classify.h"
#include "qtlight/encoding.h"
#include "qtlight/error.h"

namespace qtl {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path &path, ErrorKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(kind, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json parse_json(std::string_view text, const std::string &what, ErrorKind kind) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(kind, what + " is not valid JSON: " + e.what());
    }
}

template <typename T>
T json_get(const ordered_json &j, const char *key, ErrorKind kind) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw Error(kind, std::string("field '") + key + "': " + e.what());
    }
}

std::string kind_label(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "config";
        case ErrorKind::Data:
            return "data";
        case ErrorKind::Numeric:
            return "numeric";
    }
    return "config";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return kExitConfig;
        case ErrorKind::Data:
            return kExitData;
        case ErrorKind::Numeric:
            return kExitNumeric;
    }
    return kExitConfig;
}

void report_error(std::ostream &err, int code, const std::string &kind, const std::string &message) {
    ordered_json j;
    j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    err << j.dump() << "\n";
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw invalid_argument("noise grid entry '" + item + "' is not a number");
        }
        grid.push_back(v);
    }
    if (grid.empty()) {
        throw invalid_argument("noise grid is empty");
    }
    return grid;
}

}  // namespace

void ExperimentConfig::resolve() {
    const bool overlap_cmd = command == "classify";
    const bool qnn_cmd = command == "train" || command == "sweep-noise";
    if (command != "gen-synthetic" && !overlap_cmd && !qnn_cmd) {
        throw invalid_argument("unknown command '" + command + "'");
    }
    if (method.empty()) {
        method = overlap_cmd ? "uu" : qnn_cmd ? "qnn" : "";
    }
    if (encoding.empty()) {
        encoding = overlap_cmd ? "frqi" : qnn_cmd ? "angle" : "";
    }
    if (layers == 0) {
        layers = command == "classify" ? 1 : 10;
    }
    if (side != 2 && side != 4) {
        throw invalid_argument("side must be 2 or 4, got " + std::to_string(side));
    }
    if (per_class < 1) {
        throw invalid_argument("per_class must be >= 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw invalid_argument("sigma must be a finite value >= 0");
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw invalid_argument("train_fraction must be in (0, 1)");
    }
    if (overlap_cmd) {
        if (method != "uu" && method != "var-uu") {
            throw invalid_argument("classify runs method uu or var-uu, not '" + method + "'");
        }
        if (encoding != "frqi" && encoding != "neqr") {
            throw invalid_argument("method " + method + " requires encoding frqi or neqr, not '" + encoding + "'");
        }
    }
    if (qnn_cmd) {
        if (method != "qnn") {
            throw invalid_argument(command + " runs method qnn, not '" + method + "'");
        }
        if (encoding != "angle") {
            throw invalid_argument("method qnn requires encoding angle, not '" + encoding + "'");
        }
        if (optimizer != "adam" && optimizer != "sgd") {
            throw invalid_argument("optimizer must be adam or sgd, not '" + optimizer + "'");
        }
        train_config().validate();
    }
    if (command == "sweep-noise") {
        if (channels.empty()) {
            for (NoiseKind k : kAllNoiseKinds) {
                channels.push_back(noise_kind_name(k));
            }
        }
        for (auto &c : channels) {
            c = noise_kind_name(parse_noise_kind(c));
        }
        if (grid.empty()) {
            grid = default_noise_grid();
        }
        for (double p : grid) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw invalid_argument("noise parameter " + fmt::format("{}", p) + " outside [0, 1]");
            }
        }
        if (model.empty()) {
            throw invalid_argument("sweep-noise needs a model file (--model)");
        }
    }
    if (command == "gen-synthetic" && format != "csv" && format != "pgm") {
        throw invalid_argument("format must be csv or pgm, not '" + format + "'");
    }
}

TrainConfig ExperimentConfig::train_config() const {
    TrainConfig t;
    t.epochs = epochs;
    t.batch_size = batch_size;
    t.learning_rate = learning_rate;
    t.train_fraction = train_fraction;
    t.seed = seed;
    t.adam.plain_sgd = optimizer == "sgd";
    return t;
}

SyntheticSpec ExperimentConfig::synthetic_spec() const {
    return SyntheticSpec{per_class, side, sigma, seed};
}

std::string config_to_json(const ExperimentConfig &c) {
    ordered_json j;
    j["command"] = c.command;
    j["data"] = c.data;
    j["per_class"] = c.per_class;
    j["sigma"] = c.sigma;
    j["side"] = c.side;
    j["seed"] = c.seed;
    j["method"] = c.method;
    j["encoding"] = c.encoding;
    j["layers"] = c.layers;
    j["epochs"] = c.epochs;
    j["batch_size"] = c.batch_size;
    j["learning_rate"] = c.learning_rate;
    j["train_fraction"] = c.train_fraction;
    j["optimizer"] = c.optimizer;
    j["channels"] = c.channels;
    j["grid"] = c.grid;
    j["model"] = c.model;
    j["output"] = c.output;
    j["format"] = c.format;
    return j.dump(2) + "\n";
}

void merge_config_json(ExperimentConfig &c, std::string_view json_text) {
    const auto kind = ErrorKind::InvalidArgument;
    ordered_json j = parse_json(json_text, "config", kind);
    if (!j.is_object()) {
        throw invalid_argument("config must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        const char *k = key.c_str();
        if (key == "command") {
            continue;  // the subcommand on the command line decides
        } else if (key == "data") {
            c.data = value.is_null() ? "" : json_get<std::string>(j, k, kind);
        } else if (key == "per_class") {
            c.per_class = json_get<size_t>(j, k, kind);
        } else if (key == "sigma") {
            c.sigma = json_get<double>(j, k, kind);
        } else if (key == "side") {
            c.side = json_get<size_t>(j, k, kind);
        } else if (key == "seed") {
            c.seed = json_get<uint64_t>(j, k, kind);
        } else if (key == "method") {
            c.method = json_get<std::string>(j, k, kind);
        } else if (key == "encoding") {
            c.encoding = json_get<std::string>(j, k, kind);
        } else if (key == "layers") {
            c.layers = json_get<size_t>(j, k, kind);
        } else if (key == "epochs") {
            c.epochs = json_get<size_t>(j, k, kind);
        } else if (key == "batch_size") {
            c.batch_size = json_get<size_t>(j, k, kind);
        } else if (key == "learning_rate") {
            c.learning_rate = json_get<double>(j, k, kind);
        } else if (key == "train_fraction") {
            c.train_fraction = json_get<double>(j, k, kind);
        } else if (key == "optimizer") {
            c.optimizer = json_get<std::string>(j, k, kind);
        } else if (key == "channels") {
            c.channels = json_get<std::vector<std::string>>(j, k, kind);
        } else if (key == "grid") {
            c.grid = json_get<std::vector<double>>(j, k, kind);
        } else if (key == "model") {
            c.model = json_get<std::string>(j, k, kind);
        } else if (key == "output") {
            c.output = json_get<std::string>(j, k, kind);
        } else if (key == "format") {
            c.format = json_get<std::string>(j, k, kind);
        } else {
            throw invalid_argument("unknown config key '" + key + "'");
        }
    }
}

std::vector<double> default_noise_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 10; k++) {
        grid.push_back(k / 10.0);
    }
    return grid;
}

std::vector<NoiseSweepRow> sweep_noise(const QnnModel &model, std::span<const Sample> samples,
                                       std::span<const NoiseKind> channels, std::span<const double> grid) {
    std::vector<NoiseSweepRow> rows;
    for (NoiseKind kind : channels) {
        for (double p : grid) {
            rows.push_back(NoiseSweepRow{kind, p, evaluate_noisy(model, samples, NoiseChannel(kind, p))});
        }
    }
    return rows;
}

std::string format_metrics_csv(const Metrics &metrics) {
    std::string out = "epoch,cost,train_acc,test_acc\n";
    for (const auto &e : metrics.epochs) {
        out += fmt::format("{},{},{},{}\n", e.epoch, e.cost, e.train_acc, e.test_acc);
    }
    return out;
}

std::string format_noise_sweep_csv(std::span<const NoiseSweepRow> rows) {
    std::string out = "channel,param,accuracy\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{}\n", noise_kind_name(r.channel), r.param, r.accuracy);
    }
    return out;
}

std::string format_model_json(const QnnModel &model) {
    std::string out = fmt::format("{{\n  \"num_qubits\": {},\n  \"num_layers\": {},\n  \"params\": [", model.num_qubits,
                                  model.num_layers);
    for (size_t k = 0; k < model.params.size(); k++) {
        out += fmt::format("{}\n    {:.17g}", k == 0 ? "" : ",", model.params[k]);
    }
    out += "\n  ]\n}\n";
    return out;
}

QnnModel parse_model_json(std::string_view text) {
    const auto kind = ErrorKind::Data;
    ordered_json j = parse_json(text, "model file", kind);
    if (!j.is_object()) {
        throw data_error("model file must hold a JSON object");
    }
    QnnModel model;
    model.num_qubits = json_get<size_t>(j, "num_qubits", kind);
    model.num_layers = json_get<size_t>(j, "num_layers", kind);
    model.params = json_get<std::vector<double>>(j, "params", kind);
    try {
        model.validate();
    } catch (const Error &e) {
        throw data_error(std::string("model file: ") + e.what());
    }
    return model;
}

std::string format_confusion_json(const ConfusionMatrix &confusion) {
    ordered_json j;
    j["classes"] = std::vector<std::string>(kClassNames.begin(), kClassNames.end());
    j["rows"] = "true class";
    j["columns"] = "predicted class";
    j["matrix"] = confusion;
    return j.dump(2) + "\n";
}

void write_file_atomic(const fs::path &path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw data_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw data_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw data_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

namespace {

Dataset load_source(const ExperimentConfig &c) {
    if (!c.data.empty()) {
        return load_dataset(c.data, c.side);
    }
    return gen_synthetic(c.synthetic_spec());
}

fs::path prepare_output(const ExperimentConfig &c) {
    fs::path dir(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw data_error("cannot create output directory " + dir.string());
    }
    return dir;
}

void cmd_gen_synthetic(const ExperimentConfig &c, std::ostream &out) {
    fs::path dir = prepare_output(c);
    Dataset dataset = gen_synthetic(c.synthetic_spec());
    if (c.format == "csv") {
        write_file_atomic(dir / "dataset.csv", format_dataset_csv(dataset));
    } else {
        std::array<size_t, kNumClasses> index{};
        for (size_t label = 0; label < kNumClasses; label++) {
            fs::create_directories(dir / std::string(kClassNames[label]));
        }
        for (const auto &s : dataset.samples()) {
            auto name = fmt::format("{:05d}.pgm", index[s.label]++);
            write_file_atomic(dir / std::string(kClassNames[s.label]) / name, format_pgm(s.image));
        }
    }
    write_file_atomic(dir / "run.json", config_to_json(c));
    auto counts = dataset.class_counts();
    out << fmt::format("wrote {} samples ({} red, {} yellow, {} green) to {}\n", dataset.size(), counts[0], counts[1],
                       counts[2], dir.string());
}

void cmd_classify(const ExperimentConfig &c, std::ostream &out) {
    fs::path dir = prepare_output(c);
    Dataset dataset = load_source(c);
    auto [train_set, test_set] = stratified_split(dataset, c.train_fraction, c.seed);
    ClassCentroids centroids = class_centroids(train_set);
    OverlapMethod method = c.method == "uu" ? OverlapMethod::UU : OverlapMethod::VariationalUU;
    ClassificationReport report = classify_dataset(test_set, centroids, method, parse_encoding(c.encoding), c.layers);

    ordered_json j;
    j["method"] = c.method;
    j["encoding"] = c.encoding;
    j["side"] = c.side;
    j["layers"] = method == OverlapMethod::UU ? 0 : c.layers;
    j["num_train"] = train_set.size();
    j["num_test"] = test_set.size();
    j["classes"] = std::vector<std::string>(kClassNames.begin(), kClassNames.end());
    j["class_counts"] = report.class_counts;
    j["correct"] = report.correct;
    j["per_class_accuracy"] = report.per_class_accuracy;
    j["class_probabilities"] = report.class_probabilities;
    j["weighted_accuracy"] = report.weighted_accuracy;
    write_file_atomic(dir / "results.json", j.dump(2) + "\n");
    write_file_atomic(dir / "run.json", config_to_json(c));
    out << fmt::format("{} / {}: weighted accuracy {:.4f} on {} test samples\n", c.method, c.encoding,
                       report.weighted_accuracy, test_set.size());
}

void cmd_train(const ExperimentConfig &c, std::ostream &out) {
    fs::path dir = prepare_output(c);
    Dataset dataset = load_source(c);
    TrainResult result = train(dataset, c.layers, c.train_config());
    write_file_atomic(dir / "metrics.csv", format_metrics_csv(result.metrics));
    write_file_atomic(dir / "model.json", format_model_json(result.model));
    write_file_atomic(dir / "confusion.json", format_confusion_json(result.metrics.confusion));
    write_file_atomic(dir / "run.json", config_to_json(c));
    const auto &last = result.metrics.epochs.back();
    out << fmt::format("epoch {}: cost {:.5f}, train acc {:.4f}, test acc {:.4f}\n", last.epoch, last.cost,
                       last.train_acc, last.test_acc);
}

void cmd_sweep_noise(const ExperimentConfig &c, std::ostream &out) {
    QnnModel model = parse_model_json(read_text(c.model, ErrorKind::Data));
    if (model.num_qubits != c.side * c.side) {
        throw invalid_argument(fmt::format("model has {} qubits but side {} images need {}", model.num_qubits, c.side,
                                           c.side * c.side));
    }
    fs::path dir = prepare_output(c);
    Dataset dataset = load_source(c);
    auto [train_set, test_set] = stratified_split(dataset, c.train_fraction, c.seed);
    std::vector<NoiseKind> kinds;
    for (const auto &name : c.channels) {
        kinds.push_back(parse_noise_kind(name));
    }
    auto rows = sweep_noise(model, test_set.samples(), kinds, c.grid);
    write_file_atomic(dir / "noise_sweep.csv", format_noise_sweep_csv(rows));
    write_file_atomic(dir / "run.json", config_to_json(c));
    out << fmt::format("swept {} channel(s) x {} parameter(s) on {} test samples\n", kinds.size(), c.grid.size(),
                       test_set.size());
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"qtlight: quantum traffic-light classification experiments"};
    app.require_subcommand(1);

    ExperimentConfig flags;
    std::string config_path, grid_text;
    struct Bound {
        CLI::Option *opt;
        std::function<void(ExperimentConfig &)> apply;
    };
    std::vector<Bound> bound;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        bound.push_back({sub->add_option("--data", flags.data, "dataset directory (default: synthetic)"),
                         [&](ExperimentConfig &c) { c.data = flags.data; }});
        bound.push_back({sub->add_option("--per-class", flags.per_class, "synthetic samples per class"),
                         [&](ExperimentConfig &c) { c.per_class = flags.per_class; }});
        bound.push_back({sub->add_option("--sigma", flags.sigma, "synthetic pixel noise standard deviation"),
                         [&](ExperimentConfig &c) { c.sigma = flags.sigma; }});
        bound.push_back({sub->add_option("--side", flags.side, "image side, 2 or 4"),
                         [&](ExperimentConfig &c) { c.side = flags.side; }});
        bound.push_back({sub->add_option("--seed", flags.seed, "seed for data, split, init and shuffling"),
                         [&](ExperimentConfig &c) { c.seed = flags.seed; }});
        bound.push_back({sub->add_option("--output,-o", flags.output, "output directory"),
                         [&](ExperimentConfig &c) { c.output = flags.output; }});
    };
    auto split_opts = [&](CLI::App *sub) {
        bound.push_back({sub->add_option("--train-fraction", flags.train_fraction, "train share of each class"),
                         [&](ExperimentConfig &c) { c.train_fraction = flags.train_fraction; }});
    };
    auto qnn_opts = [&](CLI::App *sub) {
        bound.push_back({sub->add_option("--method", flags.method, "qnn"),
                         [&](ExperimentConfig &c) { c.method = flags.method; }});
        bound.push_back({sub->add_option("--encoding", flags.encoding, "angle"),
                         [&](ExperimentConfig &c) { c.encoding = flags.encoding; }});
    };

    CLI::App *gen = app.add_subcommand("gen-synthetic", "write a synthetic traffic-light dataset");
    common(gen);
    bound.push_back({gen->add_option("--format", flags.format, "csv (dataset.csv) or pgm (class directories)"),
                     [&](ExperimentConfig &c) { c.format = flags.format; }});

    CLI::App *classify = app.add_subcommand("classify", "centroid overlap classification (uu, var-uu)");
    common(classify);
    split_opts(classify);
    bound.push_back({classify->add_option("--method", flags.method, "uu or var-uu"),
                     [&](ExperimentConfig &c) { c.method = flags.method; }});
    bound.push_back({classify->add_option("--encoding", flags.encoding, "frqi or neqr"),
                     [&](ExperimentConfig &c) { c.encoding = flags.encoding; }});
    bound.push_back({classify->add_option("--layers", flags.layers, "var-uu repetitions m"),
                     [&](ExperimentConfig &c) { c.layers = flags.layers; }});

    CLI::App *trn = app.add_subcommand("train", "train the variational QNN");
    common(trn);
    split_opts(trn);
    qnn_opts(trn);
    bound.push_back({trn->add_option("--layers", flags.layers, "entangling layers (default 10)"),
                     [&](ExperimentConfig &c) { c.layers = flags.layers; }});
    bound.push_back({trn->add_option("--epochs", flags.epochs, "training epochs"),
                     [&](ExperimentConfig &c) { c.epochs = flags.epochs; }});
    bound.push_back({trn->add_option("--batch-size", flags.batch_size, "mini-batch size"),
                     [&](ExperimentConfig &c) { c.batch_size = flags.batch_size; }});
    bound.push_back({trn->add_option("--lr,--learning-rate", flags.learning_rate, "learning rate"),
                     [&](ExperimentConfig &c) { c.learning_rate = flags.learning_rate; }});
    bound.push_back({trn->add_option("--optimizer", flags.optimizer, "adam or sgd"),
                     [&](ExperimentConfig &c) { c.optimizer = flags.optimizer; }});

    CLI::App *sweep = app.add_subcommand("sweep-noise", "noisy accuracy of a trained model over a parameter grid");
    common(sweep);
    split_opts(sweep);
    qnn_opts(sweep);
    bound.push_back({sweep->add_option("--model", flags.model, "model.json from a train run"),
                     [&](ExperimentConfig &c) { c.model = flags.model; }});
    bound.push_back({sweep->add_option("--channel", flags.channels, "channel name(s); default all six"),
                     [&](ExperimentConfig &c) { c.channels = flags.channels; }});
    bound.push_back({sweep->add_option("--grid", grid_text, "comma-separated parameters; default 0,0.1,...,1"),
                     [&](ExperimentConfig &c) { c.grid = parse_grid(grid_text); }});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        report_error(err, kExitConfig, "config", e.what());
        return kExitConfig;
    }

    try {
        ExperimentConfig config;
        config.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            merge_config_json(config, read_text(config_path, ErrorKind::InvalidArgument));
        }
        for (auto &b : bound) {
            if (b.opt->count() > 0) {
                b.apply(config);
            }
        }
        config.resolve();
        if (config.command == "gen-synthetic") {
            cmd_gen_synthetic(config, out);
        } else if (config.command == "classify") {
            cmd_classify(config, out);
        } else if (config.command == "train") {
            cmd_train(config, out);
        } else {
            cmd_sweep_noise(config, out);
        }
    } catch (const Error &e) {
        int code = exit_code_for(e.kind());
        report_error(err, code, kind_label(e.kind()), e.what());
        return code;
    } catch (const fs::filesystem_error &e) {
        report_error(err, kExitData, "data", e.what());
        return kExitData;
    }
    return kExitOk;
}

}  // namespace qtl
