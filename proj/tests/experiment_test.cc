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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>

#include "qtlight/classify.h"
#include "qtlight/error.h"
#include "test_util.h"

using namespace qtl;
using namespace qtl::testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qtlight");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / "qtlight_cli_test" / info->name();
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
    std::string dir(const std::string &name) const {
        return (root_ / name).string();
    }
    fs::path root_;
};

const std::vector<std::string> kSmallTrain = {"--per-class", "20", "--epochs", "2", "--layers", "2", "--batch-size",
                                              "8", "--lr", "0.05"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST(NoiseGrid, Default) {
    std::vector<double> g = default_noise_grid();
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(g[3], 0.3);
}

TEST(ModelJson, RoundTripExact) {
    QnnModel m = init_model(4, 3, 99);
    m.params[0] = 0.1 + 0.2;
    EXPECT_EQ(parse_model_json(format_model_json(m)), m);
    EXPECT_THROW(parse_model_json("{\"num_qubits\": 4}"), Error);
    EXPECT_THROW(parse_model_json("{\"num_qubits\": 4, \"num_layers\": 1, \"params\": [1, 2]}"), Error);
    EXPECT_THROW(parse_model_json("not json"), Error);
}

TEST(MetricsCsv, Format) {
    Metrics m;
    m.epochs.push_back({0, 0.5, 0.25, 1.0});
    m.epochs.push_back({1, 0.125, 0.5, 0.75});
    EXPECT_EQ(format_metrics_csv(m), "epoch,cost,train_acc,test_acc\n0,0.5,0.25,1\n1,0.125,0.5,0.75\n");
}

TEST(NoiseSweepCsv, Format) {
    std::vector<NoiseSweepRow> rows = {{NoiseKind::Depolarizing, 0.0, 1.0}, {NoiseKind::PhaseDamping, 0.5, 0.25}};
    EXPECT_EQ(format_noise_sweep_csv(rows), "channel,param,accuracy\ndepolarizing,0,1\nphase_damping,0.5,0.25\n");
}

TEST(Config, ResolveChecksCompatibility) {
    ExperimentConfig c;
    c.command = "classify";
    c.resolve();
    EXPECT_EQ(c.method, "uu");
    EXPECT_EQ(c.encoding, "frqi");
    c.encoding = "angle";
    EXPECT_THROW(c.resolve(), Error);
    ExperimentConfig t;
    t.command = "train";
    t.resolve();
    EXPECT_EQ(t.method, "qnn");
    EXPECT_EQ(t.encoding, "angle");
    EXPECT_EQ(t.layers, 10u);
    t.encoding = "frqi";
    EXPECT_THROW(t.resolve(), Error);
}

TEST(Config, JsonRoundTrip) {
    ExperimentConfig c;
    c.command = "sweep-noise";
    c.model = "m.json";
    c.resolve();
    ExperimentConfig back;
    back.command = "sweep-noise";
    merge_config_json(back, config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_THROW(merge_config_json(back, "{\"bogus\": 1}"), Error);
    EXPECT_THROW(merge_config_json(back, "{\"side\": \"two\"}"), Error);
}

TEST_F(CliTest, ClassifyCleanTemplatesIsPerfect) {
    CliResult r = cli({"classify", "--method", "uu", "--encoding", "frqi", "--sigma", "0", "--per-class", "10",
                       "-o", dir("out")});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(slurp(dir("out") + "/results.json"));
    EXPECT_EQ(j["weighted_accuracy"].get<double>(), 1.0);
    EXPECT_TRUE(fs::exists(dir("out") + "/run.json"));
}

TEST_F(CliTest, ResultsAreSelfConsistent) {
    for (std::string method : {"uu", "var-uu"}) {
        for (std::string enc : {"frqi", "neqr"}) {
            std::string out = dir(method + enc);
            CliResult r = cli({"classify", "--method", method, "--encoding", enc, "--per-class", "15", "--sigma", "60",
                               "-o", out});
            ASSERT_EQ(r.code, 0) << r.err;
            json j = json::parse(slurp(out + "/results.json"));
            auto c = j["per_class_accuracy"].get<std::vector<double>>();
            auto n = j["class_probabilities"].get<std::vector<double>>();
            auto counts = j["class_counts"].get<std::vector<size_t>>();
            auto correct = j["correct"].get<std::vector<size_t>>();
            double sum = 0, total = 0;
            for (size_t k = 0; k < 3; k++) {
                EXPECT_DOUBLE_EQ(c[k], static_cast<double>(correct[k]) / counts[k]);
                total += counts[k];
            }
            for (size_t k = 0; k < 3; k++) {
                EXPECT_DOUBLE_EQ(n[k], counts[k] / total);
                sum += c[k] * n[k];
            }
            EXPECT_NEAR(j["weighted_accuracy"].get<double>(), sum, 1e-12);
            EXPECT_NEAR(j["weighted_accuracy"].get<double>(), weighted_accuracy(c, n), 1e-12);
        }
    }
}

TEST_F(CliTest, ClassifyIsByteIdentical) {
    std::vector<std::string> args = {"classify", "--method", "var-uu", "--encoding", "neqr", "--per-class", "8"};
    ASSERT_EQ(cli(concat(args, {"-o", dir("a")})).code, 0);
    std::map<std::string, std::string> first;
    for (std::string f : {"results.json", "run.json"}) {
        first[f] = slurp(dir("a") + "/" + f);
    }
    ASSERT_EQ(cli(concat(args, {"-o", dir("a")})).code, 0);
    for (const auto &[f, bytes] : first) {
        EXPECT_EQ(slurp(dir("a") + "/" + f), bytes) << f;
    }
}

TEST_F(CliTest, TrainIsByteIdenticalAndSweepMatches) {
    ASSERT_EQ(cli(concat(concat({"train"}, kSmallTrain), {"-o", dir("a")})).code, 0);
    std::map<std::string, std::string> first;
    for (std::string f : {"metrics.csv", "model.json", "confusion.json", "run.json"}) {
        first[f] = slurp(dir("a") + "/" + f);
        EXPECT_FALSE(first[f].empty()) << f;
    }
    ASSERT_EQ(cli(concat(concat({"train"}, kSmallTrain), {"-o", dir("a")})).code, 0);
    for (const auto &[f, bytes] : first) {
        EXPECT_EQ(slurp(dir("a") + "/" + f), bytes) << f;
    }
    for (const auto &entry : fs::directory_iterator(dir("a"))) {
        EXPECT_NE(entry.path().extension(), ".tmp");
    }

    CliResult s = cli({"sweep-noise", "--config", dir("a") + "/run.json", "--model", dir("a") + "/model.json",
                       "--channel", "depolarizing", "--grid", "0,0.5", "-o", dir("sweep")});
    ASSERT_EQ(s.code, 0) << s.err;
    std::istringstream metrics(slurp(dir("a") + "/metrics.csv"));
    std::string line, last;
    while (std::getline(metrics, line)) {
        last = line;
    }
    std::string final_test_acc = last.substr(last.rfind(',') + 1);
    std::istringstream sweep(slurp(dir("sweep") + "/noise_sweep.csv"));
    std::getline(sweep, line);
    EXPECT_EQ(line, "channel,param,accuracy");
    std::getline(sweep, line);
    EXPECT_EQ(line, "depolarizing,0," + final_test_acc);
}

TEST_F(CliTest, ModelJsonLoadsBack) {
    ASSERT_EQ(cli(concat(concat({"train"}, kSmallTrain), {"-o", dir("a")})).code, 0);
    QnnModel m = parse_model_json(slurp(dir("a") + "/model.json"));
    EXPECT_EQ(m.num_layers, 2u);
    EXPECT_EQ(format_model_json(m), slurp(dir("a") + "/model.json"));
}

TEST_F(CliTest, GenSyntheticFeedsLoader) {
    ASSERT_EQ(cli({"gen-synthetic", "--per-class", "4", "--format", "pgm", "-o", dir("pgm")}).code, 0);
    ASSERT_EQ(cli({"gen-synthetic", "--per-class", "4", "-o", dir("csv")}).code, 0);
    Dataset a = load_dataset(dir("pgm"), 2), b = load_dataset(dir("csv"), 2);
    EXPECT_EQ(a.class_counts(), (std::array<size_t, 3>{4, 4, 4}));
    EXPECT_EQ(b, gen_synthetic({.per_class = 4, .side = 2, .brightness_sigma = 20, .seed = 42}));
    CliResult r = cli({"classify", "--data", dir("csv"), "-o", dir("cls")});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, FlagsOverrideConfig) {
    {
        std::ofstream(dir("cfg.json")) << R"({"per_class": 5, "sigma": 0, "seed": 3})";
    }
    ASSERT_EQ(cli({"classify", "--config", dir("cfg.json"), "--per-class", "6", "-o", dir("o")}).code, 0);
    json run = json::parse(slurp(dir("o") + "/run.json"));
    EXPECT_EQ(run["per_class"], 6);
    EXPECT_EQ(run["seed"], 3);
    EXPECT_EQ(run["sigma"], 0.0);
    json res = json::parse(slurp(dir("o") + "/results.json"));
    EXPECT_EQ(res["num_train"].get<int>() + res["num_test"].get<int>(), 18);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
    std::vector<std::vector<std::string>> bad = {
        {"classify", "--encoding", "angle"},
        {"train", "--encoding", "frqi"},
        {"classify", "--method", "qnn"},
        {"classify", "--side", "3"},
        {"train", "--lr", "0"},
        {"train", "--optimizer", "rmsprop"},
        {"sweep-noise"},
        {"sweep-noise", "--model", "m.json", "--channel", "thermal"},
        {"sweep-noise", "--model", "m.json", "--grid", "0,1.5"},
        {"classify", "--unknown-flag"},
        {"nonsense"},
        {},
    };
    for (auto args : bad) {
        args.push_back("-o");
        args.push_back(dir("x"));
        CliResult r = cli(args);
        EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]) << " " << r.err;
        if (r.code == 2) {
            json e = json::parse(r.err);
            EXPECT_EQ(e["error"]["code"], 2);
            EXPECT_EQ(e["error"]["kind"], "config");
        }
    }
}

TEST_F(CliTest, DataErrorsExitThree) {
    EXPECT_EQ(cli({"classify", "--data", dir("missing"), "-o", dir("x")}).code, 3);
    {
        std::ofstream(dir("bad.json")) << "{}";
    }
    CliResult r = cli({"sweep-noise", "--model", dir("bad.json"), "-o", dir("x")});
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_EQ(json::parse(r.err)["error"]["kind"], "data");
}

TEST_F(CliTest, HelpExitsZero) {
    CliResult r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sweep-noise"), std::string::npos);
}

TEST_F(CliTest, AtomicWriteReplaces) {
    fs::path p = dir("f.txt");
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    EXPECT_EQ(slurp(p), "two");
    size_t files = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(root_)) {
        files++;
    }
    EXPECT_EQ(files, 1u);
}
