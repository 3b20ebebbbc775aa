// Copyright 2026 The forgetsim Authors
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
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "commands.hpp"
#include "config_file.hpp"
#include "options.hpp"

using namespace forgetsim::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / "forgetsim_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(ConfigFile, ParsesKeyValueWithComments) {
    std::istringstream in("# header\nn = 32\n\ndepth=8   # trailing\n p_f = 0:1:0.5 \n");
    auto cfg = ConfigFile::parse(in, "test.cfg");
    ASSERT_EQ(cfg.entries().size(), 3u);
    EXPECT_EQ(cfg.entries().at("n").value, "32");
    EXPECT_EQ(cfg.entries().at("depth").line, 4u);
    RunOptions o;
    apply_config(o, cfg);
    EXPECT_EQ(o.n, (std::vector<std::size_t>{32}));
    EXPECT_EQ(o.p_f, (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(ConfigFile, DiagnosticsNameTheLine) {
    auto expect_error = [](const std::string &text, const std::string &needle) {
        std::istringstream in(text);
        try {
            RunOptions o;
            apply_config(o, ConfigFile::parse(in, "x.cfg"));
            ADD_FAILURE() << "no error for: " << text;
        } catch (const ConfigError &e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_error("n = 4\nbogus\n", "x.cfg:2");
    expect_error("n = 4\nn = 6\n", "duplicate key 'n'");
    expect_error("n = 4\ncolour = red\n", "x.cfg:2: unknown key 'colour'");
    expect_error("depth = eight\n", "x.cfg:1");
    expect_error("p_f = 0:1\n", "start:stop:step");
    expect_error("initial = warm\n", "initial");
    expect_error("realizations = 0\n", "realizations");
    expect_error("n =\n", "missing value");
}

TEST(Options, NumberLists) {
    EXPECT_EQ(parse_number_list("0.1, 0.2,0.3", "t"), (std::vector<double>{0.1, 0.2, 0.3}));
    EXPECT_EQ(parse_number_list("0:0.3:0.1", "t"), (std::vector<double>{0.0, 0.1, 0.2, 0.3}));
    EXPECT_EQ(parse_count_list("4,8,16", "t"), (std::vector<std::size_t>{4, 8, 16}));
    EXPECT_THROW(parse_count_list("4.5", "t"), ConfigError);
    EXPECT_THROW(parse_number_list("1,,2", "t"), ConfigError);
}

TEST(Cli, UnknownFlagExitsWithUsage) {
    auto r = run({"forget-sweep", "--bogus"});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(run({}).code, kExitConfig);
    EXPECT_EQ(run({"no-such-command"}).code, kExitConfig);
}

TEST(Cli, InvalidValuesExitWithDiagnostic) {
    auto odd = run({"forget-sweep", "--n", "5", "--out", "-", "-q"});
    EXPECT_EQ(odd.code, kExitConfig);
    EXPECT_NE(odd.err.find("even"), std::string::npos);
    auto rate = run({"forget-sweep", "--pf", "0,2", "--out", "-", "-q"});
    EXPECT_EQ(rate.code, kExitConfig);
    auto pm = run({"forget-sweep", "--pm", "0.2", "--out", "-", "-q"});
    EXPECT_EQ(pm.code, kExitConfig);
    EXPECT_NE(pm.err.find("p_m"), std::string::npos);

    auto cfg = scratch("bad.cfg");
    std::ofstream(cfg) << "n = 8\nwidth = 3\n";
    auto bad = run({"forget-sweep", "--config", cfg.string()});
    EXPECT_EQ(bad.code, kExitConfig);
    EXPECT_NE(bad.err.find("bad.cfg:2"), std::string::npos);
    EXPECT_EQ(run({"forget-sweep", "--config", scratch("missing.cfg").string()}).code, kExitConfig);
}

TEST(Cli, WorkersEnvironmentVariable) {
    setenv("FORGETSIM_WORKERS", "zero", 1);
    EXPECT_EQ(run({"forget-sweep", "--n", "4", "--out", "-", "-q"}).code, kExitConfig);
    setenv("FORGETSIM_WORKERS", "2", 1);
    auto ok = run({"forget-sweep", "--n", "4", "--depth", "2", "--pf", "0.5", "--realizations", "4", "--out", "-",
                   "-q"});
    EXPECT_EQ(ok.code, kExitOk);
    unsetenv("FORGETSIM_WORKERS");
}

TEST(Cli, StreamsCsvToStdout) {
    auto r = run({"forget-sweep", "--n", "8", "--depth", "4", "--pf", "0,0.5,1", "--realizations", "10", "--out",
                  "-"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "# schema=1");
    EXPECT_EQ(lines[1], "n,depth,p_m,p_f,s_per_n,stderr,realizations");
    EXPECT_EQ(lines[2].rfind("8,4,0,0,0,0,10", 0), 0u);
    EXPECT_NE(r.err.find("[forget-sweep]"), std::string::npos);
}

TEST(Cli, OutputsAreByteIdenticalAcrossWorkerCounts) {
    auto one = scratch("det_w1");
    auto three = scratch("det_w3");
    std::vector<std::string> common{"phase-diagram", "--n",   "8",    "--depth", "6",  "--pm",
                                    "0,0.2",         "--pf",  "0:0.3:0.1", "--realizations", "25", "-q"};
    auto a = common;
    a.insert(a.end(), {"--workers", "1", "--out", one.string(), "--dump-trajectories"});
    auto b = common;
    b.insert(b.end(), {"--workers", "3", "--out", three.string(), "--dump-trajectories"});
    ASSERT_EQ(run(a).code, kExitOk);
    ASSERT_EQ(run(b).code, kExitOk);
    EXPECT_EQ(slurp(one.string() + ".csv"), slurp(three.string() + ".csv"));
    EXPECT_EQ(slurp(one.string() + ".jsonl"), slurp(three.string() + ".jsonl"));
    EXPECT_FALSE(slurp(one.string() + ".csv").empty());
}

TEST(Cli, ManifestDescribesTheRun) {
    auto stem = scratch("manifest");
    auto r = run({"time-series", "--n", "4,8", "--depth", "5", "--pf", "0.2", "--realizations", "6", "--seed", "9",
                  "--out", stem.string(), "-q"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto m = nlohmann::json::parse(slurp(stem.string() + ".json"));
    EXPECT_EQ(m["command"], "time-series");
    EXPECT_EQ(m["master_seed"], 9);
    EXPECT_TRUE(m.contains("code_version"));
    EXPECT_TRUE(m.contains("started_at"));
    EXPECT_TRUE(m.contains("finished_at"));
    EXPECT_EQ(m["conventions"]["stratum_order"], nlohmann::json::array({"gates", "measurements", "forgets"}));
    EXPECT_EQ(m["conventions"]["entropy_base"], "log2 (bits)");
    EXPECT_EQ(m["sweeps"][0]["axis1"]["parameter"], "n");
    for (const auto &path : m["outputs"]) {
        EXPECT_TRUE(fs::exists(path.get<std::string>())) << path;
    }
    auto csv = slurp(stem.string() + ".csv");
    EXPECT_NE(csv.find("n,depth,p_m,p_f,layer,s_per_n,stderr,realizations"), std::string::npos);
}

TEST(Cli, AnalysisCommandsRecordFits) {
    auto tp = scratch("tp");
    auto r = run({"turning-points", "--n", "8", "--depth", "2,4,8", "--pf", "0:1:0.1", "--realizations", "20",
                  "--out", tp.string(), "-q"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto m = nlohmann::json::parse(slurp(tp.string() + ".json"));
    EXPECT_EQ(m["fits"][0]["model"], "power_law");
    EXPECT_TRUE(m["conventions"].contains("turning_point"));
    EXPECT_TRUE(fs::exists(tp.string() + "_curves.csv"));

    auto pur = scratch("pur");
    auto p = run({"purification", "--n", "8", "--pm", "0:0.3:0.05", "--pf", "0", "--realizations", "10", "--out",
                  pur.string(), "-q"});
    ASSERT_EQ(p.code, kExitOk) << p.err;
    auto pm = nlohmann::json::parse(slurp(pur.string() + ".json"));
    EXPECT_EQ(pm["sweeps"][0]["base"]["initial"], "maximally_mixed");
    EXPECT_EQ(pm["sweeps"][0]["base"]["depth"], 8);
    EXPECT_EQ(pm["fits"].size(), 1u);
    EXPECT_EQ(run({"purification", "--initial", "pure_zero", "--out", "-"}).code, kExitConfig);

    auto mi = run({"mutual-info", "--n", "8", "--depth", "6", "--pf", "0,0.1", "--realizations", "5", "--per-layer",
                   "--out", "-", "-q"});
    ASSERT_EQ(mi.code, kExitOk) << mi.err;
    EXPECT_NE(mi.out.find("n,depth,p_m,p_f,layer,mutual_info_bits,stderr,realizations"), std::string::npos);
}

TEST(Cli, SelftestPasses) {
    auto r = run({"selftest"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.err.find("selftest passed"), std::string::npos);
}
