// Copyright 2026 The maxent workbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output_file;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args, const std::string& out_file = "") {
    std::string cmd = std::string(MAXENT_CLI_PATH) + " " + args;
    if (!out_file.empty()) cmd += " --out " + out_file;
    cmd += " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("mermin report carries the quantum bound") {
    std::string f = "/tmp/maxent_cli_mermin.json";
    REQUIRE(run("bell report --family mermin --n 4", f) == 0);
    auto j = nlohmann::json::parse(slurp(f));
    CHECK(std::abs(j["qm"].get<double>() - std::pow(2.0, 1.5)) < 1e-9);
    CHECK(std::abs(j["lr_max"].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("magnetization sweep emits the CSV schema") {
    std::string f = "/tmp/maxent_cli_mag.csv";
    REQUIRE(run("xy magnetize --lambda 0:2:0.5", f) == 0);
    std::string body = slurp(f);
    CHECK(body.rfind("lambda,gamma,t,beta,observable,value,stderr\r\n", 0) == 0);
    // five grid points plus the header
    CHECK(std::count(body.begin(), body.end(), '\n') == 6);
}

TEST_CASE("random baseline summary fields") {
    std::string f = "/tmp/maxent_cli_rand.json";
    REQUIRE(run("hdet random --prior flat --samples 2000 --seed 7", f) == 0);
    auto j = nlohmann::json::parse(slurp(f));
    CHECK(j.contains("mean_abs_hdet4"));
    CHECK(j.contains("fraction_above"));
    CHECK(j["samples"].get<std::size_t>() == 2000);
}

TEST_CASE("re-running with identical flags is byte-identical") {
    std::string f1 = "/tmp/maxent_cli_det1.json", f2 = "/tmp/maxent_cli_det2.json";
    REQUIRE(run("hdet random --prior haar --samples 1500 --seed 42", f1) == 0);
    REQUIRE(run("hdet random --prior haar --samples 1500 --seed 42", f2) == 0);
    CHECK(slurp(f1) == slurp(f2));

    std::string c1 = "/tmp/maxent_cli_det1.csv", c2 = "/tmp/maxent_cli_det2.csv";
    REQUIRE(run("scatter sweep --process moller --initial RL --theta 0.2:3.0:0.2 --mu 1", c1) == 0);
    REQUIRE(run("scatter sweep --process moller --initial RL --theta 0.2:3.0:0.2 --mu 1", c2) == 0);
    CHECK(slurp(c1) == slurp(c2));

    std::string b1 = "/tmp/maxent_cli_det1b.json", b2 = "/tmp/maxent_cli_det2b.json";
    REQUIRE(run("bell report --family cglmp --d 3 --optimize --restarts 6 --seed 9", b1) == 0);
    REQUIRE(run("bell report --family cglmp --d 3 --optimize --restarts 6 --seed 9", b2) == 0);
    CHECK(slurp(b1) == slurp(b2));
}

TEST_CASE("selftests succeed for every subcommand") {
    for (const char* sub : {"bell", "hdet", "xy", "ame", "scatter"}) {
        INFO(sub);
        CHECK(run(std::string(sub) + " selftest") == 0);
    }
}

TEST_CASE("exit codes") {
    SECTION("unknown command is a usage error") { CHECK(run("bogus") == 2); }
    SECTION("unknown flag value is a usage error") { CHECK(run("hdet sweep --model nonsense") == 2); }
    SECTION("ame verify fails with exit 1 when no state exists") {
        CHECK(run("ame verify --name ame4d --d 2") == 1);  // AME(4,2) does not exist
        CHECK(run("ame verify --name ame43opt --d 3") == 0);
        CHECK(run("ame verify --name ame44 --d 4") == 0);
    }
}

TEST_CASE("scatter report JSON shape") {
    std::string f = "/tmp/maxent_cli_scat.json";
    REQUIRE(run("scatter report --process pairann --initial RL --theta 1.5707963 --mu 2", f) == 0);
    auto j = nlohmann::json::parse(slurp(f));
    CHECK(std::abs(j["delta"].get<double>() - 1.0) < 1e-6);
    CHECK(j["state_label"].get<std::string>() == "Psi-");
    CHECK(j["amplitudes"].size() == 4);
    CHECK(j["amplitudes"][0].contains("re"));
    CHECK(j["amplitudes"][0].contains("im"));
}

TEST_CASE("ame ledger sweep CSV") {
    std::string f = "/tmp/maxent_cli_ledger.csv";
    REQUIRE(run("ame sweep --name ame43min --d 3", f) == 0);
    std::string body = slurp(f);
    CHECK(body.rfind("step,bipartition,", 0) == 0);
    CHECK(body.find("\r\n") != std::string::npos);
}
