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

// Command-line workbench: Bell bounds, hyperdeterminant invariants, the XY
// chain circuit, AME state generation/certification, and scattering
// concurrence sweeps. Outputs are deterministic for fixed flags and seed.
//
// Exit codes: 0 success, 1 assertion-style failure (a verify/selftest found a
// mismatch), 2 usage errors.

#include <iostream>

#include "CLI11.hpp"

#include "maxent/ame.hpp"
#include "maxent/bell.hpp"
#include "maxent/invariants.hpp"
#include "maxent/io.hpp"
#include "maxent/scattering.hpp"
#include "maxent/xymodel.hpp"

using namespace maxent;
using nlohmann::json;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "pass" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// bell
// ---------------------------------------------------------------------------

json bell_report_json(const bell::BoundReport& r) {
    json settings = json::array();
    for (const auto& party : r.settings) {
        json per_party = json::array();
        for (const auto& m : party) per_party.push_back(io::to_json(m));
        settings.push_back(per_party);
    }
    return json{{"name", r.name},       {"lr_max", r.lr_max}, {"lr_min", r.lr_min},
                {"qm", r.qm},           {"ratio", r.ratio},   {"purity", r.purity},
                {"settings", settings}, {"optimal_state", io::to_json(r.optimal_state)}};
}

bell::BoundReport bell_family_report(const std::string& family, int n, int d, bool optimize, int restarts,
                                     std::uint64_t seed) {
    bell::BellOperator op;
    bell::SettingsAssignment known;
    bool symmetric = false;
    if (family == "chsh") {
        op = bell::chsh();
        known = bell::settings::chsh_pauli();
    } else if (family == "svetlichny") {
        op = bell::svetlichny3();
    } else if (family == "mermin") {
        op = bell::mermin(n);
        known = bell::settings::mermin_xy(n);
    } else if (family == "cglmp") {
        op = bell::cglmp(d);
        if (d == 3) known = bell::settings::x_mos(2, 3);
    } else if (family == "cglmp3h") {
        op = bell::cglmp3_hermitian();
    } else if (family == "qutrit") {
        op = bell::qutrit_family(n);
        symmetric = n >= 5;
    } else {
        throw ParameterError("unknown Bell family: " + family);
    }
    bell::BoundReport report;
    if (optimize || known.empty()) {
        bell::OptimizeOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        opt.symmetric = symmetric;
        report = bell::quantum_bound_optimize(op, opt);
    } else {
        report.name = op.name;
        report.settings = known;
        Mat part = bell::designated_part(bell::assemble(op, known), op.part);
        Eigen::SelfAdjointEigenSolver<Mat> es(part);
        long arg = 0;
        es.eigenvalues().maxCoeff(&arg);
        report.qm = es.eigenvalues()(arg);
        report.optimal_state = es.eigenvectors().col(arg);
        auto [mx, mn] = bell::classical_bound(op);
        report.lr_max = mx;
        report.lr_min = mn;
        report.ratio = report.qm / report.lr_max;
        StateVector psi(op.n_parties, op.outcomes, report.optimal_state);
        std::vector<int> keep(std::max(1, op.n_parties / 2));
        for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
        report.purity = partial_trace(psi, keep).purity();
    }
    return report;
}

int bell_selftest() {
    auto chsh_bounds = bell::classical_bound(bell::chsh());
    check(std::abs(chsh_bounds.first - 2.0) < 1e-12, "CHSH classical bound 2");
    check(std::abs(bell::quantum_bound_exact(bell::chsh(), bell::settings::chsh_pauli()) - 2 * std::sqrt(2.0)) < 1e-9,
          "CHSH quantum bound 2*sqrt(2)");
    for (int n = 3; n <= 5; ++n) {
        auto mermin_bounds = bell::classical_bound(bell::mermin(n));
        check(std::abs(mermin_bounds.first - 1.0) < 1e-12, "Mermin n=" + std::to_string(n) + " classical bound 1");
        double qm = bell::quantum_bound_exact(bell::mermin(n), bell::settings::mermin_xy(n));
        check(std::abs(qm - std::pow(2.0, (n - 1) / 2.0)) < 1e-9,
              "Mermin n=" + std::to_string(n) + " quantum bound 2^((n-1)/2)");
    }
    auto c3_bounds = bell::classical_bound(bell::cglmp(3));
    check(std::abs(c3_bounds.first - std::sqrt(3.0)) < 1e-9, "CGLMP3 anti-Hermitian classical bound sqrt(3)");
    double qm3 = bell::quantum_bound_exact(bell::cglmp(3), bell::settings::x_mos(2, 3));
    check(std::abs(qm3 - (std::sqrt(3.0) + std::sqrt(11.0)) / 2) < 1e-9, "CGLMP3 quantum bound (sqrt3+sqrt11)/2");
    check(bell::mub_check({bell::settings::shift(3), bell::settings::clock(3)}), "qutrit X and Z are MUB");
    check(bell::mos_check(bell::settings::shift(3), bell::settings::mos(3)), "X with MOS companion");
    return g_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// hdet
// ---------------------------------------------------------------------------

StateVector named_state(const std::string& name) {
    using namespace inv::states;
    if (name == "ghz4") return ghz(4);
    if (name == "w4") return w4();
    if (name == "c1") return cluster1();
    if (name == "c2") return cluster2();
    if (name == "c3") return cluster3();
    if (name == "yc") return yc();
    if (name == "hd") return hd();
    if (name == "l") return l_state();
    throw ParameterError("unknown state: " + name);
}

json invariants_json(const inv::InvariantTriple& t) {
    return json{{"S", io::to_json(t.S)},
                {"T", io::to_json(t.T)},
                {"hdet4", io::to_json(t.hdet4)},
                {"abs_hdet4", std::abs(t.hdet4)}};
}

int hdet_selftest() {
    auto ghz = inv::invariants_st(inv::states::ghz(4));
    check(std::abs(ghz.S - cdouble(1.0 / 192)) < 1e-12 && std::abs(ghz.T - cdouble(-1.0 / 13824)) < 1e-12,
          "GHZ4 invariants (1/192, -1/13824)");
    check(std::abs(ghz.hdet4) < 1e-12, "GHZ4 hyperdeterminant vanishes");
    auto hd = inv::invariants_st(inv::states::hd());
    check(std::abs(std::abs(hd.hdet4) - 1.0 / (256.0 * 19683.0)) < 1e-18, "HD |hdet4| = 1/(2^8 3^9)");
    auto w = inv::invariants_st(inv::states::w4());
    check(std::abs(w.S) < 1e-14 && std::abs(w.T) < 1e-14, "W4 has S = T = 0");
    check(std::abs(inv::xxz_S(0.0, -1) - cdouble(1.0 / 3072.0)) < 1e-15, "XXZ ground S at Delta=0");
    check(std::abs(inv::invariants_st(inv::hs_state(0.25)).S - inv::hs_S(0.25)) < 1e-10,
          "Haldane-Shastry closed form at alpha=1/4");
    return g_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// xy
// ---------------------------------------------------------------------------

int xy_selftest() {
    xy::XYParams p{4, 1.0, 1.0, 0.7};
    check(std::abs(xy::omega(p, 1) - std::sqrt(1 + 0.49)) < 1e-12, "omega_1 = sqrt(1 + lambda^2)");
    auto dis = xy::build_udis(p);
    auto diag = xy::diagonalize_by_circuit(p, dis.udis);
    check(diag.max_offdiag < 1e-8, "U_dis diagonalizes the modified Hamiltonian");
    double tl = xy::time_evolve_all_up(xy::XYParams{4, 1, 1, 1.0}, 1.0);
    check(std::abs(tl - (3.0 + std::cos(4 * std::sqrt(2.0))) / 4.0) < 1e-8,
          "<sigma_z>(t=1, lambda=1) = (3+cos(4*sqrt2))/4");
    check(std::abs(xy::ground_state_magnetization(xy::XYParams{4, 1, 1, 50}) - 1.0) < 1e-3,
          "magnetization saturates at large lambda");
    return g_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// ame
// ---------------------------------------------------------------------------

ame::CatalogEntry catalog_entry(const std::string& name) {
    using E = ame::CatalogEntry;
    if (name == "ame2d") return E::ame2d;
    if (name == "ame3d") return E::ame3d;
    if (name == "ame52") return E::ame52;
    if (name == "ame5d") return E::ame5d;
    if (name == "ame6d") return E::ame6d;
    if (name == "ame4d") return E::ame4d;
    if (name == "ame44") return E::ame44_qubits;
    if (name == "ame43min") return E::ame43_minimal;
    if (name == "ame43opt") return E::ame43_optimized;
    throw ParameterError("unknown catalog entry: " + name);
}

std::vector<std::vector<int>> party_splits_for(const std::string& name) {
    if (name == "ame44") return {{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 1, 6, 7}};
    return {};
}

json ame_report_json(const std::string& name, int d) {
    auto circuit = ame::ame_catalog(catalog_entry(name), d);
    auto state = apply(circuit, StateVector(circuit.n_sites, circuit.local_dim));
    auto audit = ame::majorization_audit(circuit, StateVector(circuit.n_sites, circuit.local_dim),
                                         party_splits_for(name));
    json j;
    j["name"] = name;
    j["n"] = circuit.n_sites;
    j["d"] = circuit.local_dim;
    j["majorizes"] = audit.majorizes_throughout;
    j["circuit"] = circuit_to_json(circuit);
    if (name == "ame44") {
        json splits = json::array();
        bool ok = true;
        for (const auto& r : ame::ame44_bipartition_check(state)) {
            splits.push_back(json{{"sites", r.sites}, {"entropy_log2", r.entropy_log2}});
            ok = ok && std::abs(r.entropy_log2 - 4.0) < 1e-9;
        }
        j["party_bipartitions"] = splits;
        j["is_ame"] = ok;  // within the party grouping
    } else {
        auto rep = ame::verify_ame(state);
        j["is_ame"] = rep.is_ame;
        json parts = json::array();
        for (const auto& b : rep.bipartitions)
            parts.push_back(json{{"sites", b.sites}, {"entropy", b.entropy}, {"max_eigen_dev", b.max_eigen_dev}});
        j["bipartitions"] = parts;
    }
    return j;
}

std::string ame_ledger_csv(const std::string& name, int d) {
    auto circuit = ame::ame_catalog(catalog_entry(name), d);
    auto audit = ame::majorization_audit(circuit, StateVector(circuit.n_sites, circuit.local_dim),
                                         party_splits_for(name));
    std::size_t spectrum_len = audit.ledger.empty() ? 0 : audit.ledger.front().spectrum.size();
    std::vector<std::string> header = {"step", "bipartition"};
    for (std::size_t i = 0; i < spectrum_len; ++i) header.push_back("lambda" + std::to_string(i));
    io::CsvWriter csv(header);
    for (const auto& row : audit.ledger) {
        std::vector<std::string> fields;
        fields.push_back(std::to_string(row.step));
        std::string sites;
        for (int s : row.sites) sites += (sites.empty() ? "" : " ") + std::to_string(s);
        fields.push_back(sites);
        for (double v : row.spectrum) fields.push_back(io::fmt(v));
        csv.row(fields);
    }
    return csv.str();
}

int ame_selftest() {
    auto c52 = ame::ame_catalog(ame::CatalogEntry::ame52);
    check(ame::verify_ame(apply(c52, StateVector(5, 2))).is_ame, "pentagon circuit yields AME(5,2)");
    auto c43 = ame::ame_catalog(ame::CatalogEntry::ame43_minimal);
    check(ame::verify_ame(apply(c43, StateVector(4, 3))).is_ame, "minimal-support AME(4,3)");
    Vec ghz = Vec::Zero(16);
    ghz(0) = ghz(15) = 1 / std::sqrt(2.0);
    check(!ame::verify_ame(StateVector(4, 2, ghz)).is_ame, "GHZ4 is not AME");
    auto bad = ame::majorization_audit(c43, StateVector(4, 3));
    check(!bad.majorizes_throughout, "five-adder circuit fails majorization");
    auto good = ame::majorization_audit(ame::ame_catalog(ame::CatalogEntry::ame43_optimized), StateVector(4, 3));
    check(good.majorizes_throughout, "four-adder circuit majorizes");
    return g_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scatter
// ---------------------------------------------------------------------------

scatter::Process process_by_name(const std::string& name) {
    using P = scatter::Process;
    if (name == "emu") return P::e_mu;
    if (name == "eemumu") return P::ee_to_mumu;
    if (name == "moller") return P::moller;
    if (name == "bhabha") return P::bhabha;
    if (name == "pairann") return P::pair_annihilation;
    if (name == "compton") return P::compton;
    if (name == "zdecay") return P::z_decay;
    if (name == "eemumu_z") return P::ee_to_mumu_z;
    if (name == "interference") return P::ee_to_mumu_interference;
    if (name == "gluons") return P::gluon_gluon;
    throw ParameterError("unknown process: " + name);
}

scatter::Initial initial_by_name(const std::string& name) {
    using I = scatter::Initial;
    if (name == "RR" || name == "R+") return I::RR;
    if (name == "RL" || name == "R-") return I::RL;
    if (name == "LR" || name == "L+") return I::LR;
    if (name == "LL" || name == "L-") return I::LL;
    if (name == "Z0") return I::z_long;
    if (name == "ZR") return I::z_right;
    if (name == "ZL") return I::z_left;
    throw ParameterError("unknown initial configuration: " + name);
}

int scatter_selftest() {
    using namespace scatter;
    for (double mu : {0.01, 1.0, 100.0}) {
        KinematicPoint p;
        p.theta = kPi / 2;
        p.mu = mu;
        check(std::abs(concurrence_of(Process::moller, p, Initial::RL) - 1.0) < 1e-10,
              "Moller RL at pi/2 is MaxEnt, mu = " + io::fmt(mu));
    }
    auto zrep = weak_angle_solver(WeakMode::z_decay);
    check(zrep.sin2w == 0.25, "Z decay solver: sin^2 theta_W = 1/4");
    auto irep = weak_angle_solver(WeakMode::interference);
    check(std::abs(irep.rl_angle - std::acos(-1.0 / 3)) < 1e-9, "interference RL angle arccos(-1/3)");
    check(std::abs(irep.theta_w - kPi / 6) < 1e-9, "equal-angle Weinberg angle pi/6");
    auto uq = uqed_isolated_max_check(1e-2, 10, 7);
    check(std::abs(uq.delta_identity - 1.0) < 1e-9, "uQED identity vertex is MaxEnt at pi/2");
    check(uq.isolated, "uQED off-diagonal perturbations break MaxEnt");
    return g_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maxent workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // --out after a subcommand still reaches the top level

    std::string out_path, format = "json";
    app.add_option("--out", out_path, "output file (default stdout)")->capture_default_str();
    app.add_option("--format", format, "csv|json")->capture_default_str();

    // --- bell ---
    auto* bell_cmd = app.add_subcommand("bell", "Bell operators and bounds");
    bell_cmd->require_subcommand(1);
    std::string bell_family = "chsh";
    int bell_n = 3, bell_d = 3, bell_restarts = 32;
    std::uint64_t bell_seed = 1;
    bool bell_optimize = false;
    auto* bell_report = bell_cmd->add_subcommand("report", "bounds for one inequality");
    bell_report->add_option("--family", bell_family, "chsh|svetlichny|mermin|cglmp|cglmp3h|qutrit");
    bell_report->add_option("--n", bell_n, "number of parties");
    bell_report->add_option("--d", bell_d, "outcomes");
    bell_report->add_flag("--optimize", bell_optimize, "force the settings optimizer");
    bell_report->add_option("--restarts", bell_restarts);
    bell_report->add_option("--seed", bell_seed);
    auto* bell_sweep = bell_cmd->add_subcommand("sweep", "Mermin family over n");
    std::string bell_grid = "2:6:1";
    bell_sweep->add_option("--n", bell_grid, "n grid start:stop:step");
    auto* bell_verify = bell_cmd->add_subcommand("verify", "check the anchored bounds");
    auto* bell_self = bell_cmd->add_subcommand("selftest", "run the module anchors");

    // --- hdet ---
    auto* hdet_cmd = app.add_subcommand("hdet", "hyperdeterminant invariants");
    hdet_cmd->require_subcommand(1);
    std::string hdet_state = "ghz4", hdet_model = "ising", hdet_grid = "0:2:0.1", hdet_prior = "flat";
    double hdet_alpha = 0.25;
    std::size_t hdet_samples = 100000;
    std::uint64_t hdet_seed = 7;
    auto* hdet_report = hdet_cmd->add_subcommand("report", "invariants of a named state");
    hdet_report->add_option("--state", hdet_state, "ghz4|w4|c1|c2|c3|yc|hd|l");
    auto* hdet_sweep = hdet_cmd->add_subcommand("sweep", "spin-chain sweep");
    hdet_sweep->add_option("--model", hdet_model, "ising|xxz|hs|hs_dimer");
    hdet_sweep->add_option("--grid", hdet_grid, "parameter grid start:stop:step");
    hdet_sweep->add_option("--alpha", hdet_alpha, "alpha for the dimerized sweep");
    auto* hdet_random = hdet_cmd->add_subcommand("random", "random-state baselines");
    hdet_random->add_option("--prior", hdet_prior, "flat|haar|goe|gue|gse");
    hdet_random->add_option("--samples", hdet_samples);
    hdet_random->add_option("--seed", hdet_seed);
    auto* hdet_verify = hdet_cmd->add_subcommand("verify", "check the anchored values");
    auto* hdet_self = hdet_cmd->add_subcommand("selftest", "run the module anchors");

    // --- xy ---
    auto* xy_cmd = app.add_subcommand("xy", "XY chain circuit");
    xy_cmd->require_subcommand(1);
    double xy_gamma = 1.0, xy_beta = -1.0;
    std::string xy_lambda = "1.0", xy_t;
    std::string xy_mode = "exact";
    std::size_t xy_samples = 10000;
    std::uint64_t xy_seed = 1;
    auto* xy_report = xy_cmd->add_subcommand("report", "spectrum and diagonalization data");
    xy_report->add_option("--lambda", xy_lambda);
    xy_report->add_option("--gamma", xy_gamma);
    auto* xy_mag = xy_cmd->add_subcommand("magnetize", "ground-state magnetization sweep");
    xy_mag->add_option("--lambda", xy_lambda, "lambda grid start:stop:step");
    xy_mag->add_option("--gamma", xy_gamma);
    auto* xy_sweep = xy_cmd->add_subcommand("sweep", "time/thermal sweep");
    xy_sweep->add_option("--lambda", xy_lambda, "lambda grid");
    xy_sweep->add_option("--t", xy_t, "time grid start:stop:step");
    xy_sweep->add_option("--beta", xy_beta, "inverse temperature (thermal row)");
    xy_sweep->add_option("--mode", xy_mode, "exact|sampling");
    xy_sweep->add_option("--samples", xy_samples);
    xy_sweep->add_option("--seed", xy_seed);
    auto* xy_verify = xy_cmd->add_subcommand("verify", "check diagonality and anchors");
    auto* xy_self = xy_cmd->add_subcommand("selftest", "run the module anchors");

    // --- ame ---
    auto* ame_cmd = app.add_subcommand("ame", "AME circuits and certification");
    ame_cmd->require_subcommand(1);
    std::string ame_name = "ame52";
    int ame_d = 2;
    auto* ame_report = ame_cmd->add_subcommand("report", "certification report");
    ame_report->add_option("--name", ame_name, "ame2d|ame3d|ame52|ame5d|ame6d|ame4d|ame44|ame43min|ame43opt");
    ame_report->add_option("--d", ame_d, "local dimension where applicable");
    auto* ame_verify = ame_cmd->add_subcommand("verify", "exit 1 unless the state certifies");
    ame_verify->add_option("--name", ame_name);
    ame_verify->add_option("--d", ame_d);
    auto* ame_sweep = ame_cmd->add_subcommand("sweep", "majorization ledger CSV");
    ame_sweep->add_option("--name", ame_name);
    ame_sweep->add_option("--d", ame_d);
    auto* ame_self = ame_cmd->add_subcommand("selftest", "run the module anchors");

    // --- scatter ---
    auto* sc_cmd = app.add_subcommand("scatter", "tree-level concurrence analysis");
    sc_cmd->require_subcommand(1);
    std::string sc_process = "moller", sc_initial = "RL", sc_theta = "1.5707963267948966";
    double sc_mu = 1.0, sc_lambda = 0.0, sc_sin2w = 0.25, sc_f1 = 1.0, sc_f2 = 1.0;
    auto* sc_report = sc_cmd->add_subcommand("report", "amplitudes and concurrence at one point");
    sc_report->add_option("--process", sc_process,
                          "emu|eemumu|moller|bhabha|pairann|compton|zdecay|eemumu_z|interference|gluons");
    sc_report->add_option("--initial", sc_initial, "RR|RL|LR|LL|R+|R-|L+|L-|Z0|ZR|ZL");
    sc_report->add_option("--theta", sc_theta);
    sc_report->add_option("--mu", sc_mu);
    sc_report->add_option("--lambda", sc_lambda);
    sc_report->add_option("--sin2w", sc_sin2w);
    sc_report->add_option("--f1", sc_f1);
    sc_report->add_option("--f2", sc_f2);
    auto* sc_sweep = sc_cmd->add_subcommand("sweep", "theta sweep CSV");
    sc_sweep->add_option("--process", sc_process);
    sc_sweep->add_option("--initial", sc_initial);
    sc_sweep->add_option("--theta", sc_theta, "theta grid start:stop:step");
    sc_sweep->add_option("--mu", sc_mu);
    sc_sweep->add_option("--lambda", sc_lambda);
    sc_sweep->add_option("--sin2w", sc_sin2w);
    auto* sc_verify = sc_cmd->add_subcommand("verify", "weak solvers and table anchors");
    auto* sc_self = sc_cmd->add_subcommand("selftest", "run the module anchors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (format != "json" && format != "csv") {
        std::fprintf(stderr, "error: --format must be csv or json\n");
        return 2;
    }
    // every verb has one natural shape; reject contradictory requests
    bool wants_csv = bell_sweep->parsed() || hdet_sweep->parsed() || xy_mag->parsed() || xy_sweep->parsed() ||
                     ame_sweep->parsed() || sc_sweep->parsed();
    bool wants_json = bell_report->parsed() || hdet_report->parsed() || hdet_random->parsed() ||
                      xy_report->parsed() || ame_report->parsed() || sc_report->parsed();
    if ((wants_csv && format == "json" && app.count("--format") > 0) ||
        (wants_json && format == "csv")) {
        std::fprintf(stderr, "error: this verb emits %s output\n", wants_csv ? "csv" : "json");
        return 2;
    }
    if (wants_csv) format = "csv";

    try {
        // bell
        if (bell_report->parsed()) {
            auto rep = bell_family_report(bell_family, bell_n, bell_d, bell_optimize, bell_restarts, bell_seed);
            io::emit(out_path, bell_report_json(rep).dump(2) + "\n");
            return 0;
        }
        if (bell_sweep->parsed()) {
            io::CsvWriter csv({"n", "lr_max", "qm", "ratio"});
            for (double nv : io::parse_grid(bell_grid)) {
                int n = static_cast<int>(nv);
                auto op = bell::mermin(n);
                auto bounds = bell::classical_bound(op);
                double qm = bell::quantum_bound_exact(op, bell::settings::mermin_xy(n));
                csv.row({std::to_string(n), io::fmt(bounds.first), io::fmt(qm), io::fmt(qm / bounds.first)});
            }
            io::emit(out_path, csv.str());
            return 0;
        }
        if (bell_verify->parsed() || bell_self->parsed()) return bell_selftest();

        // hdet
        if (hdet_report->parsed()) {
            auto t = inv::invariants_st(named_state(hdet_state));
            json j = invariants_json(t);
            j["state"] = hdet_state;
            io::emit(out_path, j.dump(2) + "\n");
            return 0;
        }
        if (hdet_sweep->parsed()) {
            inv::ChainModel model;
            if (hdet_model == "ising")
                model = inv::ChainModel::ising;
            else if (hdet_model == "xxz")
                model = inv::ChainModel::xxz;
            else if (hdet_model == "hs")
                model = inv::ChainModel::haldane_shastry;
            else if (hdet_model == "hs_dimer")
                model = inv::ChainModel::hs_dimerized;
            else
                throw ParameterError("unknown chain model: " + hdet_model);
            auto records = inv::chain_sweep(model, io::parse_grid(hdet_grid), hdet_alpha);
            io::CsvWriter csv({"model", "param", "level", "energy", "S_re", "S_im", "T_re", "T_im", "hdet4_re",
                               "hdet4_im", "abs_hdet4"});
            for (const auto& r : records)
                csv.row({hdet_model, io::fmt(r.param), std::to_string(r.level), io::fmt(r.energy),
                         io::fmt(r.S.real()), io::fmt(r.S.imag()), io::fmt(r.T.real()), io::fmt(r.T.imag()),
                         io::fmt(r.hdet4.real()), io::fmt(r.hdet4.imag()), io::fmt(std::abs(r.hdet4))});
            io::emit(out_path, csv.str());
            return 0;
        }
        if (hdet_random->parsed()) {
            inv::RandomPrior prior;
            if (hdet_prior == "flat")
                prior = inv::RandomPrior::flat;
            else if (hdet_prior == "haar")
                prior = inv::RandomPrior::haar;
            else if (hdet_prior == "goe")
                prior = inv::RandomPrior::goe;
            else if (hdet_prior == "gue")
                prior = inv::RandomPrior::gue;
            else if (hdet_prior == "gse")
                prior = inv::RandomPrior::gse;
            else
                throw ParameterError("unknown prior: " + hdet_prior);
            auto summary = inv::random_baseline(prior, hdet_samples, hdet_seed);
            json j{{"prior", hdet_prior},
                   {"samples", summary.n_samples},
                   {"seed", hdet_seed},
                   {"mean_abs_hdet4", summary.mean_abs_hdet4},
                   {"threshold", summary.threshold},
                   {"fraction_above", summary.fraction_above}};
            io::emit(out_path, j.dump(2) + "\n");
            return 0;
        }
        if (hdet_verify->parsed() || hdet_self->parsed()) return hdet_selftest();

        // xy
        if (xy_report->parsed()) {
            xy::XYParams p{4, 1.0, xy_gamma, io::parse_grid(xy_lambda)[0]};
            auto dis = xy::build_udis(p);
            auto diag = xy::diagonalize_by_circuit(p, dis.udis);
            json j;
            j["lambda"] = p.lambda;
            j["gamma"] = p.gamma;
            j["max_offdiag"] = diag.max_offdiag;
            json omegas = json::array();
            for (int k = -p.n / 2 + 1; k <= p.n / 2; ++k) omegas.push_back(xy::omega(p, k));
            j["omega"] = omegas;
            json energies = json::array();
            for (long b = 0; b < diag.energies.size(); ++b) energies.push_back(diag.energies(b));
            j["diagonal_energies"] = energies;
            j["magnetization"] = xy::ground_state_magnetization(p);
            io::emit(out_path, j.dump(2) + "\n");
            return 0;
        }
        if (xy_mag->parsed() || xy_sweep->parsed()) {
            io::CsvWriter csv({"lambda", "gamma", "t", "beta", "observable", "value", "stderr"});
            for (double lambda : io::parse_grid(xy_lambda)) {
                xy::XYParams p{4, 1.0, xy_gamma, lambda};
                if (xy_mag->parsed()) {
                    csv.row({io::fmt(lambda), io::fmt(xy_gamma), "", "", "sz_gs",
                             io::fmt(xy::ground_state_magnetization(p)), "0"});
                    continue;
                }
                if (!xy_t.empty()) {
                    for (double t : io::parse_grid(xy_t))
                        csv.row({io::fmt(lambda), io::fmt(xy_gamma), io::fmt(t), "", "sz_t",
                                 io::fmt(xy::time_evolve_all_up(p, t)), "0"});
                }
                if (xy_beta >= 0.0) {
                    auto r = xy::thermal_expectation(p, xy_beta, xy::sigma_z_total(4),
                                                     xy_mode == "sampling" ? xy::ThermalMode::sampling
                                                                           : xy::ThermalMode::exact,
                                                     xy_samples, xy_seed);
                    csv.row({io::fmt(lambda), io::fmt(xy_gamma), "", io::fmt(xy_beta), "sz_thermal",
                             io::fmt(r.value), io::fmt(r.stderr_est)});
                }
            }
            io::emit(out_path, csv.str());
            return 0;
        }
        if (xy_verify->parsed() || xy_self->parsed()) return xy_selftest();

        // ame
        if (ame_report->parsed()) {
            io::emit(out_path, ame_report_json(ame_name, ame_d).dump(2) + "\n");
            return 0;
        }
        if (ame_verify->parsed()) {
            auto j = ame_report_json(ame_name, ame_d);
            bool ok = j["is_ame"].get<bool>();
            std::printf("%s %s (d=%d)\n", ok ? "pass" : "FAIL", ame_name.c_str(), ame_d);
            return ok ? 0 : 1;
        }
        if (ame_sweep->parsed()) {
            io::emit(out_path, ame_ledger_csv(ame_name, ame_d));
            return 0;
        }
        if (ame_self->parsed()) return ame_selftest();

        // scatter
        if (sc_report->parsed()) {
            scatter::KinematicPoint p;
            p.theta = io::parse_grid(sc_theta)[0];
            p.mu = sc_mu;
            p.lambda = sc_lambda;
            p.sin2w = sc_sin2w;
            p.f1 = sc_f1;
            p.f2 = sc_f2;
            auto amps = scatter::amplitudes(process_by_name(sc_process), p, initial_by_name(sc_initial));
            json j;
            j["process"] = sc_process;
            j["initial"] = sc_initial;
            j["theta"] = p.theta;
            j["mu"] = p.mu;
            json a = json::array();
            for (const auto& v : amps.a) a.push_back(io::to_json(v));
            j["amplitudes"] = a;
            if (!amps.degenerate(1e-30)) {
                j["delta"] = scatter::concurrence_of(amps);
                auto label = scatter::bell_label(amps);
                j["state_label"] = scatter::to_string(label.first);
                j["label_overlap"] = label.second;
            } else {
                j["delta"] = nullptr;
                j["state_label"] = "-";
            }
            io::emit(out_path, j.dump(2) + "\n");
            return 0;
        }
        if (sc_sweep->parsed()) {
            io::CsvWriter csv({"process", "initial", "theta", "mu", "delta", "state_label"});
            scatter::KinematicPoint p;
            p.mu = sc_mu;
            p.lambda = sc_lambda;
            p.sin2w = sc_sin2w;
            for (double theta : io::parse_grid(sc_theta)) {
                p.theta = theta;
                std::string delta = "", label = "-";
                try {
                    auto amps = scatter::amplitudes(process_by_name(sc_process), p, initial_by_name(sc_initial));
                    if (!amps.degenerate(1e-30)) {
                        delta = io::fmt(scatter::concurrence_of(amps));
                        label = scatter::to_string(scatter::bell_label(amps).first);
                    }
                } catch (const SingularKinematicsError&) {
                    delta = "";
                }
                csv.row({sc_process, sc_initial, io::fmt(theta), io::fmt(sc_mu), delta, label});
            }
            io::emit(out_path, csv.str());
            return 0;
        }
        if (sc_verify->parsed()) {
            auto z = scatter::weak_angle_solver(scatter::WeakMode::z_decay);
            auto m = scatter::weak_angle_solver(scatter::WeakMode::z_mediated);
            auto i = scatter::weak_angle_solver(scatter::WeakMode::interference);
            json j;
            j["z_decay"] = json{{"sin2w", z.sin2w}};
            j["z_mediated"] = json{{"joint_theta", m.joint_theta}, {"coupling_ratio", m.coupling_ratio}};
            j["interference"] =
                json{{"rl_angle", i.rl_angle}, {"theta_w", i.theta_w}, {"sin2w", i.sin2w}};
            if (!out_path.empty()) io::emit(out_path, j.dump(2) + "\n");
            return scatter_selftest();
        }
        if (sc_self->parsed()) return scatter_selftest();
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
