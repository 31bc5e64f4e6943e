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

#include "maxent/scattering.hpp"
#include "test_util.hpp"

using namespace maxent;
using namespace maxent::scatter;

namespace {

KinematicPoint at(double theta, double mu, double lambda = 0.0) {
    KinematicPoint p;
    p.theta = theta;
    p.mu = mu;
    p.lambda = lambda;
    return p;
}

}  // namespace

TEST_CASE("concurrence matches the qstate path on random amplitude sets") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Amplitudes amps;
        for (auto& v : amps.a) v = cdouble(g(rng), g(rng));
        double direct = concurrence_of(amps);
        CHECK(std::abs(direct - concurrence(amps.state())) < 1e-10);
    }
}

TEST_CASE("e+e- -> mu+mu-") {
    SECTION("high-energy RL structure (1+c, -1+c)") {
        auto amps = amplitudes(Process::ee_to_mumu, at(0.9, 1e5, 0.0), Initial::RL);
        double c = std::cos(0.9);
        // relative structure holds exactly after scaling out the common factor
        cdouble scale = amps.a[1] / cdouble(-(1.0 + c));
        CHECK(std::abs(amps.a[2] - scale * cdouble(-(1.0 - c))) < 1e-6);
        CHECK(std::abs(amps.a[0]) < 1e-4);
    }
    SECTION("RR stays maximally entangled at any energy and angle") {
        for (double theta : {0.4, 1.2, 2.6})
            for (double mu : {1.0, 3.0, 40.0})
                CHECK(concurrence_of(Process::ee_to_mumu, at(theta, mu, 0.3), Initial::RR) ==
                      Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("RL concurrence formula") {
        for (double theta : {0.5, 1.1, 2.0})
            for (double mu : {1.2, 4.0}) {
                double lambda = 0.2;
                double e2 = mu * mu + lambda * lambda;
                double s2 = std::sin(theta) * std::sin(theta), c = std::cos(theta);
                double expect = (e2 - 1.0) * s2 / (e2 * (1 + c * c) + s2);
                CHECK(concurrence_of(Process::ee_to_mumu, at(theta, mu, lambda), Initial::RL) ==
                      Catch::Approx(expect).margin(1e-10));
            }
    }
    SECTION("below threshold rejected") {
        CHECK_THROWS_AS(amplitudes(Process::ee_to_mumu, at(1.0, 0.5, 0.1), Initial::RL), ParameterError);
    }
}

TEST_CASE("Moller scattering") {
    SECTION("RL at theta = pi/2 is maximally entangled for any mu") {
        for (double mu : {0.01, 1.0, 100.0})
            CHECK(concurrence_of(Process::moller, at(kPi / 2, mu), Initial::RL) == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("high-energy RL -> RL approaches -2 cot^2(theta/2)") {
        double theta = 1.3;
        auto amps = amplitudes(Process::moller, at(theta, 1e5), Initial::RL);
        CHECK(std::abs(amps.a[1] - cdouble(-2.0 / std::pow(std::tan(theta / 2), 2))) < 1e-6);
    }
    SECTION("high-energy RL concurrence in Mandelstam form") {
        double theta = 1.9;
        double t = -std::pow(std::sin(theta / 2), 2), u = -std::pow(std::cos(theta / 2), 2);
        double expect = 2.0 * u * u * t * t / (u * u * u * u + t * t * t * t);
        CHECK(concurrence_of(Process::moller, at(theta, 1e6), Initial::RL) == Catch::Approx(expect).margin(1e-5));
    }
    SECTION("exact RL concurrence against the closed form on a grid") {
        for (double mu : {0.3, 1.0, 4.0})
            for (double theta : {0.6, 1.2, 2.2}) {
                double c2 = std::cos(2 * theta), c4 = std::cos(4 * theta);
                double mu2 = mu * mu;
                double num = 2 * mu2 * (1 + c2 - mu2 * (1 - c2)) * std::pow(std::sin(theta), 2);
                double den = mu2 * mu2 * (35 + 28 * c2 + c4) + mu2 * (31 + 32 * c2 + c4) + 8 * (1 + c2);
                double expect = std::abs(num / den) * 2.0;  // eigenvalue-form doubled
                CHECK(concurrence_of(Process::moller, at(theta, mu), Initial::RL) ==
                      Catch::Approx(expect).margin(1e-8));
            }
    }
    SECTION("low-energy RR at pi/2 tends to MaxEnt") {
        CHECK(concurrence_of(Process::moller, at(kPi / 2, 1e-3), Initial::RR) == Catch::Approx(1.0).margin(1e-4));
    }
    SECTION("LL and LR mirror RR and RL") {
        auto p = at(1.1, 0.8);
        CHECK(concurrence_of(Process::moller, p, Initial::LL) ==
              Catch::Approx(concurrence_of(Process::moller, p, Initial::RR)).margin(1e-12));
        CHECK(concurrence_of(Process::moller, p, Initial::LR) ==
              Catch::Approx(concurrence_of(Process::moller, p, Initial::RL)).margin(1e-12));
    }
}

TEST_CASE("Bhabha scattering") {
    SECTION("MaxEnt on the curve mu = sqrt(-1/(2 cos theta))") {
        for (double theta : {kPi / 2 + 0.3, kPi / 2 + 0.6, kPi / 2 + 0.9, 2.4, 2.9}) {
            double mu = std::sqrt(-1.0 / (2.0 * std::cos(theta)));
            CHECK(concurrence_of(Process::bhabha, at(theta, mu), Initial::RL) == Catch::Approx(1.0).margin(1e-8));
        }
    }
    SECTION("high-energy RL matches the Moller form at pi/2") {
        CHECK(concurrence_of(Process::bhabha, at(kPi / 2, 1e5), Initial::RL) == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("RR special point reaches the eigenvalue bound 1/2 doubled") {
        double mu = 0.5 * std::sqrt(-3.0 + std::sqrt(17.0));
        double delta = concurrence_of(Process::bhabha, at(kPi - 1e-4, mu), Initial::RR);
        CHECK(delta == Catch::Approx(1.0).margin(1e-3));
    }
}

TEST_CASE("pair annihilation") {
    SECTION("RR is MaxEnt at low energy for every angle, onto Phi-") {
        for (double theta : {0.3, 1.0, 1.8, 2.7}) {
            auto amps = amplitudes(Process::pair_annihilation, at(theta, 1e-4), Initial::RR);
            CHECK(concurrence_of(amps) == Catch::Approx(1.0).margin(1e-6));
            auto [label, overlap] = bell_label(amps);
            CHECK(label == BellLabel::phi_minus);
        }
    }
    SECTION("RR concurrence closed form") {
        for (double mu : {0.5, 2.0})
            for (double theta : {0.8, 1.6}) {
                double c2 = std::cos(2 * theta), c4 = std::cos(4 * theta);
                double expect = 2.0 * (0.5 - 8 * mu * mu / (8 + mu * mu * (19 - 4 * c2 + c4)));
                CHECK(concurrence_of(Process::pair_annihilation, at(theta, mu), Initial::RR) ==
                      Catch::Approx(expect).margin(1e-10));
            }
    }
    SECTION("RL is MaxEnt at pi/2 onto Psi-, energy independent") {
        for (double mu : {0.3, 1.0, 11.0}) {
            auto amps = amplitudes(Process::pair_annihilation, at(kPi / 2, mu), Initial::RL);
            CHECK(concurrence_of(amps) == Catch::Approx(1.0).margin(1e-10));
            CHECK(bell_label(amps).first == BellLabel::psi_minus);
        }
    }
    SECTION("RL amplitudes vanish at zero momentum") {
        auto amps = amplitudes(Process::pair_annihilation, at(1.0, 0.0), Initial::RL);
        CHECK(amps.degenerate(1e-20));
        CHECK_THROWS_AS(concurrence_of(amps), DegenerateAmplitudeError);
    }
}

TEST_CASE("Compton scattering never reaches MaxEnt") {
    for (Initial init : {Initial::RR, Initial::RL, Initial::LR, Initial::LL})
        for (double mu : {0.05, 1.0, 30.0}) {
            double sup = 0.0;
            for (int i = 1; i < 180; ++i) {
                double theta = kPi * i / 180.0;
                sup = std::max(sup, concurrence_of(Process::compton, at(theta, mu), init));
            }
            INFO("initial " << int(init) << " mu " << mu);
            CHECK(sup < 0.999);
        }
}

TEST_CASE("electron-muon scattering stays unentangled in both limits") {
    for (Initial init : {Initial::RR, Initial::RL})
        for (double mu : {1e-3, 1e4}) {
            double sup = 0.0;
            for (int i = 1; i < 180; ++i) {
                double theta = kPi * i / 180.0;
                sup = std::max(sup, concurrence_of(Process::e_mu, at(theta, mu, 1.0 / 206.768), init));
            }
            CHECK(sup < 0.999);
        }
}

TEST_CASE("MaxEnt table") {
    auto table = maxent_table();
    auto find = [&](Process pr, Initial in, EnergyLimit lim) -> const TableEntry& {
        for (const auto& e : table)
            if (e.process == pr && e.initial == in && e.limit == lim) return e;
        throw std::logic_error("missing entry");
    };
    auto is_dash = [](const TableEntry& e) { return e.suppressed || !e.maxent; };
    using P = Process;
    using I = Initial;
    using L = EnergyLimit;

    // e- mu-: all dashes
    CHECK(is_dash(find(P::e_mu, I::RR, L::high)));
    CHECK(is_dash(find(P::e_mu, I::RR, L::low)));
    CHECK(is_dash(find(P::e_mu, I::RL, L::high)));
    CHECK(is_dash(find(P::e_mu, I::RL, L::low)));
    // e+e- -> mu+mu-
    CHECK(find(P::ee_to_mumu, I::RR, L::high).suppressed);
    {
        const auto& e = find(P::ee_to_mumu, I::RR, L::low);
        CHECK(e.maxent);
        CHECK(e.all_angles);
    }
    {
        const auto& e = find(P::ee_to_mumu, I::RL, L::high);
        CHECK(e.maxent);
        CHECK(std::abs(e.best_theta - kPi / 2) < 0.05);
        CHECK((e.label == BellLabel::psi_minus || e.label == BellLabel::psi_plus));
    }
    CHECK(is_dash(find(P::ee_to_mumu, I::RL, L::low)));
    // Moller
    CHECK(is_dash(find(P::moller, I::RR, L::high)));
    {
        const auto& e = find(P::moller, I::RR, L::low);
        CHECK(e.maxent);
        CHECK(std::abs(e.best_theta - kPi / 2) < 0.05);
        CHECK((e.label == BellLabel::phi_minus || e.label == BellLabel::phi_plus));
    }
    for (L lim : {L::high, L::low}) {
        const auto& e = find(P::moller, I::RL, lim);
        CHECK(e.maxent);
        CHECK(std::abs(e.best_theta - kPi / 2) < 0.05);
        CHECK(e.label == BellLabel::psi_minus);
    }
    // Bhabha
    CHECK(is_dash(find(P::bhabha, I::RR, L::high)));
    CHECK(is_dash(find(P::bhabha, I::RR, L::low)));
    {
        const auto& e = find(P::bhabha, I::RL, L::high);
        CHECK(e.maxent);
        CHECK(std::abs(e.best_theta - kPi / 2) < 0.05);
        CHECK((e.label == BellLabel::psi_minus || e.label == BellLabel::psi_plus));
    }
    CHECK(is_dash(find(P::bhabha, I::RL, L::low)));
    // pair annihilation
    CHECK(is_dash(find(P::pair_annihilation, I::RR, L::high)));
    {
        const auto& e = find(P::pair_annihilation, I::RR, L::low);
        CHECK(e.maxent);
        CHECK(e.all_angles);
        CHECK(e.label == BellLabel::phi_minus);
    }
    {
        const auto& e = find(P::pair_annihilation, I::RL, L::high);
        CHECK(e.maxent);
        CHECK(e.label == BellLabel::psi_minus);
    }
    CHECK(find(P::pair_annihilation, I::RL, L::low).suppressed);
    // Compton
    CHECK(is_dash(find(P::compton, I::RR, L::high)));
    CHECK(is_dash(find(P::compton, I::RR, L::low)));
    CHECK(is_dash(find(P::compton, I::RL, L::high)));
    CHECK(is_dash(find(P::compton, I::RL, L::low)));
}

TEST_CASE("weak sector") {
    SECTION("Z decay with longitudinal polarization fixes sin^2 theta_W = 1/4") {
        auto rep = weak_angle_solver(WeakMode::z_decay);
        CHECK(rep.sin2w == 0.25);
        // concurrence is indeed 1 there and below 1 away from it
        KinematicPoint p = at(1.1, 1.0);
        p.sin2w = 0.25;
        CHECK(concurrence_of(Process::z_decay, p, Initial::z_long) == Catch::Approx(1.0).margin(1e-12));
        p.sin2w = 0.22;
        CHECK(concurrence_of(Process::z_decay, p, Initial::z_long) < 1.0 - 1e-3);
    }
    SECTION("Z decay circular polarizations reach MaxEnt on the g ratio curves") {
        KinematicPoint p = at(1.3, 1.0);
        p.sin2w = 0.25;  // g_R = -g_L
        double gr = coupling_gr(p), gl = coupling_gl(p);
        CHECK(std::abs(std::abs(gr) - std::abs(gl)) < 1e-12);
        // at g_R = -g_L the right-handed concurrence peaks at theta = pi/2
        KinematicPoint pr = at(kPi / 2, 1.0);
        pr.sin2w = 0.25;
        CHECK(concurrence_of(Process::z_decay, pr, Initial::z_right) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("Z-mediated scattering: both initials maximal at pi/2 iff g_R = +-g_L") {
        auto rep = weak_angle_solver(WeakMode::z_mediated);
        CHECK(rep.joint_theta == Catch::Approx(kPi / 2).margin(1e-12));
        CHECK(rep.coupling_ratio == Catch::Approx(1.0).margin(1e-12));
        KinematicPoint p = at(kPi / 2, 10.0);
        p.sin2w = 0.25;
        CHECK(concurrence_of(Process::ee_to_mumu_z, p, Initial::RL) == Catch::Approx(1.0).margin(1e-12));
        CHECK(concurrence_of(Process::ee_to_mumu_z, p, Initial::LR) == Catch::Approx(1.0).margin(1e-12));
        p.sin2w = 0.20;
        CHECK(concurrence_of(Process::ee_to_mumu_z, p, Initial::RL) < 1.0 - 1e-4);
    }
    SECTION("interference: RL angle arccos(-1/3) and equal-angle theta_W = pi/6") {
        auto rep = weak_angle_solver(WeakMode::interference);
        CHECK(rep.rl_angle == Catch::Approx(std::acos(-1.0 / 3.0)).margin(1e-9));
        CHECK(rep.theta_w == Catch::Approx(kPi / 6).margin(1e-9));
        // the full amplitudes at high energy confirm both statements
        for (double s2w : {0.15, 0.25, 0.4}) {
            KinematicPoint p = at(std::acos(-1.0 / 3.0), 1e4);
            p.sin2w = s2w;
            CHECK(concurrence_of(Process::ee_to_mumu_interference, p, Initial::RL) ==
                  Catch::Approx(1.0).margin(1e-6));
        }
        KinematicPoint p = at(std::acos(-1.0 / 3.0), 1e4);
        p.sin2w = std::pow(std::sin(kPi / 6), 2);
        CHECK(concurrence_of(Process::ee_to_mumu_interference, p, Initial::LR) == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("interference concurrences match the lepton closed forms at high energy") {
        for (double theta : {0.8, 1.6, 2.4}) {
            KinematicPoint p = at(theta, 1e5);
            p.sin2w = 0.23;
            double c = std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
            double expect_rl = 2.0 * (4 * s2 / (6 * c + 5 * (1 + c * c))) / 2.0;
            CHECK(concurrence_of(Process::ee_to_mumu_interference, p, Initial::RL) ==
                  Catch::Approx(expect_rl).margin(1e-6));
            double sw2 = p.sin2w;
            double c4 = std::pow(std::cos(theta / 2), 4), s4 = std::pow(std::sin(theta / 2), 4);
            double expect_lr = s2 * sw2 / (c4 + 4 * s4 * sw2 * sw2);
            CHECK(concurrence_of(Process::ee_to_mumu_interference, p, Initial::LR) ==
                  Catch::Approx(expect_lr).margin(1e-6));
        }
    }
}

TEST_CASE("gluon scattering") {
    SECTION("RL at pi/2 is MaxEnt for any color factors") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            KinematicPoint p = at(kPi / 2, 1.0);
            p.f1 = u(rng);
            p.f2 = u(rng);
            if (std::abs(p.f1) + std::abs(p.f2) < 0.1) continue;
            CHECK(concurrence_of(Process::gluon_gluon, p, Initial::RL) == Catch::Approx(1.0).margin(1e-12));
        }
    }
    SECTION("concrete SU(3) color assignment") {
        auto [f1, f2] = gluon_color_factors(1, 2, 1, 2);
        CHECK(std::abs(su3_f(1, 2, 3) - 1.0) < 1e-12);
        CHECK(std::abs(su3_f(2, 1, 3) + 1.0) < 1e-12);
        CHECK(std::abs(su3_f(1, 1, 3)) < 1e-12);
        KinematicPoint p = at(kPi / 2, 1.0);
        p.f1 = f1;
        p.f2 = f2;
        CHECK(concurrence_of(Process::gluon_gluon, p, Initial::RL) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("RR initial is helicity conserving (product state)") {
        auto amps = amplitudes(Process::gluon_gluon, at(1.2, 1.0), Initial::RR);
        CHECK(std::abs(amps.a[1]) + std::abs(amps.a[2]) + std::abs(amps.a[3]) < 1e-12);
    }
    SECTION("kinematic poles raise") {
        CHECK_THROWS_AS(amplitudes(Process::gluon_gluon, at(1e-8, 1.0), Initial::RL), SingularKinematicsError);
    }
}

TEST_CASE("unconstrained QED") {
    SECTION("identity vertex reproduces the XZ closed forms exactly") {
        for (double theta : {0.5, kPi / 2, 2.4}) {
            auto num = uqed_schannel(VertexParams::qed(), Plane::xz, theta, Initial::RL);
            auto cf = uqed_closed_form(VertexParams::qed(), Plane::xz, theta, Initial::RL);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(num.a[i] - cf.a[i]) < 1e-10);
            // LR carries the mirrored magnitudes (phases are convention-bound)
            auto lr = uqed_schannel(VertexParams::qed(), Plane::xz, theta, Initial::LR);
            double c = std::cos(theta);
            CHECK(std::abs(std::abs(lr.a[2]) - (1 + c)) < 1e-10);
            CHECK(std::abs(std::abs(lr.a[1]) - (1 - c)) < 1e-10);
            CHECK(std::abs(lr.a[0]) + std::abs(lr.a[3]) < 1e-10);
        }
    }
    SECTION("general vertex matches the XZ RL closed form") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> g(0.0, 0.4);
        for (int trial = 0; trial < 10; ++trial) {
            VertexParams vp;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) vp.a(r, c) = (r == c ? 1.0 : 0.0) + g(rng);
            vp.a00 = 1.0 + g(rng);
            auto num = uqed_schannel(vp, Plane::xz, 1.2, Initial::RL);
            auto cf = uqed_closed_form(vp, Plane::xz, 1.2, Initial::RL);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(num.a[i] - cf.a[i]) < 1e-10);
        }
    }
    SECTION("QED MaxEnt structure at pi/2: Psi- in xz and yz, Psi+ in xy") {
        for (auto plane : {Plane::xz, Plane::yz}) {
            auto amps = uqed_schannel(VertexParams::qed(), plane, kPi / 2, Initial::RL);
            CHECK(std::abs(amps.a[1] + amps.a[2]) < 1e-10);  // M_RL = -M_LR
            CHECK(concurrence_of(amps) == Catch::Approx(1.0).margin(1e-10));
        }
        auto amps = uqed_schannel(VertexParams::qed(), Plane::xy, kPi / 2, Initial::RL);
        CHECK(std::abs(amps.a[1] - amps.a[2]) < 1e-10);  // M_RL = +M_LR
        CHECK(concurrence_of(amps) == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("a00 never enters opposite-helicity channels") {
        VertexParams vp;
        vp.a00 = 3.7;
        auto a = uqed_schannel(vp, Plane::xz, 1.0, Initial::RL);
        auto b = uqed_schannel(VertexParams::qed(), Plane::xz, 1.0, Initial::RL);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-12);
    }
    SECTION("singlet input leaves the singlet sector once A12 is switched on") {
        VertexParams vp;
        vp.a(0, 1) = vp.a(1, 0) = 0.3;  // symmetric: A12 != 0
        auto rl = uqed_schannel(vp, Plane::xz, 1.1, Initial::RL);
        auto lr = uqed_schannel(vp, Plane::xz, 1.1, Initial::LR);
        // final state for (|RL> - |LR>)/sqrt2 input
        cdouble psi_plus_component = (rl.a[1] - lr.a[1]) + (rl.a[2] - lr.a[2]);
        CHECK(std::abs(psi_plus_component) > 1e-3);
        // and the QED point keeps the singlet a singlet
        auto rl0 = uqed_schannel(VertexParams::qed(), Plane::xz, 1.1, Initial::RL);
        auto lr0 = uqed_schannel(VertexParams::qed(), Plane::xz, 1.1, Initial::LR);
        CHECK(std::abs((rl0.a[1] - lr0.a[1]) + (rl0.a[2] - lr0.a[2])) < 1e-10);
    }
    SECTION("sign-flipped vertices also give MaxEnt at pi/2") {
        for (int mask = 0; mask < 8; ++mask) {
            VertexParams vp;
            for (int j = 0; j < 3; ++j) vp.a(j, j) = (mask >> j) & 1 ? -1.0 : 1.0;
            CHECK(concurrence_of(uqed_schannel(vp, Plane::xz, kPi / 2, Initial::RL)) ==
                  Catch::Approx(1.0).margin(1e-9));
        }
    }
    SECTION("isolated maximum under symmetric-traceless perturbations") {
        auto report = uqed_isolated_max_check(1e-2, 20, 77);
        CHECK(report.delta_identity == Catch::Approx(1.0).margin(1e-9));
        CHECK(report.isolated);
        for (double d : report.deltas) CHECK(d < 1.0 - 1e-5);
    }
}
