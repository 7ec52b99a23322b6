#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bav/dynamics.hpp"
#include "bav/errors.hpp"

using namespace bav;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected bav::Error");
    return Errc::MalformedInput;
}

IntegratorConfig rk4(double dt, double t_end) {
    IntegratorConfig c;
    c.method = Method::RK4;
    c.dt = dt;
    c.t_end = t_end;
    return c;
}

const PowerLawPotential kHooke(0.5, 2.0, 1.0);
const State kCircle{0.0, 1.0, {0.0, 1.0}};

void check_clock(const Trajectory& traj) {
    const auto s = traj.samples();
    CHECK(s.front().s == 0.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        REQUIRE(s[i].t > s[i - 1].t);
        REQUIRE(s[i].s > s[i - 1].s);
    }
}

}  // namespace

TEST_CASE("config validation") {
    IntegratorConfig c;
    CHECK_NOTHROW(c.validate());
    c.dt = 0.0;
    CHECK(code_of([&] { c.validate(); }) == Errc::InvalidConfig);
    c = {};
    c.t_end = 0.0;
    CHECK(code_of([&] { c.validate(); }) == Errc::InvalidConfig);
    c = {};
    c.rtol = 1.0;
    CHECK(code_of([&] { c.validate(); }) == Errc::InvalidConfig);
    c = {};
    c.atol = 0.0;
    CHECK(code_of([&] { c.validate(); }) == Errc::InvalidConfig);
    CHECK(parse_method("rk4") == Method::RK4);
    CHECK(parse_method("rk45") == Method::RK45);
    CHECK(code_of([] { parse_method("euler"); }) == Errc::InvalidConfig);
}

TEST_CASE("rk4 circular oscillator period") {
    const Trajectory traj = integrate(kHooke, kCircle, rk4(1e-3, 2 * kPi));
    CHECK(traj.back().t == Approx(2 * kPi).epsilon(1e-15));
    CHECK(std::abs(traj.back().z - 1.0) < 1e-9);
    CHECK(std::abs(traj.back().s - 2 * kPi) < 1e-9);
    check_clock(traj);
}

TEST_CASE("rk4 is fourth order") {
    auto err = [](double dt) {
        const Trajectory t = integrate(kHooke, kCircle, rk4(dt, 2 * kPi));
        return std::abs(t.back().z - 1.0);
    };
    const double ratio = err(1e-2) / err(5e-3);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("circular kepler orbit returns to start") {
    const Trajectory traj = integrate({-1.0, -1.0, 1.0}, kCircle, IntegratorConfig::until(2 * kPi));
    CHECK(std::abs(traj.back().z - 1.0) < 1e-8);
    CHECK(std::abs(traj.back().v - cplx(0, 1)) < 1e-8);
    check_clock(traj);
}

TEST_CASE("free motion is a straight line") {
    const Trajectory traj = integrate({3.0, 0.0, 1.0}, {0.0, 0.5, 1.0}, IntegratorConfig::until(2.0));
    for (const Sample& s : traj.samples()) {
        CHECK(std::abs(s.z - cplx(0.5 + s.t, 0.0)) < 1e-12);
        CHECK(s.s == Approx(s.t).epsilon(1e-13));
    }
}

TEST_CASE("sundman clock equals time on the unit circle") {
    const Trajectory traj = integrate(kHooke, kCircle, IntegratorConfig::until(2 * kPi));
    for (const Sample& s : traj.samples()) REQUIRE(std::abs(s.s - s.t) < 1e-9);
}

TEST_CASE("first sample is the initial state") {
    const State init{0.25, {1.0, 0.5}, {-0.2, 0.9}};
    const Trajectory traj = integrate(kHooke, init, IntegratorConfig::until(1.0));
    CHECK(traj.front().t == 0.25);
    CHECK(traj.front().z == init.z);
    CHECK(traj.front().v == init.v);
    CHECK(traj.back().t == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("origin guard and invalid inputs") {
    CHECK(code_of([] { integrate({-1.0, -1.0, 1.0}, {0.0, 0.0, 1.0}, IntegratorConfig::until(1.0)); }) ==
          Errc::OriginSingularity);
    // Radial infall reaches the origin.
    CHECK(code_of([] { integrate({-1.0, -1.0, 1.0}, {0.0, 1.0, 0.0}, IntegratorConfig::until(5.0)); }) !=
          Errc::MalformedInput);
    CHECK(code_of([] { integrate(kHooke, {0.0, std::nan(""), 1.0}, IntegratorConfig::until(1.0)); }) ==
          Errc::InvalidState);
    CHECK(code_of([] { integrate(kHooke, kCircle, IntegratorConfig::until(-1.0)); }) == Errc::InvalidConfig);
}

TEST_CASE("default drift over ten periods") {
    const Trajectory traj = integrate(kHooke, kCircle, IntegratorConfig::until(20 * kPi));
    CHECK(drift_report(traj, Quantity::Energy).max_rel_drift < 1e-9);
    CHECK(drift_report(traj, Quantity::AngularMomentum).max_rel_drift < 1e-9);
    const ConservedReport fjh = drift_report(traj, Quantity::Fjh);
    CHECK(std::abs(fjh.initial) == 0.0);
    CHECK(fjh.max_abs_drift < 1e-9);
    check_clock(traj);
}

TEST_CASE("rk4 drift over ten periods") {
    const Trajectory traj = integrate(kHooke, kCircle, rk4(1e-3, 20 * kPi));
    CHECK(drift_report(traj, Quantity::Energy).max_rel_drift < 1e-9);
}

TEST_CASE("drift bounds on the standard grid") {
    for (double nu : {-1.0, 1.0, 2.0, 4.0}) {
        const double k = nu > 0 ? 1.0 : -1.0;
        const double vc = std::sqrt(nu * k);
        for (double ecc : {0.0, 0.5}) {
            CAPTURE(nu);
            CAPTURE(ecc);
            const State init{0.0, 1.0, {0.0, vc * std::sqrt(1.0 - ecc)}};
            const Trajectory traj = integrate({k, nu, 1.0}, init, IntegratorConfig::until(20.0));
            CHECK(drift_report(traj, Quantity::Energy).max_rel_drift < 1e-9);
            CHECK(drift_report(traj, Quantity::AngularMomentum).max_rel_drift < 1e-9);
            check_clock(traj);
        }
    }
}

TEST_CASE("drift report applicability") {
    const Trajectory kepler = integrate({-1.0, -1.0, 1.0}, kCircle, IntegratorConfig::until(1.0));
    CHECK(code_of([&] { drift_report(kepler, Quantity::Fjh); }) == Errc::InapplicableQuantity);
    CHECK_NOTHROW(drift_report(kepler, Quantity::Lrl));
    const Trajectory hooke = integrate(kHooke, kCircle, IntegratorConfig::until(1.0));
    CHECK(code_of([&] { drift_report(hooke, Quantity::Lrl); }) == Errc::InapplicableQuantity);
}

TEST_CASE("kepler lrl matches apsidal eccentricity") {
    // v0 below circular speed at the aphelion r = 1.
    const State init{0.0, 1.0, {0.0, 0.8}};
    const Trajectory traj = integrate({-1.0, -1.0, 1.0}, init, IntegratorConfig::until(10.0));
    const ConservedReport lrl = drift_report(traj, Quantity::Lrl);
    CHECK(lrl.max_abs_drift < 1e-8);
    CHECK(std::abs(std::abs(lrl.initial) - apsidal_radii(traj).eccentricity()) < 1e-6);
    CHECK(std::abs(lrl.initial) == Approx(1.0 - 0.64).epsilon(1e-12));
}

TEST_CASE("forward then backward returns home") {
    const State init{0.0, 2.0, {0.0, 1.0}};
    const Trajectory fwd = integrate(kHooke, init, IntegratorConfig::until(10.0));
    const Sample end = fwd.back();
    const Trajectory back = integrate(kHooke, {0.0, end.z, -end.v}, IntegratorConfig::until(end.t));
    // One-way error against z = 2 cos t + i sin t.
    const double one_way = std::abs(end.z - cplx(2 * std::cos(10.0), std::sin(10.0)));
    CHECK(std::abs(back.back().z - init.z) <= 10.0 * std::max(one_way, 1e-12));
    CHECK(std::abs(back.back().v + init.v) <= 1e-9);
}

TEST_CASE("hermite interpolation") {
    const Trajectory traj = integrate(kHooke, {0.0, 2.0, {0.0, 1.0}}, IntegratorConfig::until(5.0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> tt(0.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double t = tt(rng);
        const State s = traj.at(t);
        CHECK(s.t == t);
        CHECK(std::abs(s.z - cplx(2 * std::cos(t), std::sin(t))) < 1e-10);
        CHECK(std::abs(s.v - cplx(-2 * std::sin(t), std::cos(t))) < 1e-7);
    }
    CHECK(traj.at(0.0).z == traj.front().z);
    CHECK(traj.at(traj.back().t).z == traj.back().z);
    CHECK(code_of([&] { traj.at(6.0); }) == Errc::MalformedInput);
}

TEST_CASE("reverse time") {
    const Trajectory traj = integrate(kHooke, {0.0, 2.0, {0.0, 1.0}}, IntegratorConfig::until(3.0));
    const Trajectory rev = reverse_time(traj);
    REQUIRE(rev.size() == traj.size());
    CHECK(rev.front().z == traj.back().z);
    CHECK(rev.front().v == -traj.back().v);
    CHECK(rev.back().z == traj.front().z);
    CHECK(rev.front().s == 0.0);
    check_clock(rev);
    CHECK(rev.back().t - rev.front().t == Approx(traj.back().t - traj.front().t).epsilon(1e-14));
}

TEST_CASE("trajectory constructor invariants") {
    const PowerLawPotential p = kHooke;
    CHECK(code_of([&] { Trajectory(p, {}, {}); }) == Errc::MalformedInput);
    CHECK(code_of([&] { Trajectory(p, {{0, 0.1, 1.0, 0.0}}, {}); }) == Errc::MalformedInput);
    CHECK(code_of([&] { Trajectory(p, {{0, 0, 1.0, 0.0}, {0, 1, 1.0, 0.0}}, {}); }) == Errc::MalformedInput);
    CHECK(code_of([&] { Trajectory(p, {{0, 0, 1.0, 0.0}, {1, 0, 1.0, 0.0}}, {}); }) == Errc::MalformedInput);
    CHECK_NOTHROW(Trajectory(p, {{0, 0, 1.0, 0.0}, {1, 1, 1.0, 0.0}}, {}));
}

TEST_CASE("metadata records invariants and map coefficient") {
    const Trajectory traj = integrate(kHooke, {0.0, 2.0, {0.0, 1.0}}, IntegratorConfig::until(1.0));
    CHECK(traj.meta().E0 == Approx(2.5).epsilon(1e-15));
    CHECK(traj.meta().L0 == 2.0);
    CHECK(traj.meta().map_coefficient == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(traj.meta().integrator.find("rk45") != std::string::npos);
    CHECK(canonical_map_coefficient(0.0) == 1.0);
    CHECK(canonical_map_coefficient(-1.0) == Approx(0.25).epsilon(1e-15));
}
