// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bav/errors.hpp"
#include "bav/verify.hpp"

using namespace bav;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kGrid = {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0};

struct Line {
    std::string label;
    double measured;
    double bound;
    bool below = true;  // pass iff measured < bound; otherwise measured > bound
    double lower = -std::numeric_limits<double>::infinity();  // extra floor for ranges
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Line> lines;
    std::string note;
};

DualityParams params_of(const Trajectory& t) {
    const PowerLawPotential& p = t.potential();
    return dual_parameters(p.nu(), p.k(), t.meta().E0, p.m(), t.meta().map_coefficient);
}

bool clock_increasing(const Trajectory& t) {
    const auto s = t.samples();
    if (s.front().s != 0.0) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i].t > s[i - 1].t) || !(s[i].s > s[i - 1].s)) return false;
    return true;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Grid orbit: circular (ecc = 0) or started below circular speed.
Trajectory grid_orbit(double nu, double ecc) {
    const double k = nu >= 0.0 ? 1.0 : -1.0;
    const double vc = nu == 0.0 ? 1.0 : std::sqrt(nu * k);
    return integrate({k, nu, 1.0}, {0.0, 1.0, {0.0, vc * std::sqrt(1.0 - ecc)}}, IntegratorConfig::until(8.0));
}

struct GridCase {
    double nu, ecc;
    Trajectory original;
    DualityParams params;
    Trajectory dual;
};

std::vector<Trajectory> g_all_outputs;

std::vector<GridCase> build_grid() {
    std::vector<GridCase> out;
    for (double nu : kGrid) {
        for (double ecc : {0.0, 0.4}) {
            Trajectory o = grid_orbit(nu, ecc);
            DualityParams p = params_of(o);
            Trajectory d = dualize_trajectory(o, p);
            g_all_outputs.push_back(o);
            g_all_outputs.push_back(d);
            out.push_back({nu, ecc, std::move(o), p, std::move(d)});
        }
    }
    return out;
}

Criterion criterion1() {
    const PowerLawPotential hooke(0.5, 2.0, 1.0);
    const Trajectory o = integrate(hooke, {0.0, 2.0, {0.0, 1.0}}, IntegratorConfig::until(20 * kPi));
    const DualityParams p = params_of(o);
    const Trajectory d = dualize_trajectory(o, p);
    g_all_outputs.push_back(o);
    g_all_outputs.push_back(d);
    double dE = 0, dL = 0, dT = 0, dA = 0, ratio = 0;
    for (std::size_t i = 0; i < o.size(); ++i) {
        const State st = o.samples()[i].state();
        const double e = energy(hooke, st);
        const cplx T = fjh_complex(st, 1.0, 1.0);
        const cplx A = lrl_affix(d.samples()[i].z, d.samples()[i].v, p.k_dual, 1.0);
        dE = std::max(dE, std::abs(e - 2.5));
        dL = std::max(dL, std::abs(angular_momentum(st, 1.0) - 2.0));
        dT = std::max(dT, std::abs(T - 1.5));
        dA = std::max(dA, std::abs(std::abs(A) - 0.6));
        ratio = std::max(ratio, std::abs(A - lrl_from_fjh(T, e)));
    }
    return {1,
            "oscillator ellipse a=2 b=1 over 10 periods and its Kepler dual",
            {{"max|E-2.5|", dE, 1e-8},
             {"max|L-2|", dL, 1e-8},
             {"max|T-1.5|", dT, 1e-7},
             {"max||A|-0.6|", dA, 1e-6},
             {"max|A+T/E|", ratio, 1e-8}},
            ""};
}

Criterion criterion2() {
    const Trajectory o = integrate({0.5, 2.0, 1.0}, {0.0, 1.0, {0.0, 1.0}}, IntegratorConfig::until(2 * kPi));
    const DualityParams p = params_of(o);
    const Trajectory d = dualize_trajectory(o, p);
    g_all_outputs.push_back(o);
    g_all_outputs.push_back(d);
    double rho = 0, st = 0, de = 0;
    for (const Sample& s : d.samples()) {
        rho = std::max(rho, std::abs(std::abs(s.z) - 0.5));
        st = std::max(st, std::abs(s.s - s.t));
        de = std::max(de, std::abs(energy(p.dual_potential(), s.state()) - (-0.5)));
    }
    return {2,
            "unit circular oscillator dualizes to circular Kepler orbit",
            {{"max|rho-1/2|", rho, 1e-9},
             {"|E_dual+k|", std::abs(p.E_dual + 0.5), 1e-9},
             {"max|energy(dual)-E_dual|", de, 1e-9},
             {"|k_dual+E/2|", std::abs(p.k_dual + 0.5 * p.E), 1e-9},
             {"max|s-t|", st, 1e-9}},
            ""};
}

Criterion criterion3(const std::vector<GridCase>& grid) {
    double pairing = 0, inv = 0;
    for (double nu : kGrid) pairing = std::max(pairing, std::abs((1 + nu / 2) * (1 + dual_exponent(nu) / 2) - 1));
    for (const GridCase& g : grid) {
        // Second dualization from the dual trajectory's own metadata.
        const DualityParams back = params_of(g.dual);
        inv = std::max({inv, rel(back.mu, g.nu), rel(back.k_dual, g.original.potential().k()),
                        rel(back.E_dual, g.original.meta().E0)});
    }
    return {3,
            "exponent pairing and involution on the exponent grid",
            {{"max|(1+nu/2)(1+mu/2)-1|", pairing, 1e-14}, {"max rel (nu,k,E) after two dualizations", inv, 1e-12}},
            ""};
}

Criterion criterion4(const std::vector<GridCase>& grid) {
    double worst = 0;
    std::size_t n = 0;
    for (const GridCase& g : grid) {
        const double q = g.params.exponent();
        for (std::size_t i = 0; i < g.original.size(); ++i) {
            const double l = angular_momentum(g.original.samples()[i].state(), 1.0);
            const double ld = angular_momentum(g.dual.samples()[i].state(), 1.0);
            worst = std::max(worst, std::abs(l - q * ld) / std::abs(l));
            ++n;
        }
    }
    return {4,
            "angular momentum scaling L = (1+nu/2) L_dual on every sample",
            {{"max rel |L-(1+nu/2)L_dual|", worst, 1e-12}},
            std::to_string(n) + " samples"};
}

Criterion criterion5() {
    const Trajectory o = integrate({1.0, 4.0, 1.0}, {0.0, 1.0, {0.0, std::sqrt(2.0)}}, IntegratorConfig::until(6.0));
    g_all_outputs.push_back(o);
    const DualityParams p = params_of(o);
    DualityParams wrong = p;
    wrong.k_dual = uncorrected_dual_coupling(p.nu, p.E);
    const double good = overlay_check(o, p, IntegratorConfig{}).measured;
    const double bad = overlay_check(o, wrong, IntegratorConfig{}).measured;
    char note[160];
    std::snprintf(note, sizeof note, "E=%.12g k_dual corrected=%.9f uncorrected=%.9f", p.E, p.k_dual, wrong.k_dual);
    return {5,
            "nu=4, E=2 overlay: corrected coupling passes, uncorrected coupling fails",
            {{"overlay corrected", good, 1e-5}, {"overlay uncorrected", bad, 1e-2, false}},
            note};
}

Criterion criterion6(const std::vector<GridCase>& grid) {
    double eom = 0, fun = 0;
    for (const GridCase& g : grid) {
        eom = std::max(eom, dual_eom_residual(g.dual, g.params).measured);
        fun = std::max(fun, functional_check(g.dual, g.params, 100).measured);
    }
    return {6,
            "dual equation of motion and functional equation on the grid",
            {{"max dual EOM residual", eom, 1e-5}, {"max functional residual", fun, 1e-10}},
            ""};
}

Criterion criterion7() {
    const PowerLawPotential hooke(0.5, 2.0, 1.0);
    const State circle{0.0, 1.0, {0.0, 1.0}};
    auto rk4_err = [&](double dt) {
        IntegratorConfig c;
        c.method = Method::RK4;
        c.dt = dt;
        c.t_end = 2 * kPi;
        const Trajectory t = integrate(hooke, circle, c);
        g_all_outputs.push_back(t);
        return std::abs(t.back().z - 1.0);
    };
    const double factor = rk4_err(1e-2) / rk4_err(5e-3);
    const Trajectory t = integrate(hooke, circle, IntegratorConfig::until(20 * kPi));
    g_all_outputs.push_back(t);
    const double de = drift_report(t, Quantity::Energy).max_rel_drift;
    const double dl = drift_report(t, Quantity::AngularMomentum).max_rel_drift;
    std::size_t bad = 0;
    for (const Trajectory& tr : g_all_outputs) bad += clock_increasing(tr) ? 0 : 1;
    return {7,
            "integrator quality gates",
            {{"rk4 halving factor", factor, 20.0, true, 12.0},
             {"energy rel drift, 10 periods", de, 1e-9},
             {"L rel drift, 10 periods", dl, 1e-9},
             {"trajectories with non-increasing clock", static_cast<double>(bad), 0.5}},
            std::to_string(g_all_outputs.size()) + " trajectories"};
}

Criterion criterion8() {
    const Trajectory o = integrate({0.5, 2.0, 1.0}, {0.0, 2.0, {0.0, 1.0}}, IntegratorConfig::until(2 * kPi));
    std::vector<State> states;
    for (const Sample& s : o.samples()) states.push_back(s.state());
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 10000; ++i) states.push_back({0.0, {u(rng), u(rng)}, {u(rng), u(rng)}});
    double trace = 0, re = 0, im = 0, single = 0;
    for (const State& st : states) {
        const double kappa = 1.0;
        const cplx T = fjh_complex(st, kappa, 1.0);
        const FjhTensor t = fjh_tensor(st, kappa, 1.0);
        const double e = energy({0.5 * kappa, 2.0, 1.0}, st);
        const double scale = std::max(1.0, std::abs(e));
        trace = std::max(trace, std::abs(t.trace() - e) / scale);
        re = std::max(re, std::abs(T.real() - (t.t11 - t.t22)) / scale);
        im = std::max(im, std::abs(T.imag() - 2 * t.t12) / scale);
        single = std::max(single, std::abs(T.imag() - t.t12) / scale);
    }
    return {8,
            "FJH structure identities per state",
            {{"max|trace-E|", trace, 1e-13},
             {"max|Re T-(T11-T22)|", re, 1e-13},
             {"max|Im T-2 T12|", im, 1e-13},
             {"max|Im T-T12| (single-factor form)", single, 1e-3, false}},
            std::to_string(states.size()) + " states"};
}

}  // namespace

int main() {
    std::vector<std::function<Criterion()>> runs;
    std::vector<GridCase> grid;
    try {
        grid = build_grid();
    } catch (const Error& e) {
        std::printf("FAIL grid construction: %s\n", e.what());
        return 1;
    }
    runs.push_back(criterion1);
    runs.push_back(criterion2);
    runs.push_back([&] { return criterion3(grid); });
    runs.push_back([&] { return criterion4(grid); });
    runs.push_back(criterion5);
    runs.push_back([&] { return criterion6(grid); });
    runs.push_back(criterion7);
    runs.push_back(criterion8);

    int failures = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        Criterion c;
        std::string error;
        try {
            c = runs[i]();
        } catch (const std::exception& e) {
            error = e.what();
            c.id = static_cast<int>(i + 1);
        }
        bool ok = error.empty();
        std::string detail;
        for (const Line& l : c.lines) {
            const bool pass = l.below ? (l.measured < l.bound && l.measured > l.lower) : l.measured > l.bound;
            ok = ok && pass;
            char buf[200];
            if (std::isfinite(l.lower))
                std::snprintf(buf, sizeof buf, "%s%s=%.3f (in [%g, %g])", detail.empty() ? "" : "; ",
                              l.label.c_str(), l.measured, l.lower, l.bound);
            else
                std::snprintf(buf, sizeof buf, "%s%s=%.3e (%s %.0e)", detail.empty() ? "" : "; ",
                              l.label.c_str(), l.measured, l.below ? "<" : ">", l.bound);
            detail += buf;
        }
        if (!error.empty()) detail = "error: " + error;
        if (!c.note.empty()) detail += " [" + c.note + "]";
        std::printf("%s criterion %d: %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.c_str());
        failures += ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(runs.size()) - failures, runs.size());
    return failures == 0 ? 0 : 1;
}
