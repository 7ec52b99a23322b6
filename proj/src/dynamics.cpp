#include "bav/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bav/errors.hpp"

namespace bav {

std::string_view method_name(Method m) { return m == Method::RK4 ? "rk4" : "rk45"; }

Method parse_method(std::string_view name) {
    if (name == "rk4") return Method::RK4;
    if (name == "rk45") return Method::RK45;
    throw Error(Errc::InvalidConfig, "unknown integration method '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const {
    auto bad = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
    if (!(dt > 0.0) || !std::isfinite(dt)) bad("dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) bad("t_end must be positive");
    if (method == Method::RK45) {
        if (!(rtol > 0.0 && rtol < 1.0)) bad("rtol must lie in (0, 1)");
        if (!(atol > 0.0 && atol < 1.0)) bad("atol must lie in (0, 1)");
    }
    if (!(r_min >= 0.0) || !std::isfinite(r_min)) bad("r_min must be non-negative");
    if (!(max_step >= 0.0) || !std::isfinite(max_step)) bad("max_step must be non-negative");
}

std::string IntegratorConfig::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << method_name(method) << " dt=" << dt;
    if (method == Method::RK45) {
        os << " rtol=" << rtol << " atol=" << atol;
        if (max_step > 0.0) os << " max_step=" << max_step;
    }
    return os.str();
}

double canonical_map_coefficient(double nu) {
    const double q = 1.0 + 0.5 * nu;
    return std::pow(q, 1.0 / q);
}

Trajectory::Trajectory(PowerLawPotential potential, std::vector<Sample> samples,
                       TrajectoryMeta meta)
    : potential_(potential), samples_(std::move(samples)), meta_(std::move(meta)) {
    if (samples_.empty()) throw Error(Errc::MalformedInput, "trajectory has no samples");
    if (samples_.front().s != 0.0)
        throw Error(Errc::MalformedInput, "Sundman clock must start at s = 0");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Sample& c = samples_[i];
        if (!is_finite(c.state()) || !std::isfinite(c.s))
            throw Error(Errc::MalformedInput, "non-finite sample at index " + std::to_string(i));
        if (i == 0) continue;
        const Sample& p = samples_[i - 1];
        if (!(c.t > p.t))
            throw Error(Errc::MalformedInput, "time not strictly increasing at index " + std::to_string(i));
        if (!(c.s > p.s))
            throw Error(Errc::MalformedInput,
                        "Sundman clock not strictly increasing at index " + std::to_string(i));
    }
}

State Trajectory::at(double t) const {
    const double lo = samples_.front().t, hi = samples_.back().t;
    if (t < lo || t > hi) throw Error(Errc::MalformedInput, "interpolation time outside trajectory");
    if (samples_.size() == 1) return samples_.front().state();
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double x, const Sample& s) { return x < s.t; });
    if (it == samples_.end()) --it;
    if (it == samples_.begin()) ++it;
    const Sample& a = *(it - 1);
    const Sample& b = *it;
    const double h = b.t - a.t;
    const double u = (t - a.t) / h;
    const double u2 = u * u, u3 = u2 * u;
    const cplx z = (2 * u3 - 3 * u2 + 1) * a.z + (u3 - 2 * u2 + u) * h * a.v + (-2 * u3 + 3 * u2) * b.z +
                   (u3 - u2) * h * b.v;
    const cplx v = ((6 * u2 - 6 * u) / h) * a.z + (3 * u2 - 4 * u + 1) * a.v +
                   ((-6 * u2 + 6 * u) / h) * b.z + (3 * u2 - 2 * u) * b.v;
    return {t, z, v};
}

namespace {

using Vec = std::array<double, 5>;  // x, y, vx, vy, s

Vec rhs(const PowerLawPotential& p, const Vec& y, double r_min) {
    const cplx z(y[0], y[1]);
    const cplx a = acceleration(p, z, r_min);
    const double clock = p.nu() == 0.0 ? 1.0 : std::pow(std::abs(z), p.nu());
    return {y[2], y[3], a.real(), a.imag(), clock};
}

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

Sample to_sample(double t, const Vec& y) { return {t, y[4], {y[0], y[1]}, {y[2], y[3]}}; }

void guard(const Vec& y, double r_min, double t) {
    if (std::hypot(y[0], y[1]) <= r_min) {
        std::ostringstream os;
        os << "trajectory entered the origin guard at t = " << t;
        throw Error(Errc::OriginSingularity, os.str());
    }
}

std::vector<Sample> run_rk4(const PowerLawPotential& p, Vec y, double t0,
                            const IntegratorConfig& cfg) {
    const double span = cfg.t_end - t0;
    const auto n = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
    if (n > cfg.max_steps) throw Error(Errc::StepFailure, "fixed step count exceeds max_steps");
    const double h = span / static_cast<double>(n);
    std::vector<Sample> out;
    out.reserve(n + 1);
    out.push_back(to_sample(t0, y));
    for (std::size_t i = 1; i <= n; ++i) {
        const Vec k1 = rhs(p, y, cfg.r_min);
        const Vec k2 = rhs(p, axpy(y, h, {{0.5, &k1}}), cfg.r_min);
        const Vec k3 = rhs(p, axpy(y, h, {{0.5, &k2}}), cfg.r_min);
        const Vec k4 = rhs(p, axpy(y, h, {{1.0, &k3}}), cfg.r_min);
        y = axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
        const double t = i == n ? cfg.t_end : t0 + static_cast<double>(i) * h;
        guard(y, cfg.r_min, t);
        out.push_back(to_sample(t, y));
    }
    return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

std::vector<Sample> run_rk45(const PowerLawPotential& p, Vec y, double t0,
                             const IntegratorConfig& cfg) {
    std::vector<Sample> out;
    out.push_back(to_sample(t0, y));
    double t = t0;
    double h = cfg.dt;
    if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    Vec k1 = rhs(p, y, cfg.r_min);
    std::size_t steps = 0;

    while (t < cfg.t_end) {
        if (++steps > cfg.max_steps) throw Error(Errc::StepFailure, "max_steps exceeded");
        bool last = false;
        if (cfg.t_end - t <= h * (1.0 + 1e-6)) {
            h = cfg.t_end - t;
            last = true;
        }
        if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "step size underflow at t = " << t;
            throw Error(Errc::StepFailure, os.str());
        }

        Vec y5, k7;
        double err = 0.0;
        try {
            const Vec k2 = rhs(p, axpy(y, h, {{a21, &k1}}), cfg.r_min);
            const Vec k3 = rhs(p, axpy(y, h, {{a31, &k1}, {a32, &k2}}), cfg.r_min);
            const Vec k4 = rhs(p, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), cfg.r_min);
            const Vec k5 =
                rhs(p, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), cfg.r_min);
            const Vec k6 = rhs(
                p, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}),
                cfg.r_min);
            y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            k7 = rhs(p, y5, cfg.r_min);
            double acc = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double e =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                acc = std::max(acc, std::abs(e / sc));
            }
            err = acc;
        } catch (const Error& ex) {
            // A stage probed the origin guard: shrink and retry.
            if (ex.code() != Errc::OriginSingularity) throw;
            h *= 0.25;
            continue;
        }
        if (!std::isfinite(err)) {
            h *= 0.25;
            continue;
        }

        if (err <= 1.0) {
            t = last ? cfg.t_end : t + h;
            y = y5;
            k1 = k7;
            guard(y, cfg.r_min, t);
            out.push_back(to_sample(t, y));
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
        }
        if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    }
    return out;
}

}  // namespace

Trajectory integrate(const PowerLawPotential& p, const State& initial, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!is_finite(initial)) throw Error(Errc::InvalidState, "initial state is not finite");
    if (std::abs(initial.z) <= cfg.r_min)
        throw Error(Errc::OriginSingularity, "initial position inside the origin guard");
    if (!(cfg.t_end > initial.t))
        throw Error(Errc::InvalidConfig, "t_end must exceed the initial time");

    const Vec y0{initial.z.real(), initial.z.imag(), initial.v.real(), initial.v.imag(), 0.0};
    auto samples = cfg.method == Method::RK4 ? run_rk4(p, y0, initial.t, cfg)
                                              : run_rk45(p, y0, initial.t, cfg);
    TrajectoryMeta meta;
    meta.E0 = energy(p, initial, cfg.r_min);
    meta.L0 = angular_momentum(initial, p.m());
    meta.integrator = cfg.describe();
    meta.map_coefficient = canonical_map_coefficient(p.nu());
    return Trajectory(p, std::move(samples), std::move(meta));
}

Trajectory reverse_time(const Trajectory& traj) {
    const auto src = traj.samples();
    const double t_first = src.front().t, t_last = src.back().t;
    const double s_last = src.back().s;
    std::vector<Sample> out;
    out.reserve(src.size());
    for (auto it = src.rbegin(); it != src.rend(); ++it)
        out.push_back({t_first + (t_last - it->t), s_last - it->s, it->z, -it->v});
    TrajectoryMeta meta = traj.meta();
    meta.E0 = energy(traj.potential(), out.front().state(), 0.0);
    meta.L0 = angular_momentum(out.front().state(), traj.potential().m());
    meta.branch_theta0.reset();
    meta.integrator += " (time-reversed)";
    return Trajectory(traj.potential(), std::move(out), std::move(meta));
}

namespace {

// Golden-section search for the extremum of |z(t)|^2 on [lo, hi].
double refine_radius2(const Trajectory& traj, double lo, double hi, bool maximize) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double t) {
        const double r2 = std::norm(traj.at(t).z);
        return maximize ? -r2 : r2;
    };
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    const double best = std::min({f1, f2, f(lo), f(hi)});
    return maximize ? -best : best;
}

}  // namespace

Apsides apsidal_radii(const Trajectory& traj) {
    const auto s = traj.samples();
    double lo2 = std::norm(s.front().z), hi2 = lo2;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r2 = std::norm(s[i].z);
        lo2 = std::min(lo2, r2);
        hi2 = std::max(hi2, r2);
        if (i == 0 || i + 1 == s.size()) continue;
        const double prev = std::norm(s[i - 1].z), next = std::norm(s[i + 1].z);
        if (r2 <= prev && r2 <= next) lo2 = std::min(lo2, refine_radius2(traj, s[i - 1].t, s[i + 1].t, false));
        if (r2 >= prev && r2 >= next) hi2 = std::max(hi2, refine_radius2(traj, s[i - 1].t, s[i + 1].t, true));
    }
    return {std::sqrt(lo2), std::sqrt(hi2)};
}

std::string_view quantity_name(Quantity q) {
    switch (q) {
        case Quantity::Energy: return "energy";
        case Quantity::AngularMomentum: return "angular_momentum";
        case Quantity::Fjh: return "fjh";
        case Quantity::Lrl: return "lrl";
    }
    return "unknown";
}

ConservedReport drift_report(const Trajectory& traj, Quantity quantity) {
    const PowerLawPotential& p = traj.potential();
    if (quantity == Quantity::Fjh && p.nu() != 2.0)
        throw Error(Errc::InapplicableQuantity,
                    "the FJH invariant is conserved only for Hooke motion (nu = 2)");
    if (quantity == Quantity::Lrl && p.nu() != -1.0)
        throw Error(Errc::InapplicableQuantity,
                    "the LRL vector is conserved only for Kepler motion (nu = -1)");

    std::vector<std::pair<double, cplx>> values;
    values.reserve(traj.size());
    for (const Sample& smp : traj.samples()) {
        const State st = smp.state();
        cplx val;
        switch (quantity) {
            case Quantity::Energy: val = energy(p, st, 0.0); break;
            case Quantity::AngularMomentum: val = angular_momentum(st, p.m()); break;
            case Quantity::Fjh: val = fjh_complex(st, 2.0 * p.k(), p.m()); break;
            case Quantity::Lrl: val = lrl_affix(st.z, st.v, p.k(), p.m()); break;
        }
        values.emplace_back(smp.t, val);
    }
    return make_conserved_report(std::string(quantity_name(quantity)), std::move(values));
}

}  // namespace bav
