#include "bav/duality.hpp"

#include <cmath>
#include <sstream>

#include "bav/errors.hpp"

namespace bav {

namespace {

void check_exponent(double nu) {
    if (!std::isfinite(nu)) throw Error(Errc::InvalidPotential, "non-finite exponent");
    if (nu == -2.0) throw Error(Errc::DegenerateExponent, "degenerate exponent nu = -2");
    if (nu < -2.0) throw Error(Errc::InvalidPotential, "exponent nu must exceed -2");
}

// Exponents nu = 0, 2, 4, ... admit branch-free integer powers.
std::optional<int> half_integer_exponent(double nu) {
    const double n = 0.5 * nu;
    if (nu >= 0.0 && nu <= 32.0 && n == std::floor(n)) return static_cast<int>(n);
    return std::nullopt;
}

cplx ipow(cplx z, int n) {
    cplx out(1.0, 0.0);
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

double DualityParams::map_scale() const {
    // Exact for the canonical normalization, where a = q.
    if (map_coefficient == canonical_map_coefficient(nu)) return exponent();
    return std::pow(map_coefficient, exponent());
}

double dual_exponent(double nu) {
    if (nu == -2.0) throw Error(Errc::DegenerateExponent, "degenerate exponent nu = -2");
    return -nu / (1.0 + 0.5 * nu);
}

double dual_coupling(double nu, double E, double map_coefficient) {
    DualityParams p;
    p.nu = nu;
    p.map_coefficient = map_coefficient;
    const double q = p.exponent();
    const double a = p.map_scale();
    return -E * (a / q) * (a / q) * std::pow(a, dual_exponent(nu));
}

double uncorrected_dual_coupling(double nu, double E) {
    const double mu = dual_exponent(nu);
    return -E * std::pow(1.0 + 0.5 * mu, mu);
}

DualityParams dual_parameters(double nu, double k, double E, double m) {
    check_exponent(nu);
    return dual_parameters(nu, k, E, m, canonical_map_coefficient(nu));
}

DualityParams dual_parameters(double nu, double k, double E, double m, double map_coefficient) {
    check_exponent(nu);
    if (!(m > 0.0) || !std::isfinite(m)) throw Error(Errc::InvalidPotential, "mass must be positive");
    if (!std::isfinite(k) || !std::isfinite(E))
        throw Error(Errc::InvalidPotential, "non-finite coupling or energy");
    if (!(map_coefficient > 0.0) || !std::isfinite(map_coefficient))
        throw Error(Errc::InvalidConfig, "map coefficient must be positive");
    DualityParams p;
    p.nu = nu;
    p.mu = dual_exponent(nu);
    p.k = k;
    p.E = E;
    p.m = m;
    p.map_coefficient = map_coefficient;
    const double scale = p.map_scale() / p.exponent();
    p.E_dual = -k * scale * scale;
    p.k_dual = dual_coupling(nu, E, map_coefficient);
    return p;
}

DualityParams return_leg(const DualityParams& p) {
    // Forward map z -> w = (z/c)^q, so the return map is w -> z = (w / c^-q)^(1/q).
    const double back = std::pow(p.map_coefficient, -p.exponent());
    return dual_parameters(p.mu, p.k_dual, p.E_dual, p.m, back);
}

std::optional<std::string> dual_parameter_warning(const DualityParams& p) {
    if (p.E == 0.0) return "zero energy: the dual coupling vanishes and the dual motion is free";
    return std::nullopt;
}

BranchTracker::BranchTracker(cplx z, double max_increment)
    : theta_(std::arg(z)), last_(z), max_increment_(max_increment) {
    if (z == cplx(0.0, 0.0)) throw Error(Errc::OriginSingularity, "argument undefined at the origin");
}

BranchTracker BranchTracker::seeded(cplx z, double theta, double max_increment) {
    BranchTracker b(z, max_increment);
    const double gap = std::remainder(theta - std::arg(z), 2.0 * std::numbers::pi);
    if (std::abs(gap) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "seed angle " << theta << " inconsistent with arg(z) = " << std::arg(z);
        throw Error(Errc::BranchJump, os.str());
    }
    b.theta_ = theta;
    return b;
}

double BranchTracker::update(cplx z) {
    if (z == cplx(0.0, 0.0)) throw Error(Errc::OriginSingularity, "argument undefined at the origin");
    const double delta = std::arg(z * std::conj(last_));
    if (std::abs(delta) > max_increment_) {
        std::ostringstream os;
        os.precision(6);
        os << "argument jumped by " << delta << " rad between consecutive samples";
        throw Error(Errc::BranchJump, os.str());
    }
    theta_ += delta;
    last_ = z;
    return theta_;
}

DualPoint map_state(const State& state, const DualityParams& params, BranchTracker& branch,
                    double r_min) {
    const double r = std::abs(state.z);
    if (r <= r_min) throw Error(Errc::OriginSingularity, "cannot map a state at the origin");
    const double theta = branch.update(state.z);
    const double q = params.exponent();
    const double a = params.map_scale();
    if (const auto n = half_integer_exponent(params.nu)) {
        return {ipow(state.z, *n + 1) / a, (a / q) * state.v / ipow(std::conj(state.z), *n)};
    }
    const cplx w = std::polar(std::pow(r, q), q * theta) / a;
    const cplx w_prime =
        (a / q) * state.v * std::polar(std::pow(r, -0.5 * params.nu), 0.5 * params.nu * theta);
    return {w, w_prime};
}

State unmap_state(cplx w, cplx w_prime, const DualityParams& params, BranchTracker& branch,
                  double r_min) {
    const double rho = std::abs(w);
    if (rho <= r_min) throw Error(Errc::OriginSingularity, "cannot unmap a state at the origin");
    const double theta_w = branch.update(w);
    const double q = params.exponent();
    const double a = params.map_scale();
    if (q == 1.0 && a == 1.0) return {0.0, w, w_prime};
    const double theta = theta_w / q;
    const double r = std::pow(a * rho, 1.0 / q);
    const cplx z = std::polar(r, theta);
    const cplx v = (q / a) * w_prime * std::polar(std::pow(r, 0.5 * params.nu), -0.5 * params.nu * theta);
    return {0.0, z, v};
}

Trajectory dualize_trajectory(const Trajectory& traj, const DualityParams& params) {
    const PowerLawPotential& p = traj.potential();
    if (!close_rel(p.nu(), params.nu, 1e-12) || !close_rel(p.k(), params.k, 1e-12) ||
        !close_rel(p.m(), params.m, 1e-12))
        throw Error(Errc::MetadataMismatch, "trajectory potential does not match duality parameters");
    const double e_gap = std::abs(traj.meta().E0 - params.E);
    if (e_gap > 1e-6 * std::max(std::abs(params.E), 1e-9)) {
        std::ostringstream os;
        os.precision(17);
        os << "trajectory energy " << traj.meta().E0 << " does not match E = " << params.E;
        throw Error(Errc::MetadataMismatch, os.str());
    }
    if (!close_rel(traj.meta().map_coefficient, params.map_coefficient, 1e-12))
        throw Error(Errc::MetadataMismatch,
                    "map coefficient does not match the trajectory's Sundman clock");

    const auto src = traj.samples();
    BranchTracker branch = traj.meta().branch_theta0
                               ? BranchTracker::seeded(src.front().z, *traj.meta().branch_theta0)
                               : BranchTracker(src.front().z);
    const double theta0 = branch.theta();
    const double t0 = src.front().t;

    std::vector<Sample> out;
    out.reserve(src.size());
    for (const Sample& smp : src) {
        const DualPoint d = map_state(smp.state(), params, branch, 0.0);
        out.push_back({smp.s, smp.t - t0, d.w, d.w_prime});
    }

    const double q = params.exponent();
    TrajectoryMeta meta;
    meta.E0 = params.E_dual;
    meta.L0 = traj.meta().L0 / q;
    meta.integrator = "dual of [" + traj.meta().integrator + "]";
    meta.map_coefficient = std::pow(params.map_coefficient, -q);
    meta.branch_theta0 = q * theta0;
    meta.dual_of = DualOrigin{params.k, params.nu, params.E, traj.meta().L0,
                              (branch.theta() - theta0) / (2.0 * std::numbers::pi)};
    return Trajectory(params.dual_potential(), std::move(out), std::move(meta));
}

double functional_residual(cplx w, const DualityParams& params, double r_min) {
    const double rho = std::abs(w);
    if (rho <= r_min) throw Error(Errc::OriginSingularity, "probe point inside the origin guard");
    const double q = params.exponent();
    const double a = params.map_scale();
    const double r = std::pow(a * rho, 1.0 / q);  // |f(w)|
    const double conformal = (a / q) * (a / q) * std::pow(a * rho, 2.0 / q - 2.0);  // |f'(w)|^2
    const double source_gap = params.E - params.k * std::pow(r, params.nu);
    if (std::abs(source_gap) < 1e-12)
        throw Error(Errc::TurningPoint, "E - U(f(w)) vanishes at the probe point");
    const double dual_gap = params.E_dual - params.k_dual * std::pow(rho, params.mu);
    return std::abs(conformal * source_gap - dual_gap);
}

}  // namespace bav
