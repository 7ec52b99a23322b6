#include "bav/core.hpp"

#include <algorithm>
#include <cmath>

#include "bav/errors.hpp"

namespace bav {

bool is_finite(const State& s) {
    return std::isfinite(s.t) && std::isfinite(s.z.real()) && std::isfinite(s.z.imag()) &&
           std::isfinite(s.v.real()) && std::isfinite(s.v.imag());
}

PowerLawPotential::PowerLawPotential(double k, double nu, double m) : k_(k), nu_(nu), m_(m) {
    if (!std::isfinite(k) || !std::isfinite(nu) || !std::isfinite(m))
        throw Error(Errc::InvalidPotential, "non-finite potential parameter");
    if (!(m > 0.0)) throw Error(Errc::InvalidPotential, "mass must be positive");
    if (nu == -2.0) throw Error(Errc::DegenerateExponent, "degenerate exponent nu = -2");
    if (nu < -2.0)
        throw Error(Errc::InvalidPotential, "exponent nu must exceed -2 for a real dual coupling");
}

double PowerLawPotential::value(cplx z) const {
    if (nu_ == 0.0) return k_;
    return k_ * std::pow(std::abs(z), nu_);
}

ConservedReport make_conserved_report(std::string quantity,
                                      std::vector<std::pair<double, cplx>> samples) {
    ConservedReport r;
    r.quantity = std::move(quantity);
    if (!samples.empty()) {
        r.initial = samples.front().second;
        const double denom = std::max(std::abs(r.initial), kDriftFloor);
        for (const auto& [t, value] : samples) {
            const double d = std::abs(value - r.initial);
            r.max_abs_drift = std::max(r.max_abs_drift, d);
            r.max_rel_drift = std::max(r.max_rel_drift, d / denom);
        }
    }
    r.samples = std::move(samples);
    return r;
}

cplx acceleration(const PowerLawPotential& p, cplx z, double r_min) {
    if (p.nu() == 0.0) return {0.0, 0.0};
    const double r = std::abs(z);
    if (r <= r_min && p.nu() < 2.0)
        throw Error(Errc::OriginSingularity, "force diverges at |z| = " + std::to_string(r));
    if (p.nu() == 2.0) return -(2.0 * p.k() / p.m()) * z;
    if (r == 0.0) return {0.0, 0.0};
    return -(p.nu() * p.k() / p.m()) * std::pow(r, p.nu() - 2.0) * z;
}

double energy(const PowerLawPotential& p, const State& s, double r_min) {
    if (p.nu() < 0.0 && std::abs(s.z) <= r_min)
        throw Error(Errc::OriginSingularity, "potential diverges at the origin");
    return 0.5 * p.m() * std::norm(s.v) + p.value(s.z);
}

double angular_momentum(const State& s, double m) { return m * (std::conj(s.z) * s.v).imag(); }

cplx fjh_complex(const State& s, double kappa, double m) {
    return 0.5 * m * s.v * s.v + 0.5 * kappa * s.z * s.z;
}

FjhTensor fjh_tensor(const State& s, double kappa, double m) {
    const double x = s.z.real(), y = s.z.imag();
    const double vx = s.v.real(), vy = s.v.imag();
    return {0.5 * m * vx * vx + 0.5 * kappa * x * x, 0.5 * m * vx * vy + 0.5 * kappa * x * y,
            0.5 * m * vy * vy + 0.5 * kappa * y * y};
}

cplx lrl_affix(cplx w, cplx w_prime, double k_dual, double m) {
    const double rho = std::abs(w);
    if (rho == 0.0) throw Error(Errc::OriginSingularity, "LRL vector undefined at w = 0");
    if (k_dual == 0.0) throw Error(Errc::DegenerateCoupling, "LRL vector needs a nonzero coupling");
    const double l_dual = m * (std::conj(w) * w_prime).imag();
    return (m / k_dual) * cplx(0.0, 1.0) * w_prime * l_dual - w / rho;
}

cplx lrl_from_fjh(cplx fjh, double energy, double floor) {
    if (std::abs(energy) < floor)
        throw Error(Errc::ZeroEnergy, "duality to Kepler motion is undefined at E = 0");
    return -fjh / energy;
}

}  // namespace bav
