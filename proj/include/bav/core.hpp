#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace bav {

using cplx = std::complex<double>;

inline constexpr double kDefaultOriginGuard = 1e-12;
inline constexpr double kDriftFloor = 1e-300;

/// Instantaneous phase point of a planar motion in affix form.
struct State {
    double t = 0.0;
    cplx z;
    cplx v;
};

bool is_finite(const State& s);

/// Central power-law potential U(z) = k |z|^nu acting on a particle of mass m.
///
/// Exponents at or below -2 are rejected: the conformal map exponent
/// 1 + nu/2 must be positive for the dual coupling to stay real.
class PowerLawPotential {
public:
    PowerLawPotential(double k, double nu, double m);

    double k() const noexcept { return k_; }
    double nu() const noexcept { return nu_; }
    double m() const noexcept { return m_; }

    double value(cplx z) const;

    friend bool operator==(const PowerLawPotential&, const PowerLawPotential&) = default;

private:
    double k_;
    double nu_;
    double m_;
};

/// Symmetric 2x2 Fradkin-Jauch-Hill tensor of the isotropic oscillator.
struct FjhTensor {
    double t11 = 0.0;
    double t12 = 0.0;
    double t22 = 0.0;

    double trace() const noexcept { return t11 + t22; }
};

/// Values of one conserved quantity sampled along a trajectory.
/// Real-valued quantities are stored with zero imaginary part.
struct ConservedReport {
    std::string quantity;
    std::vector<std::pair<double, cplx>> samples;
    cplx initial;
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;
};

ConservedReport make_conserved_report(std::string quantity,
                                      std::vector<std::pair<double, cplx>> samples);

/// z'' = -(nu k / m) |z|^(nu-2) z. Throws OriginSingularity when the force
/// diverges at |z| <= r_min (nu < 2).
cplx acceleration(const PowerLawPotential& p, cplx z, double r_min = kDefaultOriginGuard);

double energy(const PowerLawPotential& p, const State& s, double r_min = kDefaultOriginGuard);

double angular_momentum(const State& s, double m);

// Hooke-motion invariants take the stiffness kappa of U = kappa |z|^2 / 2,
// i.e. kappa = 2k for the power-law form with nu = 2.
cplx fjh_complex(const State& s, double kappa, double m);
FjhTensor fjh_tensor(const State& s, double kappa, double m);

/// Laplace-Runge-Lenz affix of a Kepler motion in V = k_dual / |w|.
cplx lrl_affix(cplx w, cplx w_prime, double k_dual, double m);

/// LRL affix obtained from the oscillator invariants as -T/E.
cplx lrl_from_fjh(cplx fjh, double energy, double floor = 1e-14);

}  // namespace bav
