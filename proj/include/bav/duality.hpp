#pragma once

#include <numbers>
#include <optional>
#include <string>

#include "bav/core.hpp"
#include "bav/dynamics.hpp"

namespace bav {

/// Parameters of the duality between motion in k|z|^nu at energy E and
/// motion in k_dual|w|^mu at energy E_dual.
///
/// The position map is w = z^(1+nu/2) / a with a = map_coefficient^(1+nu/2);
/// equivalently z = map_coefficient * w^(1/(1+nu/2)). The canonical choice
/// map_coefficient = (1+nu/2)^(1/(1+nu/2)) gives w = z^(1+nu/2)/(1+nu/2) and
/// the Sundman clock ds = |z|^nu dt, with E_dual = -k. In general
/// ds = (q/a)^2 |z|^nu dt and E_dual = -k (a/q)^2, where q = 1+nu/2.
struct DualityParams {
    double nu = 0.0;
    double mu = 0.0;
    double k = 0.0;
    double k_dual = 0.0;
    double E = 0.0;
    double E_dual = 0.0;
    double m = 1.0;
    double map_coefficient = 1.0;

    double exponent() const noexcept { return 1.0 + 0.5 * nu; }
    double map_scale() const;
    PowerLawPotential source_potential() const { return {k, nu, m}; }
    PowerLawPotential dual_potential() const { return {k_dual, mu, m}; }
};

double dual_exponent(double nu);

/// Coupling of the dual potential for the map normalization `map_coefficient`;
/// reduces to -E (1+nu/2)^mu for the canonical normalization.
double dual_coupling(double nu, double E, double map_coefficient);

/// The coupling -E (1+mu/2)^mu. It does not produce the dual motion for
/// nu != 0 and is kept only to demonstrate that it fails the checks.
double uncorrected_dual_coupling(double nu, double E);

DualityParams dual_parameters(double nu, double k, double E, double m);
DualityParams dual_parameters(double nu, double k, double E, double m, double map_coefficient);

/// Parameters of the transform that carries the dual motion back onto the
/// source motion: exponents, couplings and energies swap exactly.
DualityParams return_leg(const DualityParams& p);

/// Non-empty when the parameters are usable but degenerate (E = 0).
std::optional<std::string> dual_parameter_warning(const DualityParams& p);

/// Continuous argument of a planar path, unwrapped sample by sample.
class BranchTracker {
public:
    static constexpr double kDefaultMaxIncrement = 0.5 * std::numbers::pi;

    /// Seeds theta with the principal argument of z.
    explicit BranchTracker(cplx z, double max_increment = kDefaultMaxIncrement);
    /// Seeds theta with an explicit unwrapped angle, which must agree with arg(z) mod 2 pi.
    static BranchTracker seeded(cplx z, double theta, double max_increment = kDefaultMaxIncrement);

    /// Advances to z; throws BranchJump if the argument moves by more than
    /// max_increment, where the winding would be ambiguous.
    double update(cplx z);

    double theta() const noexcept { return theta_; }
    cplx last() const noexcept { return last_; }

private:
    double theta_;
    cplx last_;
    double max_increment_;
};

struct DualPoint {
    cplx w;
    cplx w_prime;  // dw/ds
};

/// w = z^(1+nu/2)/a, w' = (a/q) v / conj(z)^(nu/2), powers taken on the
/// tracked branch. The tracker follows z.
DualPoint map_state(const State& state, const DualityParams& params, BranchTracker& branch,
                    double r_min = kDefaultOriginGuard);

/// Inverse of map_state. The tracker follows w; time is left at zero.
State unmap_state(cplx w, cplx w_prime, const DualityParams& params, BranchTracker& branch,
                  double r_min = kDefaultOriginGuard);

/// Maps every sample in order through one branch tracker. The dual
/// trajectory's time is the source Sundman clock and its clock is the
/// source time measured from the first sample.
Trajectory dualize_trajectory(const Trajectory& traj, const DualityParams& params);

/// | |f'(w)|^2 (E - U(f(w))) - (E_dual - V(w)) | on the principal branch.
double functional_residual(cplx w, const DualityParams& params, double r_min = kDefaultOriginGuard);

}  // namespace bav
