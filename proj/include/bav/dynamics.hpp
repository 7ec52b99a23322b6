#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bav/core.hpp"

namespace bav {

enum class Method { RK4, RK45 };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

// The step cap bounds the sample spacing of adaptive runs so that Hermite
// interpolation and finite differences on the samples stay accurate.
inline constexpr double kDefaultMaxStep = 5e-4;

struct IntegratorConfig {
    Method method = Method::RK45;
    double dt = 1e-3;       // fixed step (RK4) or initial step (RK45)
    double t_end = 1.0;     // absolute end time
    double rtol = 1e-10;
    double atol = 1e-10;
    double r_min = kDefaultOriginGuard;
    double max_step = kDefaultMaxStep;  // adaptive step cap, 0 = none
    std::size_t max_steps = 20'000'000;

    static IntegratorConfig until(double t_end) {
        IntegratorConfig c;
        c.t_end = t_end;
        return c;
    }

    void validate() const;
    std::string describe() const;
};

/// One record of a trajectory: time t, Sundman clock s, position, velocity.
struct Sample {
    double t = 0.0;
    double s = 0.0;
    cplx z;
    cplx v;

    State state() const { return {t, z, v}; }
};

/// Provenance attached to a trajectory produced by the duality transform.
struct DualOrigin {
    double source_k = 0.0;
    double source_nu = 0.0;
    double source_E = 0.0;
    double source_L0 = 0.0;
    double winding_turns = 0.0;  // net turns of the source position about the origin
};

struct TrajectoryMeta {
    double E0 = 0.0;
    double L0 = 0.0;
    std::string integrator;
    // Coefficient c of the position map z = c w^(1/(1+nu/2)) used when this
    // trajectory is itself dualized. Integrated trajectories use the canonical
    // (1+nu/2)^(1/(1+nu/2)); dual trajectories carry the return-leg value.
    double map_coefficient = 1.0;
    // Unwrapped argument of the first position, when the branch is inherited.
    std::optional<double> branch_theta0;
    std::optional<DualOrigin> dual_of;
};

/// Immutable sequence of samples with strictly increasing t and s, s(0) = 0.
class Trajectory {
public:
    Trajectory(PowerLawPotential potential, std::vector<Sample> samples, TrajectoryMeta meta);

    const PowerLawPotential& potential() const noexcept { return potential_; }
    std::span<const Sample> samples() const noexcept { return samples_; }
    const TrajectoryMeta& meta() const noexcept { return meta_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Sample& front() const { return samples_.front(); }
    const Sample& back() const { return samples_.back(); }

    /// Cubic Hermite interpolation of position and velocity at time t.
    State at(double t) const;

private:
    PowerLawPotential potential_;
    std::vector<Sample> samples_;
    TrajectoryMeta meta_;
};

double canonical_map_coefficient(double nu);

/// Integrates z'' = acceleration(p, z) together with the Sundman clock
/// ds/dt = |z|^nu, from the initial state to cfg.t_end.
Trajectory integrate(const PowerLawPotential& p, const State& initial, const IntegratorConfig& cfg);

/// Same motion traversed backwards: order reversed, velocities negated,
/// t and s re-origined so both still start at their first value / zero.
Trajectory reverse_time(const Trajectory& traj);

struct Apsides {
    double r_min = 0.0;
    double r_max = 0.0;

    double eccentricity() const { return (r_max - r_min) / (r_max + r_min); }
};

/// Extreme radii of the path, with each sampled extremum refined on the
/// Hermite interpolant.
Apsides apsidal_radii(const Trajectory& traj);

enum class Quantity { Energy, AngularMomentum, Fjh, Lrl };

std::string_view quantity_name(Quantity q);

ConservedReport drift_report(const Trajectory& traj, Quantity quantity);

}  // namespace bav
