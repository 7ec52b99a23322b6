#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bav/duality.hpp"
#include "bav/dynamics.hpp"

namespace bav {

enum class CheckStatus { Pass, Fail, Inapplicable };

std::string_view status_name(CheckStatus s);

struct VerificationReport {
    std::string check;
    CheckStatus status = CheckStatus::Fail;
    double measured = 0.0;
    double threshold = 0.0;
    std::string details;
};

/// Pass iff measured <= threshold; NaN measurements fail.
VerificationReport make_check(std::string check, double measured, double threshold,
                              std::string details = {});
VerificationReport inapplicable_check(std::string check, std::string reason);

struct VerifyThresholds {
    double identity = 1e-8;            // algebraic identities on exact samples
    double finite_difference = 1e-5;   // residuals built from finite differences
    double angular_momentum_scaling = 1e-12;
    double functional = 1e-10;
    double overlay = 1e-5;
};

/// Max |w'' + (mu k_dual / m) |w|^(mu-2) w| with w'' from central second
/// differences on a uniform resampling (4x the sample count) of the dual
/// trajectory, normalized by the largest acceleration scale on the path.
VerificationReport dual_eom_residual(const Trajectory& dual, const DualityParams& params,
                                     double threshold = VerifyThresholds{}.finite_difference);

/// Integrates the dual motion directly from the mapped initial state and
/// compares it with the mapped trajectory at equal dual times. The measured
/// value is max(position gap, velocity gap / 10).
VerificationReport overlay_check(const Trajectory& original, const DualityParams& params,
                                 const IntegratorConfig& cfg,
                                 double threshold = VerifyThresholds{}.overlay);

/// Functional-equation residual at random probe points in the annulus swept
/// by the dual trajectory.
VerificationReport functional_check(const Trajectory& dual, const DualityParams& params,
                                    std::size_t points = 100, std::uint64_t seed = 20240901,
                                    double threshold = VerifyThresholds{}.functional);

/// Angular-momentum scaling and dual energy on every sample pair; for nu = 2
/// also the FJH/LRL battery. Constancy checks report the bounding-box
/// diameter of the sampled values, so the result does not depend on the
/// direction of traversal.
std::vector<VerificationReport> identity_suite(const Trajectory& original, const Trajectory& dual,
                                               const DualityParams& params,
                                               const VerifyThresholds& thresholds = {});

bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace bav
