#include "bav/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bav/errors.hpp"

namespace bav {

std::string_view status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inapplicable: return "inapplicable";
    }
    return "unknown";
}

VerificationReport make_check(std::string check, double measured, double threshold,
                              std::string details) {
    VerificationReport r;
    r.check = std::move(check);
    r.measured = measured;
    r.threshold = threshold;
    r.status = measured <= threshold ? CheckStatus::Pass : CheckStatus::Fail;
    r.details = std::move(details);
    return r;
}

VerificationReport inapplicable_check(std::string check, std::string reason) {
    VerificationReport r;
    r.check = std::move(check);
    r.status = CheckStatus::Inapplicable;
    r.measured = std::numeric_limits<double>::quiet_NaN();
    r.threshold = std::numeric_limits<double>::quiet_NaN();
    r.details = std::move(reason);
    return r;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    return std::none_of(reports.begin(), reports.end(),
                        [](const auto& r) { return r.status == CheckStatus::Fail; });
}

namespace {

std::string fmt_cplx(cplx c) {
    std::ostringstream os;
    os.precision(12);
    os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    return os.str();
}

// Diameter of the axis-aligned box containing the values: invariant under
// any reordering of the samples.
struct Spread {
    double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo;
    double im_lo = re_lo, im_hi = -re_lo;

    void add(cplx c) {
        re_lo = std::min(re_lo, c.real());
        re_hi = std::max(re_hi, c.real());
        im_lo = std::min(im_lo, c.imag());
        im_hi = std::max(im_hi, c.imag());
    }
    double diameter() const { return std::hypot(re_hi - re_lo, im_hi - im_lo); }
    cplx centre() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
};

}  // namespace

VerificationReport dual_eom_residual(const Trajectory& dual, const DualityParams& params,
                                     double threshold) {
    const std::size_t n = dual.size();
    if (n < 5) throw Error(Errc::TooFewSamples, "dual EOM residual needs at least 5 samples");
    const PowerLawPotential model(params.k_dual, params.mu, params.m);

    const std::size_t count = 4 * n;
    const double t0 = dual.front().t, t1 = dual.back().t;
    const double h = (t1 - t0) / static_cast<double>(count - 1);
    std::vector<cplx> w(count);
    double centripetal = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        const double tau = j + 1 == count ? t1 : t0 + static_cast<double>(j) * h;
        const State st = dual.at(tau);
        w[j] = st.z;
        if (st.z != cplx(0.0, 0.0)) centripetal = std::max(centripetal, std::norm(st.v) / std::abs(st.z));
    }

    double worst = 0.0, max_acc = 0.0;
    for (std::size_t j = 1; j + 1 < count; ++j) {
        const cplx fd = (w[j + 1] - 2.0 * w[j] + w[j - 1]) / (h * h);
        const cplx model_acc = acceleration(model, w[j], 0.0);
        worst = std::max(worst, std::abs(fd - model_acc));
        max_acc = std::max(max_acc, std::abs(fd));
    }
    // Free motion has no acceleration; the centripetal scale v^2/r stands in.
    const double scale = std::max({max_acc, centripetal, 1e-300});

    std::ostringstream os;
    os.precision(6);
    os << "mu=" << params.mu << " k_dual=" << params.k_dual << " grid=" << count
       << " max|w''|=" << max_acc << " max|residual|=" << worst;
    return make_check("dual_eom_residual", worst / scale, threshold, os.str());
}

VerificationReport overlay_check(const Trajectory& original, const DualityParams& params,
                                 const IntegratorConfig& cfg, double threshold) {
    const Trajectory mapped = dualize_trajectory(original, params);
    IntegratorConfig direct_cfg = cfg;
    direct_cfg.t_end = mapped.back().t;
    const State start{mapped.front().t, mapped.front().z, mapped.front().v};

    std::ostringstream os;
    os.precision(6);
    os << "mu=" << params.mu << " k_dual=" << params.k_dual << " s_end=" << direct_cfg.t_end;
    try {
        const Trajectory direct = integrate(params.dual_potential(), start, direct_cfg);
        double pos_gap = 0.0, vel_gap = 0.0;
        for (const Sample& smp : mapped.samples()) {
            const State st = direct.at(smp.t);
            pos_gap = std::max(pos_gap, std::abs(st.z - smp.z));
            vel_gap = std::max(vel_gap, std::abs(st.v - smp.v));
        }
        os << " position_gap=" << pos_gap << " velocity_gap=" << vel_gap;
        return make_check("overlay", std::max(pos_gap, 0.1 * vel_gap), threshold, os.str());
    } catch (const Error& e) {
        if (e.code() != Errc::OriginSingularity && e.code() != Errc::StepFailure) throw;
        os << " direct integration failed: " << e.what();
        return make_check("overlay", std::numeric_limits<double>::infinity(), threshold, os.str());
    }
}

VerificationReport functional_check(const Trajectory& dual, const DualityParams& params,
                                    std::size_t points, std::uint64_t seed, double threshold) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Sample& smp : dual.samples()) {
        lo = std::min(lo, std::abs(smp.z));
        hi = std::max(hi, std::abs(smp.z));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(lo, hi);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

    double worst = 0.0;
    std::size_t used = 0, skipped = 0;
    while (used < points && skipped < 100 * points) {
        const cplx w = std::polar(radius(rng), angle(rng));
        try {
            worst = std::max(worst, functional_residual(w, params));
            ++used;
        } catch (const Error& e) {
            if (e.code() != Errc::TurningPoint) throw;
            ++skipped;
        }
    }
    std::ostringstream os;
    os.precision(6);
    os << "annulus=[" << lo << ", " << hi << "] points=" << used << " skipped=" << skipped;
    if (used < points) return make_check("functional_residual", std::numeric_limits<double>::infinity(), threshold, os.str());
    return make_check("functional_residual", worst, threshold, os.str());
}

std::vector<VerificationReport> identity_suite(const Trajectory& original, const Trajectory& dual,
                                               const DualityParams& params,
                                               const VerifyThresholds& thresholds) {
    if (original.size() != dual.size())
        throw Error(Errc::MetadataMismatch, "original and dual trajectories differ in length");
    const auto src = original.samples();
    const auto dst = dual.samples();
    const double m = params.m;
    const double q = params.exponent();
    const PowerLawPotential source = original.potential();
    std::vector<VerificationReport> out;

    {
        double worst = 0.0, l_max = 0.0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            const double l = angular_momentum(src[i].state(), m);
            const double l_dual = angular_momentum(dst[i].state(), m);
            worst = std::max(worst, std::abs(l - q * l_dual));
            l_max = std::max(l_max, std::abs(l));
        }
        out.push_back(make_check("angular_momentum_scaling", worst / std::max(l_max, kDriftFloor),
                                 thresholds.angular_momentum_scaling,
                                 "max |L - (1+nu/2) L_dual| / max |L|"));
    }
    {
        double worst = 0.0;
        for (const Sample& smp : dst) {
            const double lhs = std::norm(smp.v);
            const double rhs =
                (2.0 / m) * (params.E_dual - params.k_dual * std::pow(std::abs(smp.z), params.mu));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(make_check("dual_energy", worst, thresholds.identity,
                                 "max | |w'|^2 - (2/m)(E_dual - V(w)) |"));
    }

    static constexpr const char* kHookeChecks[] = {"fjh_constant", "fjh_trace", "fjh_complex_parts",
                                                   "lrl_constant", "lrl_fjh_ratio"};
    if (params.nu != 2.0) {
        for (const char* name : kHookeChecks)
            out.push_back(inapplicable_check(name, "requires Hooke motion (nu = 2)"));
        return out;
    }

    const double kappa = 2.0 * params.k;
    Spread fjh_spread, lrl_spread;
    double trace_gap = 0.0, parts_gap = 0.0, ratio_gap = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const State st = src[i].state();
        const cplx fjh = fjh_complex(st, kappa, m);
        const FjhTensor tensor = fjh_tensor(st, kappa, m);
        const double e = energy(source, st, 0.0);
        const cplx lrl = lrl_affix(dst[i].z, dst[i].v, params.k_dual, m);
        fjh_spread.add(fjh);
        lrl_spread.add(lrl);
        trace_gap = std::max(trace_gap, std::abs(tensor.trace() - e));
        parts_gap = std::max({parts_gap, std::abs(fjh.real() - (tensor.t11 - tensor.t22)),
                              std::abs(fjh.imag() - 2.0 * tensor.t12)});
        ratio_gap = std::max(ratio_gap, std::abs(lrl_from_fjh(fjh, e) - lrl));
    }
    out.push_back(make_check("fjh_constant", fjh_spread.diameter(), thresholds.identity,
                             "T ~ " + fmt_cplx(fjh_spread.centre())));
    out.push_back(make_check("fjh_trace", trace_gap, thresholds.identity, "max |T11 + T22 - E|"));
    out.push_back(make_check("fjh_complex_parts", parts_gap, thresholds.identity,
                             "max |Re T - (T11 - T22)|, |Im T - 2 T12|"));
    out.push_back(make_check("lrl_constant", lrl_spread.diameter(), thresholds.identity,
                             "A ~ " + fmt_cplx(lrl_spread.centre()) +
                                 ", |A| = " + std::to_string(std::abs(lrl_spread.centre()))));
    out.push_back(make_check("lrl_fjh_ratio", ratio_gap, thresholds.identity, "max |A + T/E|"));
    return out;
}

}  // namespace bav
