#include "bav/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bav/duality.hpp"
#include "bav/io.hpp"
#include "bav/verify.hpp"

namespace bav::cli {

int exit_code_for(Errc e) {
    switch (e) {
        case Errc::InvalidConfig:
        case Errc::InvalidPotential:
        case Errc::InvalidState:
        case Errc::DegenerateExponent:
        case Errc::MalformedInput:
        case Errc::TooFewSamples:
        case Errc::MetadataMismatch:
            return kInputError;
        case Errc::OriginSingularity:
        case Errc::StepFailure:
        case Errc::DegenerateCoupling:
        case Errc::ZeroEnergy:
        case Errc::TurningPoint:
        case Errc::InapplicableQuantity:
            return kIntegrationError;
        case Errc::BranchJump:
            return kBranchError;
    }
    return kInternalError;
}

namespace {

template <class Fn>
int guarded(std::ostream& err, const char* command, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        err << command << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << command << ": internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}); }

DualityParams params_for(const Trajectory& traj) {
    const PowerLawPotential& p = traj.potential();
    return dual_parameters(p.nu(), p.k(), traj.meta().E0, p.m(), traj.meta().map_coefficient);
}

void apply_overrides(DualityParams& params, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidConfig, "cannot open parameter overrides " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::InvalidConfig, std::string("overrides are not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::InvalidConfig, "overrides must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "k_dual") {
            if (!value.is_number()) throw Error(Errc::InvalidConfig, "k_dual must be numeric");
            params.k_dual = value.get<double>();
        } else if (key == "k_dual_formula") {
            const auto f = value.is_string() ? value.get<std::string>() : std::string{};
            if (f == "corrected")
                params.k_dual = dual_coupling(params.nu, params.E, params.map_coefficient);
            else if (f == "uncorrected")
                params.k_dual = uncorrected_dual_coupling(params.nu, params.E);
            else
                throw Error(Errc::InvalidConfig, "k_dual_formula must be 'corrected' or 'uncorrected'");
        } else {
            throw Error(Errc::InvalidConfig, "unknown override '" + key + "'");
        }
    }
}

std::vector<VerificationReport> full_battery(const Trajectory& original, const Trajectory& dual,
                                             const DualityParams& params) {
    std::vector<VerificationReport> reports;
    {
        const Trajectory remapped = dualize_trajectory(original, params);
        double gap = 0.0;
        const auto a = remapped.samples();
        const auto b = dual.samples();
        for (std::size_t i = 0; i < a.size(); ++i) {
            gap = std::max({gap, std::abs(a[i].z - b[i].z), std::abs(a[i].v - b[i].v),
                            std::abs(a[i].t - b[i].t)});
        }
        reports.push_back(make_check("mapping", gap, VerifyThresholds{}.identity,
                                     "max gap between the mapped original and the dual file"));
    }
    reports.push_back(dual_eom_residual(dual, params));
    reports.push_back(functional_check(dual, params));
    for (auto& r : identity_suite(original, dual, params)) reports.push_back(std::move(r));
    reports.push_back(overlay_check(original, params, IntegratorConfig::until(1.0)));
    return reports;
}

void print_reports(std::ostream& out, const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) {
        out << "  " << status_name(r.status) << "  " << r.check;
        if (r.status != CheckStatus::Inapplicable) out << "  measured=" << r.measured << " threshold=" << r.threshold;
        out << '\n';
    }
}

}  // namespace

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, "simulate", [&] {
        const io::RunConfig cfg = io::load_run_config(args.config);
        const auto path = args.out ? args.out : cfg.trajectory_path;
        if (!path) throw Error(Errc::InvalidConfig, "no trajectory output path (--out or outputs.trajectory)");
        const PowerLawPotential pot(cfg.k, cfg.nu, cfg.mass);
        const Trajectory traj = integrate(pot, cfg.initial, cfg.integrator);
        io::write_trajectory_csv(*path, traj);
        if (cfg.plot_path) {
            io::Polyline line{"z(t)", "#1f5fbf", {}};
            for (const Sample& s : traj.samples()) line.points.push_back(s.z);
            io::write_text(*cfg.plot_path, io::orbit_svg({line}, "trajectory"));
        }
        if (cfg.report_path) {
            std::vector<VerificationReport> drift;
            for (Quantity q : {Quantity::Energy, Quantity::AngularMomentum}) {
                const ConservedReport r = drift_report(traj, q);
                drift.push_back(make_check(r.quantity + "_drift", r.max_rel_drift, 1e-8,
                                           "max relative drift along the trajectory"));
            }
            io::write_text(*cfg.report_path, io::reports_to_json(drift));
        }
        out << "wrote " << traj.size() << " samples to " << path->string() << '\n';
        return static_cast<int>(kOk);
    });
}

int run_dualize(const DualizeArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, "dualize", [&] {
        const Trajectory traj = io::read_trajectory_csv(args.in);
        if (traj.size() < 5)
            throw Error(Errc::TooFewSamples, "trajectory has " + std::to_string(traj.size()) +
                                                 " samples; at least 5 are required");
        DualityParams params = params_for(traj);
        if (args.params) apply_overrides(params, *args.params);
        if (auto w = dual_parameter_warning(params)) err << "dualize: warning: " << *w << '\n';
        const Trajectory dual = dualize_trajectory(traj, params);
        io::write_trajectory_csv(args.out, dual);
        out.precision(17);
        out << "mu=" << params.mu << " k_dual=" << params.k_dual << " E_dual=" << params.E_dual
            << " L_dual0=" << dual.meta().L0 << " winding_turns=" << dual.meta().dual_of->winding_turns
            << '\n';
        return static_cast<int>(kOk);
    });
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, "verify", [&] {
        const Trajectory original = io::read_trajectory_csv(args.original);
        const Trajectory dual = io::read_trajectory_csv(args.dual);
        if (!same(original.potential().m(), dual.potential().m()))
            throw Error(Errc::MetadataMismatch, "mass differs between original and dual");
        DualityParams params = params_for(original);
        if (!same(dual.potential().nu(), params.mu))
            throw Error(Errc::MetadataMismatch, "dual exponent does not match the dual of the original");
        if (original.size() != dual.size())
            throw Error(Errc::MetadataMismatch, "original and dual differ in sample count");
        // Check the dual against the coupling and energy it claims.
        params.k_dual = dual.potential().k();
        params.E_dual = dual.meta().E0;

        const auto reports = full_battery(original, dual, params);
        io::write_text(args.report, io::reports_to_json(reports));
        print_reports(out, reports);
        return static_cast<int>(all_passed(reports) ? kOk : kCheckFailed);
    });
}

int run_demo(const DemoArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, "demo", [&] {
        if (args.scenario != "hooke-kepler")
            throw Error(Errc::InvalidConfig, "unknown demo scenario '" + args.scenario + "'");
        if (!(args.eccentricity >= 0.0 && args.eccentricity < 1.0))
            throw Error(Errc::InvalidConfig, "eccentricity must lie in [0, 1)");
        std::filesystem::create_directories(args.out_dir);

        const double nu = args.nu;
        const double m = 1.0;
        double k = 0.0;
        State initial;
        double t_end = 0.0;
        if (nu == 2.0) {
            // Oscillator ellipse z = a cos t + i b sin t with unit stiffness;
            // its dual Kepler orbit has eccentricity (a^2 - b^2)/(a^2 + b^2).
            const double a = 2.0;
            const double b = a * std::sqrt((1.0 - args.eccentricity) / (1.0 + args.eccentricity));
            k = 0.5;
            initial = {0.0, {a, 0.0}, {0.0, b}};
            t_end = 20.0 * std::numbers::pi;
        } else {
            k = nu >= 0.0 ? 1.0 : -1.0;
            const double v_circ = nu == 0.0 ? 1.0 : std::sqrt(nu * k / m);
            initial = {0.0, {1.0, 0.0}, {0.0, v_circ * std::sqrt(1.0 - args.eccentricity)}};
            t_end = 20.0;
        }
        const PowerLawPotential pot(k, nu, m);
        const Trajectory original = integrate(pot, initial, IntegratorConfig::until(t_end));
        const DualityParams params = params_for(original);
        const Trajectory dual = dualize_trajectory(original, params);
        const auto reports = full_battery(original, dual, params);

        const auto dir = args.out_dir;
        io::write_trajectory_csv(dir / "original.csv", original);
        io::write_trajectory_csv(dir / "dual.csv", dual);
        io::write_text(dir / "report.json", io::reports_to_json(reports));
        io::Polyline src{"original z(t)", "#1f5fbf", {}}, dst{"dual w(s)", "#c0392b", {}};
        for (const Sample& s : original.samples()) src.points.push_back(s.z);
        for (const Sample& s : dual.samples()) dst.points.push_back(s.z);
        io::write_text(dir / "orbits.svg", io::orbit_svg({src, dst}, "duality overlay"));

        std::ostringstream summary;
        summary.precision(10);
        summary << "nu = " << params.nu << ", mu = " << params.mu << '\n'
                << "k = " << params.k << ", k_dual = " << params.k_dual << '\n'
                << "E = " << params.E << ", E_dual = " << params.E_dual << '\n'
                << "L = " << original.meta().L0 << ", L_dual = " << dual.meta().L0 << '\n';
        if (nu == 2.0) {
            const cplx fjh = fjh_complex(original.front().state(), 2.0 * k, m);
            const cplx lrl = lrl_affix(dual.front().z, dual.front().v, params.k_dual, m);
            const Apsides aps = apsidal_radii(dual);
            summary << "T = " << fjh.real() << (fjh.imag() < 0 ? " - " : " + ") << std::abs(fjh.imag()) << "i\n"
                    << "A = " << lrl.real() << (lrl.imag() < 0 ? " - " : " + ") << std::abs(lrl.imag()) << "i\n"
                    << "-T/E = " << (-fjh / params.E).real() << '\n'
                    << "|A| = " << std::abs(lrl) << '\n'
                    << "eccentricity (apsides) = " << aps.eccentricity() << '\n';
        } else {
            summary << "FJH/LRL checks inapplicable for nu != 2\n";
        }
        summary << "verdict: " << (all_passed(reports) ? "all checks passed" : "CHECK FAILURE") << '\n';
        io::write_text(dir / "summary.txt", summary.str());
        out << summary.str();
        print_reports(out, reports);
        return static_cast<int>(all_passed(reports) ? kOk : kCheckFailed);
    });
}

}  // namespace bav::cli
