#include "bav/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bav/errors.hpp"

namespace bav::io {

using nlohmann::json;

namespace {

constexpr const char* kHeader = "t,s,x,y,vx,vy";

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json meta_to_json(const Trajectory& traj) {
    const TrajectoryMeta& m = traj.meta();
    json j{{"mass", traj.potential().m()},
           {"k", traj.potential().k()},
           {"nu", traj.potential().nu()},
           {"E0", m.E0},
           {"L0", m.L0},
           {"integrator", m.integrator},
           {"map_coefficient", m.map_coefficient}};
    if (m.branch_theta0) j["branch_theta0"] = *m.branch_theta0;
    if (m.dual_of) {
        const DualOrigin& d = *m.dual_of;
        j["duality"] = {{"mu", traj.potential().nu()},
                        {"k_dual", traj.potential().k()},
                        {"E_dual", m.E0},
                        {"L_dual0", m.L0},
                        {"source_k", d.source_k},
                        {"source_nu", d.source_nu},
                        {"source_E", d.source_E},
                        {"source_L0", d.source_L0},
                        {"winding_turns", d.winding_turns},
                        {"winding_count", static_cast<long long>(std::trunc(d.winding_turns))}};
    }
    return j;
}

double need_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error(Errc::MalformedInput, std::string("metadata field '") + key + "' missing or not numeric");
    return j.at(key).get<double>();
}

std::vector<double> split_row(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    const char* p = line.c_str();
    while (true) {
        char* end = nullptr;
        const double x = std::strtod(p, &end);
        if (end == p) break;
        out.push_back(x);
        p = end;
        while (*p == ' ') ++p;
        if (*p == ',') {
            ++p;
            continue;
        }
        break;
    }
    while (*p == ' ' || *p == '\r') ++p;
    if (*p != '\0' || out.size() != 6)
        throw Error(Errc::MalformedInput, "bad data row at line " + std::to_string(line_no));
    return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "# " << meta_to_json(traj).dump() << '\n' << kHeader << '\n';
    for (const Sample& s : traj.samples()) {
        os << num17(s.t) << ',' << num17(s.s) << ',' << num17(s.z.real()) << ',' << num17(s.z.imag())
           << ',' << num17(s.v.real()) << ',' << num17(s.v.imag()) << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    write_text(path, os.str());
}

Trajectory read_trajectory_csv(std::istream& is) {
    std::string line, meta_text;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<Sample> samples;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (have_header) throw Error(Errc::MalformedInput, "metadata after header row");
            meta_text += line.substr(1);
            continue;
        }
        if (!have_header) {
            if (line != kHeader)
                throw Error(Errc::MalformedInput, "expected header row '" + std::string(kHeader) + "'");
            have_header = true;
            continue;
        }
        const auto f = split_row(line, line_no);
        samples.push_back({f[0], f[1], {f[2], f[3]}, {f[4], f[5]}});
    }
    if (meta_text.empty()) throw Error(Errc::MalformedInput, "missing metadata comment line");
    if (!have_header) throw Error(Errc::MalformedInput, "missing header row");

    json j;
    try {
        j = json::parse(meta_text);
    } catch (const json::exception& e) {
        throw Error(Errc::MalformedInput, std::string("metadata is not valid JSON: ") + e.what());
    }
    TrajectoryMeta meta;
    meta.E0 = need_number(j, "E0");
    meta.L0 = need_number(j, "L0");
    meta.integrator = j.value("integrator", std::string{});
    const double nu = need_number(j, "nu");
    meta.map_coefficient =
        j.contains("map_coefficient") ? need_number(j, "map_coefficient") : canonical_map_coefficient(nu);
    if (j.contains("branch_theta0")) meta.branch_theta0 = need_number(j, "branch_theta0");
    if (j.contains("duality")) {
        const json& d = j.at("duality");
        meta.dual_of = DualOrigin{need_number(d, "source_k"), need_number(d, "source_nu"),
                                  need_number(d, "source_E"), need_number(d, "source_L0"),
                                  need_number(d, "winding_turns")};
    }
    PowerLawPotential pot(need_number(j, "k"), nu, need_number(j, "mass"));
    return Trajectory(pot, std::move(samples), std::move(meta));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MalformedInput, "cannot open " + path.string());
    return read_trajectory_csv(in);
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    auto num = [](const json& obj, const char* key, std::optional<double> fallback = std::nullopt) {
        if (!obj.contains(key)) {
            if (fallback) return *fallback;
            throw Error(Errc::InvalidConfig, std::string("missing field '") + key + "'");
        }
        if (!obj.at(key).is_number())
            throw Error(Errc::InvalidConfig, std::string("field '") + key + "' must be numeric");
        const double x = obj.at(key).get<double>();
        if (!std::isfinite(x)) throw Error(Errc::InvalidConfig, std::string("field '") + key + "' not finite");
        return x;
    };
    auto obj = [&](const char* key) -> const json& {
        if (!j.contains(key) || !j.at(key).is_object())
            throw Error(Errc::InvalidConfig, std::string("missing object '") + key + "'");
        return j.at(key);
    };

    RunConfig c;
    c.mass = num(j, "mass");
    c.k = num(obj("potential"), "k");
    c.nu = num(obj("potential"), "nu");
    const json& ini = obj("initial");
    c.initial = {0.0, {num(ini, "x"), num(ini, "y")}, {num(ini, "vx"), num(ini, "vy")}};
    const json& integ = obj("integrator");
    IntegratorConfig& ic = c.integrator;
    if (integ.contains("method")) {
        if (!integ.at("method").is_string()) throw Error(Errc::InvalidConfig, "method must be a string");
        ic.method = parse_method(integ.at("method").get<std::string>());
    }
    ic.dt = num(integ, "dt", ic.dt);
    ic.t_end = num(integ, "t_end");
    ic.rtol = num(integ, "rtol", ic.rtol);
    ic.atol = num(integ, "atol", ic.atol);
    ic.r_min = num(integ, "r_min", ic.r_min);
    ic.max_step = num(integ, "max_step", ic.max_step);
    ic.validate();
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        auto path = [&](const char* key) -> std::optional<std::filesystem::path> {
            if (!o.contains(key) || o.at(key).is_null()) return std::nullopt;
            if (!o.at(key).is_string()) throw Error(Errc::InvalidConfig, std::string("output '") + key + "' must be a path");
            return std::filesystem::path(o.at(key).get<std::string>());
        };
        c.trajectory_path = path("trajectory");
        c.report_path = path("report");
        c.plot_path = path("plot");
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidConfig, "cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json item{{"check", r.check}, {"status", std::string(status_name(r.status))}, {"details", r.details}};
        // NaN and infinity are not JSON numbers.
        item["measured"] = std::isfinite(r.measured) ? json(r.measured)
                           : std::isnan(r.measured)  ? json(nullptr)
                                                     : json("inf");
        item["threshold"] = std::isfinite(r.threshold) ? json(r.threshold) : json(nullptr);
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

std::string orbit_svg(const std::vector<Polyline>& series, const std::string& title) {
    constexpr double size = 800.0, margin = 40.0;
    double extent = 0.0;
    for (const auto& s : series)
        for (cplx p : s.points) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
    if (extent == 0.0) extent = 1.0;
    extent *= 1.05;
    const double scale = (size - 2 * margin) / (2 * extent);
    auto px = [&](cplx p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", size / 2 + scale * p.real(), size / 2 - scale * p.imag());
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"400\" x2=\"" << size - margin
       << "\" y2=\"400\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"400\" y1=\"" << margin << "\" x2=\"400\" y2=\"" << size - margin
       << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", extent);
    os << "<text x=\"" << size - margin << "\" y=\"395\" font-size=\"12\" text-anchor=\"end\">" << buf
       << "</text>\n";
    os << "<text x=\"400\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">" << title << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        if (s.points.empty()) continue;
        const std::size_t stride = std::max<std::size_t>(1, s.points.size() / 4000);
        os << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.points.size(); j += stride) os << (j ? " " : "") << px(s.points[j]);
        if ((s.points.size() - 1) % stride != 0) os << ' ' << px(s.points.back());
        os << "\"/>\n";
        os << "<text x=\"" << margin << "\" y=\"" << size - margin + 20.0 * static_cast<double>(i) - 20.0 * static_cast<double>(series.size() - 1)
           << "\" font-size=\"14\" fill=\"" << s.colour << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidConfig, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(Errc::InvalidConfig, "failed writing " + path.string());
}

}  // namespace bav::io
