#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiashort/analysis.hpp"
#include "adiashort/shortcut.hpp"
#include "adiashort/simulate.hpp"
#include "adiashort/spline.hpp"
#include "adiashort/types.hpp"

namespace adiashort::io {

// Shortest representation that parses back to the same bits; keeps CSV
// output byte-stable across runs.
inline std::string formatDouble(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parseDouble(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number: '" + std::string(s) + "'");
    return v;
}

inline constexpr std::string_view kTrajectoryHeader =
    "t,re_c1,im_c1,re_c2,im_c2,P1,P2,norm,abs_a_minus,abs_a_plus,gamma,theta";
inline constexpr std::string_view kEnergyHeader = "t,re_e1,im_e1,re_e2,im_e2";
inline constexpr std::string_view kProfileHeader = "t,gamma";

inline void writeTrajectoryCsv(std::ostream& os, const TrajectoryRecord& rec) {
    os << kTrajectoryHeader << '\n';
    for (const auto& row : rec.rows) {
        const auto a = row.adiabatic();
        os << formatDouble(row.t) << ',' << formatDouble(row.c1.real()) << ','
           << formatDouble(row.c1.imag()) << ',' << formatDouble(row.c2.real()) << ','
           << formatDouble(row.c2.imag()) << ',' << formatDouble(row.p1()) << ','
           << formatDouble(row.p2()) << ',' << formatDouble(row.norm()) << ','
           << formatDouble(std::abs(a.aMinus)) << ',' << formatDouble(std::abs(a.aPlus)) << ','
           << formatDouble(row.gamma) << ',' << formatDouble(row.theta) << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> splitCsvLine(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string chompCr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace detail

// Reads back the state columns of a trajectory file; the derived columns
// (P1, P2, norm, adiabatic magnitudes) are recomputed on demand by the row.
inline std::vector<TrajectoryRow> readTrajectoryCsv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || detail::chompCr(line) != kTrajectoryHeader)
        throw std::invalid_argument("trajectory file: bad or missing header");
    std::vector<TrajectoryRow> rows;
    while (std::getline(is, line)) {
        line = detail::chompCr(line);
        if (line.empty()) continue;
        const auto f = detail::splitCsvLine(line);
        if (f.size() != 12)
            throw std::invalid_argument("trajectory file: expected 12 columns, got " +
                                        std::to_string(f.size()));
        TrajectoryRow row;
        row.t = parseDouble(f[0]);
        row.c1 = Complex(parseDouble(f[1]), parseDouble(f[2]));
        row.c2 = Complex(parseDouble(f[3]), parseDouble(f[4]));
        row.gamma = parseDouble(f[10]);
        row.theta = parseDouble(f[11]);
        rows.push_back(row);
    }
    return rows;
}

inline void writeEnergyCsv(std::ostream& os, const EnergyTrack& track) {
    os << kEnergyHeader << '\n';
    for (std::size_t i = 0; i < track.times.size(); ++i) {
        os << formatDouble(track.times[i]) << ',' << formatDouble(track.epsilon1[i].real())
           << ',' << formatDouble(track.epsilon1[i].imag()) << ','
           << formatDouble(track.epsilon2[i].real()) << ','
           << formatDouble(track.epsilon2[i].imag()) << '\n';
    }
}

inline void writeProfileCsv(std::ostream& os, const ShortcutProfile& profile) {
    os << kProfileHeader << '\n';
    for (std::size_t i = 0; i < profile.times.size(); ++i)
        os << formatDouble(profile.times[i]) << ',' << formatDouble(profile.gamma[i]) << '\n';
}

inline nlohmann::ordered_json configJson(const SimulationConfig& cfg) {
    nlohmann::ordered_json j;
    j["model"]["kind"] = driveName(cfg.model);
    if (const auto* lz = std::get_if<LandauZenerDrive>(&cfg.model)) {
        j["model"]["omega"] = lz->omega;
    } else if (const auto* ae = std::get_if<AllenEberlyDrive>(&cfg.model)) {
        j["model"]["alpha"] = ae->alpha;
        j["model"]["delta"] = ae->delta;
    }
    std::visit(adiashort::detail::Overloaded{
                   [&](const GammaOff&) { j["gamma"]["policy"] = "off"; },
                   [&](const GammaShortcut& s) {
                       j["gamma"]["policy"] = s.sign > 0 ? "shortcut" : "shortcut-neg";
                   },
                   [&](const GammaCustom&) { j["gamma"]["policy"] = "custom"; },
               },
               cfg.policy.kind);
    if (cfg.policy.window)
        j["gamma"]["window"] = {cfg.policy.window->t0, cfg.policy.window->t1};
    j["window"] = {cfg.window.t0, cfg.window.t1};
    switch (cfg.start.kind) {
        case StartKind::Bare1: j["init"] = "bare1"; break;
        case StartKind::Bare2: j["init"] = "bare2"; break;
        case StartKind::AdiabaticExact: j["init"] = "adiabatic"; break;
        case StartKind::Custom:
            j["init"] = {cfg.start.custom.c1.real(), cfg.start.custom.c1.imag(),
                         cfg.start.custom.c2.real(), cfg.start.custom.c2.imag()};
            break;
    }
    j["samples"] = cfg.samples;
    j["relTol"] = cfg.relTol;
    j["absTol"] = cfg.absTol;
    return j;
}

inline nlohmann::ordered_json statsJson(const ode::StepStats& s) {
    return {{"accepted", s.accepted},
            {"rejected", s.rejected},
            {"rhsEvals", s.rhsEvals},
            {"restarts", s.restarts}};
}

inline nlohmann::ordered_json trajectoryJson(const TrajectoryRecord& rec) {
    nlohmann::ordered_json j;
    j["format"] = "adiashort-trajectory";
    j["version"] = kVersion;
    j["config"] = configJson(rec.config);
    j["stats"] = statsJson(rec.stats);
    j["columns"] = nlohmann::ordered_json::parse(
        R"(["t","re_c1","im_c1","re_c2","im_c2","P1","P2","norm","abs_a_minus","abs_a_plus","gamma","theta"])");
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rec.rows) {
        const auto a = row.adiabatic();
        rows.push_back({row.t, row.c1.real(), row.c1.imag(), row.c2.real(), row.c2.imag(),
                        row.p1(), row.p2(), row.norm(), std::abs(a.aMinus), std::abs(a.aPlus),
                        row.gamma, row.theta});
    }
    j["rows"] = std::move(rows);
    return j;
}

namespace detail {

struct Columns {
    std::vector<double> col0, col1, col2;
};

inline Columns readNumericCsv(std::istream& is, std::string_view header,
                              const std::string& what) {
    std::string line;
    if (!std::getline(is, line) || chompCr(line) != header)
        throw std::invalid_argument(what + ": bad or missing header (want '" +
                                    std::string(header) + "')");
    const std::size_t want = splitCsvLine(header).size();
    Columns c;
    while (std::getline(is, line)) {
        line = chompCr(line);
        if (line.empty()) continue;
        const auto f = splitCsvLine(line);
        if (f.size() != want)
            throw std::invalid_argument(what + ": expected " + std::to_string(want) +
                                        " columns, got " + std::to_string(f.size()));
        c.col0.push_back(parseDouble(f[0]));
        c.col1.push_back(parseDouble(f[1]));
        if (want > 2) c.col2.push_back(parseDouble(f[2]));
    }
    return c;
}

}  // namespace detail

// Drive table: header "t,omega,delta", strictly increasing t.
inline TabulatedDrive readDriveTable(std::istream& is) {
    auto c = detail::readNumericCsv(is, "t,omega,delta", "drive table");
    return TabulatedDrive(c.col0, c.col1, c.col2);
}

// Gain/loss profile: header "t,gamma", strictly increasing t.
inline CubicSpline readGammaProfile(std::istream& is) {
    auto c = detail::readNumericCsv(is, kProfileHeader, "gamma profile");
    return CubicSpline(c.col0, c.col1);
}

}  // namespace adiashort::io
