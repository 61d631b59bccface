// Command-line driver: single runs, parameter scans, level-separation
// tracks, and the acceptance suite.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "adiashort/adiashort.hpp"

namespace fs = std::filesystem;
using namespace adiashort;

namespace {

struct CommonOpts {
    std::string model = "lz";
    double omega = 1.0;
    double alpha = 1.0;
    double delta = 1.0;
    std::string gamma = "off";
    double t0 = -15.0;
    double t1 = 15.0;
    std::size_t samples = 2001;
    std::string init = "adiabatic";
    double relTol = 1e-10;
    double absTol = 1e-12;
    std::string out;
    std::string format = "csv";
};

void addModelFlags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model, "drive model: lz | ae | table:<path>");
    cmd->add_option("--omega", o.omega, "coupling strength (lz)");
    cmd->add_option("--alpha", o.alpha, "coupling amplitude (ae)");
    cmd->add_option("--delta", o.delta, "detuning amplitude (ae)");
}

void addRunFlags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--gamma", o.gamma,
                    "gain/loss profile: off | shortcut | shortcut-neg | file:<path>");
    cmd->add_option("--t0", o.t0, "window start");
    cmd->add_option("--t1", o.t1, "window end");
    cmd->add_option("--samples", o.samples, "output grid size");
}

void addSolverFlags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--init", o.init,
                    "initial state: bare1 | bare2 | adiabatic | custom:<c1r,c1i,c2r,c2i>");
    cmd->add_option("--rel-tol", o.relTol, "relative tolerance");
    cmd->add_option("--abs-tol", o.absTol, "absolute tolerance");
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(',', start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

DriveModel makeModel(const CommonOpts& o) {
    if (o.model == "lz") return LandauZenerDrive{o.omega};
    if (o.model == "ae") return AllenEberlyDrive{o.alpha, o.delta};
    if (o.model.rfind("table:", 0) == 0) {
        const std::string path = o.model.substr(6);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open drive table '" + path + "'");
        return io::readDriveTable(in);
    }
    throw std::invalid_argument("unknown model '" + o.model + "' (want lz, ae, or table:<path>)");
}

GammaPolicy makePolicy(const CommonOpts& o) {
    const Window run{o.t0, o.t1};
    if (o.gamma == "off") return GammaPolicy::off();
    if (o.gamma == "shortcut") return GammaPolicy::shortcut(+1, run);
    if (o.gamma == "shortcut-neg") return GammaPolicy::shortcut(-1, run);
    if (o.gamma.rfind("file:", 0) == 0) {
        const std::string path = o.gamma.substr(5);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open gamma profile '" + path + "'");
        auto profile = io::readGammaProfile(in);
        const Window cover{profile.xmin(), profile.xmax()};
        return GammaPolicy::custom(std::move(profile), cover);
    }
    throw std::invalid_argument("unknown gamma policy '" + o.gamma +
                                "' (want off, shortcut, shortcut-neg, or file:<path>)");
}

InitialState makeInit(const CommonOpts& o) {
    if (o.init == "bare1") return InitialState::bare1();
    if (o.init == "bare2") return InitialState::bare2();
    if (o.init == "adiabatic") return InitialState::adiabaticExact();
    if (o.init.rfind("custom:", 0) == 0) {
        const auto parts = splitList(o.init.substr(7));
        if (parts.size() != 4)
            throw std::invalid_argument("custom init needs 4 comma-separated numbers");
        return InitialState::customState({Complex(io::parseDouble(parts[0]),
                                                  io::parseDouble(parts[1])),
                                          Complex(io::parseDouble(parts[2]),
                                                  io::parseDouble(parts[3]))});
    }
    throw std::invalid_argument("unknown init '" + o.init +
                                "' (want bare1, bare2, adiabatic, or custom:<4 numbers>)");
}

SimulationConfig makeConfig(const CommonOpts& o) {
    SimulationConfig cfg;
    cfg.model = makeModel(o);
    cfg.policy = makePolicy(o);
    cfg.window = Window{o.t0, o.t1};
    cfg.start = makeInit(o);
    cfg.samples = o.samples;
    cfg.relTol = o.relTol;
    cfg.absTol = o.absTol;
    validateConfig(cfg);
    if (o.format != "csv" && o.format != "json")
        throw std::invalid_argument("unknown format '" + o.format + "' (want csv or json)");
    return cfg;
}

std::string echoCommand(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::size_t threadBudget(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("ADIASHORT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
    }
    return std::min(n, std::max<std::size_t>(jobs, 1));
}

int runSimulate(const CommonOpts& o, const std::string& command) {
    const auto cfg = makeConfig(o);
    const auto start = std::chrono::steady_clock::now();
    const auto rec = integrate(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();

    if (!o.out.empty()) {
        std::string payload;
        if (o.format == "json") {
            payload = io::trajectoryJson(rec).dump(2) + "\n";
        } else {
            std::ostringstream os;
            io::writeTrajectoryCsv(os, rec);
            payload = os.str();
        }
        writeFile(o.out, payload);

        nlohmann::ordered_json manifest;
        manifest["command"] = command;
        manifest["config"] = io::configJson(cfg);
        manifest["outputs"] = {o.out};
        manifest["stats"] = io::statsJson(rec.stats);
        manifest["wallSeconds"] = wall;
        writeFile(o.out + ".manifest.json", manifest.dump(2) + "\n");
    }

    const auto& last = rec.rows.back();
    std::cout << "final P1=" << io::formatDouble(last.p1())
              << " P2=" << io::formatDouble(last.p2())
              << " norm=" << io::formatDouble(last.norm()) << '\n';
    return 0;
}

struct ScanAxis {
    std::string name;                 // omega | alpha | delta
    std::vector<double> values;
};

ScanAxis resolveScanAxis(const CommonOpts& o, const std::string& omegaList,
                         const std::string& alphaList, const std::string& deltaList) {
    auto parseValues = [](const std::string& list) {
        std::vector<double> vs;
        for (const auto& tok : splitList(list)) vs.push_back(io::parseDouble(tok));
        return vs;
    };
    if (o.model == "lz") {
        if (!alphaList.empty() || !deltaList.empty())
            throw std::invalid_argument("lz scans vary --omega only");
        if (omegaList.empty()) throw std::invalid_argument("lz scan needs --omega <list>");
        return {"omega", parseValues(omegaList)};
    }
    if (o.model == "ae") {
        if (!omegaList.empty()) throw std::invalid_argument("ae scans vary --alpha or --delta");
        const bool aList = alphaList.find(',') != std::string::npos;
        const bool dList = deltaList.find(',') != std::string::npos;
        if (aList && dList)
            throw std::invalid_argument("scan varies one parameter; both --alpha and --delta "
                                        "are lists");
        if (!alphaList.empty() && (aList || deltaList.empty()))
            return {"alpha", parseValues(alphaList)};
        if (!deltaList.empty()) return {"delta", parseValues(deltaList)};
        throw std::invalid_argument("ae scan needs --alpha <list> or --delta <list>");
    }
    throw std::invalid_argument("scan supports lz and ae models");
}

int runScan(const CommonOpts& o, const std::string& omegaList, const std::string& alphaList,
            const std::string& deltaList, const std::string& outDir,
            const std::string& command) {
    const auto axis = resolveScanAxis(o, omegaList, alphaList, deltaList);
    CommonOpts base = o;
    if (axis.name != "alpha" && !alphaList.empty()) base.alpha = io::parseDouble(alphaList);
    if (axis.name != "delta" && !deltaList.empty()) base.delta = io::parseDouble(deltaList);

    // Validate every row before any work or output.
    std::vector<SimulationConfig> cfgs;
    for (double v : axis.values) {
        CommonOpts row = base;
        if (axis.name == "omega") row.omega = v;
        if (axis.name == "alpha") row.alpha = v;
        if (axis.name == "delta") row.delta = v;
        cfgs.push_back(makeConfig(row));
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<TrajectoryRecord>> results(cfgs.size());
    std::vector<std::string> errors(cfgs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfgs.size()) return;
            try {
                results[i] = integrate(cfgs[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t nThreads = threadBudget(cfgs.size());
    pool.reserve(nThreads);
    for (std::size_t i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream summary;
    summary << "parameter,final_P1,final_P2,final_norm,max_abs_a_minus,peak_abs_gamma\n";
    nlohmann::ordered_json rowsJson = nlohmann::ordered_json::array();
    std::vector<std::string> outputs;
    bool anyFailed = false;

    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        const std::string vstr = io::formatDouble(axis.values[i]);
        if (!results[i]) {
            anyFailed = true;
            std::cerr << "error: " << axis.name << "=" << vstr << ": " << errors[i] << '\n';
            continue;
        }
        const auto& rec = *results[i];
        const auto& last = rec.rows.back();
        double maxAm = 0.0, peakGamma = 0.0;
        for (const auto& row : rec.rows) {
            maxAm = std::max(maxAm, std::abs(row.adiabatic().aMinus));
            peakGamma = std::max(peakGamma, std::abs(row.gamma));
        }
        summary << vstr << ',' << io::formatDouble(last.p1()) << ','
                << io::formatDouble(last.p2()) << ',' << io::formatDouble(last.norm()) << ','
                << io::formatDouble(maxAm) << ',' << io::formatDouble(peakGamma) << '\n';

        if (!outDir.empty()) {
            const std::string path =
                (fs::path(outDir) / (axis.name + "_" + vstr + ".csv")).string();
            std::ostringstream os;
            io::writeTrajectoryCsv(os, rec);
            fs::create_directories(outDir);
            writeFile(path, os.str());
            outputs.push_back(path);
            rowsJson.push_back({{"parameter", axis.values[i]},
                                {"output", path},
                                {"stats", io::statsJson(rec.stats)}});
        } else {
            rowsJson.push_back(
                {{"parameter", axis.values[i]}, {"stats", io::statsJson(rec.stats)}});
        }
    }

    std::cout << summary.str();
    if (!outDir.empty()) {
        fs::create_directories(outDir);
        const std::string summaryPath = (fs::path(outDir) / "summary.csv").string();
        writeFile(summaryPath, summary.str());
        outputs.push_back(summaryPath);

        nlohmann::ordered_json manifest;
        manifest["command"] = command;
        manifest["parameter"] = axis.name;
        manifest["values"] = axis.values;
        manifest["config"] = io::configJson(cfgs.front());
        manifest["outputs"] = outputs;
        manifest["rows"] = rowsJson;
        manifest["wallSeconds"] = wall;
        writeFile((fs::path(outDir) / "scan.manifest.json").string(), manifest.dump(2) + "\n");
    }
    return anyFailed ? 3 : 0;
}

int runEnergies(const CommonOpts& o, const std::string& command) {
    const DriveModel model = makeModel(o);
    const GammaPolicy policy = makePolicy(o);
    const Window run{o.t0, o.t1};
    if (!std::isfinite(run.t0) || !std::isfinite(run.t1) || !(run.t0 < run.t1))
        throw std::invalid_argument("time window must be finite with t0 < t1");
    if (o.samples < 2) throw std::invalid_argument("need at least 2 samples");

    const auto start = std::chrono::steady_clock::now();
    const auto track = energyTrack(model, policy, run, o.samples);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!o.out.empty()) {
        std::ostringstream os;
        io::writeEnergyCsv(os, track);
        writeFile(o.out, os.str());

        nlohmann::ordered_json manifest;
        manifest["command"] = command;
        manifest["outputs"] = {o.out};
        manifest["wallSeconds"] = wall;
        writeFile(o.out + ".manifest.json", manifest.dump(2) + "\n");
    }
    std::cout << "separationMin=" << io::formatDouble(track.separationMin) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-level dynamics with synthesized gain/loss decoupling profiles"};
    app.require_subcommand(1);

    CommonOpts simOpts;
    auto* simulate = app.add_subcommand("simulate", "integrate one trajectory");
    addModelFlags(simulate, simOpts);
    addRunFlags(simulate, simOpts);
    addSolverFlags(simulate, simOpts);
    simulate->add_option("--out", simOpts.out, "trajectory output file");
    simulate->add_option("--format", simOpts.format, "output format: csv | json");

    CommonOpts scanOpts;
    std::string omegaList, alphaList, deltaList, outDir;
    auto* scan = app.add_subcommand("scan", "sweep one drive parameter");
    scan->add_option("--model", scanOpts.model, "drive model: lz | ae");
    scan->add_option("--omega", omegaList, "comma list of omega values (lz)");
    scan->add_option("--alpha", alphaList, "alpha value or comma list (ae)");
    scan->add_option("--delta", deltaList, "delta value or comma list (ae)");
    addRunFlags(scan, scanOpts);
    addSolverFlags(scan, scanOpts);
    scan->add_option("--out-dir", outDir, "directory for per-run trajectories and summary");

    CommonOpts energyOpts;
    auto* energies = app.add_subcommand("energies", "track the bare level energies");
    addModelFlags(energies, energyOpts);
    addRunFlags(energies, energyOpts);
    energies->add_option("--out", energyOpts.out, "energy track output file");

    bool fast = false;
    auto* verifyCmd = app.add_subcommand("verify", "run the acceptance criteria");
    verifyCmd->add_flag("--fast", fast, "smaller reference sweeps, looser tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = echoCommand(argc, argv);
    try {
        if (simulate->parsed()) return runSimulate(simOpts, command);
        if (scan->parsed())
            return runScan(scanOpts, omegaList, alphaList, deltaList, outDir, command);
        if (energies->parsed()) return runEnergies(energyOpts, command);
        if (verifyCmd->parsed()) {
            const auto results = verify::runAcceptance({fast});
            return verify::reportAcceptance(std::cout, results);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
