#include "skyjam/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "skyjam/objective.hpp"
#include "skyjam/parallel.hpp"
#include "skyjam/report_io.hpp"

#ifndef SKYJAM_VERSION
#define SKYJAM_VERSION "0.0.0"
#endif

namespace skyjam {

namespace fs = std::filesystem;

std::string version_string() { return std::string("skyjam ") + SKYJAM_VERSION; }

namespace {

struct CellResult {
    SchemeId scheme;
    double period;
    Solution solution;
    SecrecyReport report;
};

std::string cell_tag(SchemeId id, double period) {
    return to_string(id) + "_T" + format_double(period);
}

std::string rates_header() {
    return "T_s,scheme,surrogate_bps_hz,mc_expectation_bps_hz,mc_realization_bps_hz,mc_stderr\n";
}

std::string rates_row(const CellResult& c) {
    std::ostringstream os;
    os << format_double(c.period) << ',' << to_string(c.scheme) << ','
       << format_double(c.solution.objective) << ',' << format_double(c.report.mc_rate_expectation_form)
       << ',' << format_double(c.report.mc_rate_realization_form) << ','
       << format_double(c.report.std_errors.expectation_form) << '\n';
    return os.str();
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << body;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

Scenario scenario_for(const Scenario& base, double period, double dt) {
    Scenario::Params p = base.params();
    p.period_t = period;
    const double n = std::llround(period / dt);
    if (n < 1.0) throw ScenarioError("dt", "longer than the flight period");
    p.n_slots = static_cast<std::size_t>(n);
    return Scenario::make(p);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"UAV cooperative-jamming secrecy optimizer", "skyjam"};
    RunManifest m;
    std::string scheme_arg = "all";
    std::vector<double> periods;
    double dt = 0.0;
    double epsilon = 0.0;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;

    app.add_option("--scenario", m.scenario_path, "scenario JSON file")->required();
    app.add_option("--scheme", scheme_arg, "jtp|tnp|ltp|nj|all, or a comma list")->capture_default_str();
    app.add_option("--T", periods, "flight periods in seconds, comma separated")->delimiter(',');
    app.add_option("--dt", dt, "slot length in seconds (overrides the scenario)")->check(CLI::PositiveNumber);
    app.add_option("--epsilon", epsilon, "fractional-increase stopping threshold")->check(CLI::PositiveNumber);
    app.add_option("--mc-samples", samples, "Monte-Carlo fading samples per slot")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
        ->capture_default_str();
    app.add_option("--seed", seed, "Monte-Carlo seed")->capture_default_str();
    app.add_option("--out", m.out_dir, "output directory")->required();
    app.set_version_flag("--version", version_string());

    std::vector<std::string> argv_store(args);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>("skyjam"));
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << version_string() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    auto usage_error = [&](const std::string& msg) {
        err << "error: " << msg << "\n\n" << app.help();
        return 2;
    };
    if (scheme_arg == "all") {
        m.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    } else {
        std::stringstream ss(scheme_arg);
        for (std::string tok; std::getline(ss, tok, ',');) {
            const auto id = parse_scheme(tok);
            if (!id) return usage_error("unknown scheme '" + tok + "'");
            m.schemes.push_back(*id);
        }
    }
    if (m.schemes.empty()) return usage_error("no scheme selected");
    for (double t : periods) {
        if (!(t > 0.0)) return usage_error("--T values must be positive");
    }
    m.mc_samples = samples;
    m.seed = seed;
    m.version = version_string();

    std::vector<CellResult> cells;
    try {
        Scenario::Params base_params = load_scenario(m.scenario_path).params();
        if (epsilon > 0.0) base_params.epsilon = epsilon;
        const Scenario base = Scenario::make(base_params);
        if (periods.empty()) periods.push_back(base.period());
        m.periods = periods;
        const double slot = dt > 0.0 ? dt : base.slot_len();

        std::vector<Scenario> scenarios;
        for (double t : periods) scenarios.push_back(scenario_for(base, t, slot));

        const fs::path dir(m.out_dir);
        fs::create_directories(dir);

        for (double t : periods) {
            for (SchemeId id : m.schemes) cells.push_back({id, t, {}, {}});
        }
        parallel_for(cells.size(), [&](std::size_t ci) {
            CellResult& c = cells[ci];
            const std::size_t ti = ci / m.schemes.size();
            const Scenario& s = scenarios[ti];
            std::vector<TraceRecord> trace;
            BcdConfig cfg = BcdConfig::from(s);
            cfg.trace_sink = [&trace](const TraceRecord& r) { trace.push_back(r); };
            const auto t0 = std::chrono::steady_clock::now();
            c.solution = run_scheme(s, c.scheme, cfg);
            if (trace.empty()) {
                const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
                for (std::size_t k = 0; k < c.solution.trace.size(); ++k) {
                    trace.push_back({k + 1, c.solution.trace[k], el.count()});
                }
            }
            if (!check_trajectory(s, c.solution.trajectory).feasible() ||
                !check_schedule(s, c.solution.schedule).feasible()) {
                throw std::runtime_error(cell_tag(c.scheme, c.period) + ": infeasible solution");
            }
            c.report = mc_secrecy_rate(s, c.solution.trajectory, c.solution.schedule, m.mc_samples, m.seed);

            const std::string tag = cell_tag(c.scheme, c.period);
            std::ostringstream traj;
            write_trajectory_csv(traj, c.solution);
            write_file(dir / ("traj_" + tag + ".csv"), traj.str());
            write_file(dir / ("rates_" + tag + ".csv"), rates_header() + rates_row(c));

            nlohmann::json doc = {
                {"scheme", to_string(c.scheme)},
                {"T_s", c.period},
                {"scenario", to_json(s)},
                {"solution", to_json(c.solution)},
                {"monte_carlo", to_json(c.report)},
            };
            write_file(dir / ("solution_" + tag + ".json"), doc.dump(2) + "\n");

            std::string log;
            for (const auto& r : trace) log += to_json(r).dump() + "\n";
            write_file(dir / ("trace_" + tag + ".jsonl"), log);
        });

        std::string all = rates_header();
        for (const auto& c : cells) {
            all += rates_row(c);
            if (!c.solution.converged) {
                err << "warning: " << cell_tag(c.scheme, c.period) << " hit the iteration limit\n";
            }
        }
        write_file(dir / "rates.csv", all);

        nlohmann::json manifest = {
            {"scenario", m.scenario_path},
            {"schemes", nlohmann::json::array()},
            {"T_s", m.periods},
            {"slot_s", slot},
            {"mc_samples", m.mc_samples},
            {"seed", m.seed},
            {"out", m.out_dir},
            {"version", m.version},
        };
        for (SchemeId id : m.schemes) manifest["schemes"].push_back(to_string(id));
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    for (const auto& c : cells) {
        out << to_string(c.scheme) << " T=" << format_double(c.period)
            << " surrogate=" << format_double(c.solution.objective)
            << " mc=" << format_double(c.report.mc_rate_expectation_form) << '\n';
    }
    return 0;
}

}  // namespace skyjam
