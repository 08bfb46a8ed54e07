#include "mhauv/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "mhauv/config.hpp"
#include "mhauv/io.hpp"

namespace mhauv::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write '" + path.string() + "'");
    return f;
}

unsigned worker_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("MHAUV_SIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end == cap || *end != '\0' || v < 1) {
            throw InvalidArgument("MHAUV_SIM_THREADS must be a positive integer");
        }
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

int simulate(const std::string& config_path, const fs::path& out_dir, std::ostream& out) {
    const Config config = load_config(config_path);
    fs::create_directories(out_dir);
    const SimResult result = run(config.scenario);
    {
        std::ofstream f = open_output(out_dir / "log.csv");
        io::write_log(f, result.records);
    }
    {
        std::ofstream f = open_output(out_dir / "events.csv");
        io::write_events(f, result.events);
    }
    {
        std::ofstream f = open_output(out_dir / "metrics.json");
        f << io::metrics_json(result);
    }
    if (result.diverged()) {
        out << "diverged at t = " << io::number(result.divergence->time) << " s: "
            << result.divergence->reason << '\n';
        return kDiverged;
    }
    out << "steady_state_z_error " << io::number(result.metrics.steady_state_z_error)
        << " m, attitude_envelope " << io::number(result.metrics.attitude_envelope)
        << " rad, switches " << result.metrics.switch_count << '\n';
    return kOk;
}

int compare_modes(const std::string& config_path, const fs::path& out_dir, std::ostream& out) {
    const Config config = load_config(config_path);
    fs::create_directories(out_dir);
    const auto rows = compare(comparison_shapes(config.scenario, config.comparison),
                              kComparedModes, worker_threads());
    for (const ComparisonRow& row : rows) {
        std::ofstream f =
            open_output(out_dir / ("log_" + row.shape + "_" + std::string(to_string(row.mode)) +
                                   ".csv"));
        io::write_log(f, row.result.records);
        if (row.result.diverged()) {
            out << row.shape << '/' << to_string(row.mode) << " diverged at t = "
                << io::number(row.result.divergence->time) << " s\n";
        }
    }
    std::ofstream f = open_output(out_dir / "comparison.csv");
    io::write_comparison(f, rows);
    out << rows.size() << " runs written to " << out_dir.string() << '\n';
    return kOk;
}

int ct_dump(double h_min, double h_max, int n, const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ostringstream buffer;
    io::write_ct_curve(buffer, h_min, h_max, n);
    std::ofstream f = open_output(path);
    f << buffer.str();
    return kOk;
}

int check_gains(const std::string& config_path, std::ostream& out) {
    const Config config = load_config(config_path);
    const TwsmcGains& g = config.scenario.gains.twsmc;
    const TwistingReport r = check_twisting_conditions(g);
    out << "r1 " << io::number(g.r1) << ", r2 " << io::number(g.r2) << ", K_m "
        << io::number(g.k_m) << ", K_M " << io::number(g.k_M) << ", C " << io::number(g.c_bound)
        << '\n';
    out << "reach margin " << io::number(r.reach_margin) << '\n';
    out << "twist margin " << io::number(r.twist_margin) << '\n';
    out << (r.satisfied ? "satisfied" : "NOT satisfied") << '\n';
    return r.satisfied ? kOk : kUnsatisfied;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multirotor hybrid aerial-aquatic vehicle simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    double h_min = 0.0, h_max = 0.0;
    int n = 0;

    CLI::App* sim = app.add_subcommand("simulate", "Run one scenario");
    sim->add_option("--config", config_path, "YAML scenario")->required();
    sim->add_option("--out", out_path, "Output directory")->required();

    CLI::App* cmp = app.add_subcommand("compare", "Three control modes on step, sine and cosine");
    cmp->add_option("--config", config_path, "YAML scenario")->required();
    cmp->add_option("--out", out_path, "Output directory")->required();

    CLI::App* ct = app.add_subcommand("ct-dump", "Thrust coefficient versus immersion");
    ct->add_option("--min", h_min, "Lowest immersion [mm]")->required();
    ct->add_option("--max", h_max, "Highest immersion [mm]")->required();
    ct->add_option("--n", n, "Number of samples")->required();
    ct->add_option("--out", out_path, "Output CSV")->required();

    CLI::App* gains = app.add_subcommand("check-gains", "Check the twisting gain conditions");
    gains->add_option("--config", config_path, "YAML scenario")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kFailure;
    }

    try {
        if (sim->parsed()) return simulate(config_path, out_path, out);
        if (cmp->parsed()) return compare_modes(config_path, out_path, out);
        if (ct->parsed()) return ct_dump(h_min, h_max, n, out_path);
        return check_gains(config_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace mhauv::cli
