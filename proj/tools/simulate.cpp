// Sweep runner for the D2D underlay engine. Runs a figure preset or a JSON
// sweep spec and writes one CSV per run; progress goes to stderr, data to the
// output file (or stdout with --out -).

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "d2d/jsonio.hpp"
#include "d2d/sweep.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"Spectrum-sharing D2D underlay simulator"};
    app.name("simulate");

    std::string preset;
    std::string spec_path;
    std::string out_prefix;
    std::string mode_str;
    std::string ni_str;
    long trials = -1;
    long mc_samples = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int cells = 0;
    int threads = -1;
    bool timings = false;
    bool dump_topologies = false;
    bool list_presets = false;

    app.add_option("preset", preset, "figure preset (fig2 fig3 fig5 fig6 fig7 fig8 fig9 fig10)");
    app.add_option("--spec", spec_path, "JSON sweep spec file")->check(CLI::ExistingFile);
    app.add_flag("--list-presets", list_presets, "list preset names and exit");
    app.add_option("--trials", trials, "trials per grid cell");
    app.add_option("--mc-samples", mc_samples, "samples for the analytical outage estimator");
    app.add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "base random seed");
    app.add_option("--cells", cells, "cell count (1 or 7)");
    app.add_option("--mode", mode_str, "gain estimate: statistical|perfect|truncated");
    app.add_option("--ni", ni_str, "network information in discovery packets: on|off");
    app.add_option("--out", out_prefix, "output file prefix ('-' writes CSV to stdout)");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_flag("--timings", timings,
                 "record wall time in rows (makes output non-reproducible)");
    app.add_flag("--dump-topologies", dump_topologies,
                 "also write sampled topologies to <prefix>_topologies.jsonl");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (list_presets) {
        for (const std::string& n : d2d::preset_names()) std::cout << n << '\n';
        return 0;
    }
    if (preset.empty() == spec_path.empty()) {
        std::cerr << "simulate: give exactly one of a preset name or --spec FILE\n";
        return 2;
    }

    d2d::SweepSpec spec =
        spec_path.empty() ? d2d::make_preset(preset) : d2d::load_sweep_spec(spec_path);
    if (trials >= 0) spec.base.trials = trials;
    if (mc_samples >= 0) spec.mc_samples = mc_samples;
    if (seed_set) spec.base.seed = seed;
    if (cells != 0) spec.base.cells = cells;
    if (threads >= 0) spec.base.threads = threads;
    if (!mode_str.empty()) {
        if (mode_str == "statistical") spec.base.mode = d2d::EstimateMode::kStatistical;
        else if (mode_str == "perfect") spec.base.mode = d2d::EstimateMode::kPerfectInversion;
        else if (mode_str == "truncated") spec.base.mode = d2d::EstimateMode::kTruncatedInversion;
        else throw d2d::ConfigError("mode", "must be statistical, perfect, or truncated");
    }
    if (!ni_str.empty()) {
        if (ni_str == "on") spec.base.ni_enabled = true;
        else if (ni_str == "off") spec.base.ni_enabled = false;
        else throw d2d::ConfigError("ni", "must be 'on' or 'off'");
    }
    if (!out_prefix.empty()) spec.out_prefix = out_prefix;
    spec.record_timings = timings;
    spec.verbose = true;
    spec.validate();

    if (dump_topologies) {
        if (spec.out_prefix == "-") {
            throw d2d::ConfigError("dump-topologies", "needs a file prefix, not stdout");
        }
        const long n = std::min<long>(spec.base.trials, 100);
        const std::string path = spec.out_prefix + "_topologies.jsonl";
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
        d2d::dump_topologies_jsonl(spec.base, n, os);
        std::cerr << "[simulate] wrote " << n << " topologies to " << path << '\n';
    }

    const std::vector<d2d::SweepRow> rows = d2d::run_sweep(spec);
    if (spec.out_prefix == "-") {
        std::cout << d2d::csv_string(rows);
    } else {
        const std::string path = spec.out_prefix + ".csv";
        d2d::emit_csv(rows, path);
        std::cerr << "[simulate] wrote " << rows.size() << " rows to " << path << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const d2d::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
