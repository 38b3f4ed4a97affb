#include "reebsweep/cli.h"

#include "reebsweep/approx.h"
#include "reebsweep/bench.h"
#include "reebsweep/errors.h"
#include "reebsweep/oracle.h"
#include "reebsweep/reeb_graph.h"
#include "reebsweep/sweep.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace reebsweep {

namespace {

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
    const char* env = std::getenv("REEB_LOG");
    if (!env) return LogLevel::info;
    const std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::quiet;
    if (v == "debug" || v == "2") return LogLevel::debug;
    return LogLevel::info;
}

struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string summary_line(std::size_t n, std::size_t t, const ReebGraph& g) {
    const Betti b = betti(g);
    std::ostringstream s;
    s << "n=" << n << " t=" << t << " cells=" << g.cells().size() << " b0=" << b.b0 << " b1=" << b.b1
      << " critical=[";
    for (std::size_t i = 0; i < g.critical_values().size(); ++i) {
        if (i) s << ',';
        s << format_number(g.critical_values()[i]);
    }
    s << ']';
    return s.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << body)) throw std::runtime_error("cannot write " + path);
}

int run_checked(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const LogLevel level = log_level();
    const PointFormat fmt = config.input_format.value_or(guess_format(config.input));
    const PointCloud cloud = config.input == "-" ? read_points(std::cin, fmt) : load_points(config.input, fmt);

    AffineFunctional f;
    if (cloud.dim > 0) {
        if (config.direction.empty()) {
            f = AffineFunctional::projection(cloud.dim, cloud.dim - 1);
            f = AffineFunctional(f.gradient(), config.offset, config.allow_constant);
        } else {
            if (config.direction.size() != cloud.dim) {
                throw DimensionMismatch("direction has " + std::to_string(config.direction.size()) +
                                        " components but the points have dimension " +
                                        std::to_string(cloud.dim));
            }
            f = AffineFunctional(config.direction, config.offset, config.allow_constant);
        }
    }

    const IntervalInputs inputs =
        cloud.points.empty() ? IntervalInputs{} : build_inputs(cloud.points, config.eps, f);

    SweepObserver observer;
    if (config.snapshots) {
        observer = [](const SweepState& state, std::span<const LabeledInterval> processed) {
            const StateReport report = check_state(state, processed);
            for (std::size_t c = 0; c < report.clauses.size(); ++c) {
                const ClauseResult& r = report.clauses[c];
                if (r.passed) continue;
                std::ostringstream m;
                m << "snapshot check failed after event " << processed.size() << ", clause " << c + 1;
                if (r.witness) m << " at x=" << format_number(*r.witness);
                m << ": " << r.detail;
                throw MismatchError(m.str());
            }
        };
    }
    const SweepState state = sweep(inputs, {}, observer);
    const ReebGraph g = extract(state);

    if (config.oracle_check) {
        const ReebGraph expected = naive_reeb(inputs.balls, inputs.pairs);
        if (auto mismatch = compare_graphs(expected, g)) {
            throw MismatchError("oracle mismatch at x=" + format_number(mismatch->level) + ": " +
                                mismatch->detail);
        }
    }

    std::ostringstream json;
    std::ostringstream dot;
    if (config.format != OutputFormat::dot) write_json(json, g);
    if (config.format != OutputFormat::json) write_dot(dot, g);
    if (config.out.empty()) {
        out << json.str() << dot.str();
    } else if (config.format == OutputFormat::both) {
        write_file(config.out + ".json", json.str());
        write_file(config.out + ".dot", dot.str());
    } else {
        write_file(config.out, json.str() + dot.str());
    }

    if (level != LogLevel::quiet) err << summary_line(cloud.points.size(), inputs.pairs.size(), g) << '\n';
    if (level == LogLevel::debug) {
        const SweepCounters& c = state.counters();
        err << "events=" << c.events << " make_set=" << c.make_set << " unions=" << c.unions
            << " find_set=" << c.find_set << " splits=" << c.splits << " deletes=" << c.deletes
            << " finger_advances=" << c.finger_advances << '\n';
        if (config.oracle_check) err << "oracle check passed\n";
    }
    return exit_code::ok;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            out.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw InputError("bad size '" + item + "'");
        }
    }
    return out;
}

int run_bench(const std::string& ns_text, std::size_t seed_count, const std::string& regime,
              std::size_t repeats, const std::string& csv_path, std::ostream& out, std::ostream& err) {
    const auto ns = parse_sizes(ns_text);
    std::vector<std::uint64_t> seeds;
    for (std::size_t s = 0; s < seed_count; ++s) seeds.push_back(s + 1);
    ScalingOptions options;
    options.timing_repeats = repeats;

    std::vector<ScalingRow> all;
    for (const std::string name : {"sparse", "dense"}) {
        if (regime != "both" && regime != name) continue;
        const auto grid = name == std::string("sparse") ? sparse_grid(ns) : dense_grid(ns);
        const auto rows = run_scaling(grid, seeds, options);
        err << name << ": ops ratio spread " << ops_ratio_spread(rows) << ", time slope "
            << time_slope(rows) << '\n';
        all.insert(all.end(), rows.begin(), rows.end());
    }
    if (csv_path.empty()) {
        write_csv(out, all);
    } else {
        std::ostringstream csv;
        write_csv(csv, all);
        write_file(csv_path, csv.str());
    }
    return exit_code::ok;
}

int run_experiments(const std::string& config_path, const std::string& json_path, std::ostream& out) {
    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open " + config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed experiment config: ") + e.what());
    }
    if (!j.is_array()) j = nlohmann::json::array({j});
    std::vector<ExperimentReport> reports;
    for (const auto& entry : j) {
        const ExperimentConfig c = experiment_config_from_json(entry);
        reports.push_back(run_experiment(c.sampler, c.eps, AffineFunctional(c.direction, c.offset)));
    }
    out << summary_table(reports);
    if (!json_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        write_file(json_path, arr.dump(2) + "\n");
    }
    const bool failed = std::any_of(reports.begin(), reports.end(),
                                    [](const ExperimentReport& r) { return r.verdict() == "fail"; });
    return failed ? exit_code::mismatch : exit_code::ok;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::dimension_mismatch;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::malformed_input;
    } catch (const MismatchError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::mismatch;
    }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { return run_checked(config, out, err); });
}

int main_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reeb graphs of eps-thickened point clouds", "reeb"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "json";
    std::string input_format;
    std::string direction;
    auto* run_cmd = app.add_subcommand("run", "compute the Reeb graph of a point file");
    run_cmd->add_option("input", config.input, "CSV or JSON point file, '-' for stdin")->required();
    run_cmd->add_option("--eps", config.eps, "ball radius")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--direction", direction, "comma separated gradient w (default: last axis)");
    run_cmd->add_option("--offset", config.offset, "constant term b");
    run_cmd->add_option("--format", format, "json, dot or both")->check(CLI::IsMember({"json", "dot", "both"}));
    run_cmd->add_option("--input-format", input_format, "csv or json (default: from extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_flag("--oracle-check", config.oracle_check, "compare against the brute-force graph");
    run_cmd->add_flag("--snapshots", config.snapshots, "check the sweep invariants after every event");
    run_cmd->add_flag("--allow-constant", config.allow_constant, "accept a zero gradient");
    run_cmd->add_option("--out", config.out, "output path instead of stdout");

    std::string ns = "100,200,400,800";
    std::size_t seeds = 3;
    std::size_t repeats = 3;
    std::string regime = "both";
    std::string csv_path;
    auto* bench_cmd = app.add_subcommand("bench", "operation counts and timings on random instances");
    bench_cmd->add_option("--ns", ns, "comma separated point counts");
    bench_cmd->add_option("--seeds", seeds, "seeds per grid point")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--repeats", repeats, "timing repeats (best is kept)")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--regime", regime, "sparse, dense or both")
        ->check(CLI::IsMember({"sparse", "dense", "both"}));
    bench_cmd->add_option("--csv", csv_path, "CSV output path instead of stdout");

    std::string config_path;
    std::string report_path;
    auto* exp_cmd = app.add_subcommand("experiment", "sample test shapes and compare against ground truth");
    exp_cmd->add_option("config", config_path, "JSON object or array of experiment configs")->required();
    exp_cmd->add_option("--json", report_path, "write the full reports here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_code::usage;
    }

    if (*run_cmd) {
        config.format = format == "dot" ? OutputFormat::dot : format == "both" ? OutputFormat::both : OutputFormat::json;
        if (!input_format.empty()) config.input_format = input_format == "json" ? PointFormat::json : PointFormat::csv;
        return guarded(err, [&] {
            if (!direction.empty()) {
                std::stringstream s(direction);
                std::string item;
                while (std::getline(s, item, ',')) {
                    try {
                        std::size_t used = 0;
                        config.direction.push_back(std::stod(item, &used));
                        if (used != item.size()) throw std::invalid_argument(item);
                    } catch (const std::exception&) {
                        throw InputError("bad direction component '" + item + "'");
                    }
                }
            }
            return run_checked(config, out, err);
        });
    }
    if (*bench_cmd) return guarded(err, [&] { return run_bench(ns, seeds, regime, repeats, csv_path, out, err); });
    return guarded(err, [&] { return run_experiments(config_path, report_path, out); });
}

}  // namespace reebsweep
