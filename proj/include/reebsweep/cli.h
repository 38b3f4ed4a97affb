#pragma once

#include "reebsweep/point_io.h"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace reebsweep {

enum class OutputFormat { json, dot, both };

struct RunConfig {
    std::string input;
    std::optional<PointFormat> input_format;
    double eps = 0.0;
    /// Empty means the last coordinate axis.
    std::vector<double> direction;
    double offset = 0.0;
    bool allow_constant = false;
    OutputFormat format = OutputFormat::json;
    bool oracle_check = false;
    bool snapshots = false;
    /// Empty writes to the output stream.  With `both`, PATH.json and PATH.dot.
    std::string out;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int malformed_input = 2;
inline constexpr int mismatch = 3;
inline constexpr int dimension_mismatch = 4;
}  // namespace exit_code

/// Loads the points, runs the sweep and writes the graph.  The summary line
/// and diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point of the `reeb` tool: subcommands run, bench and experiment.
int main_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reebsweep
