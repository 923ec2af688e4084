#pragma once

#include "params.hpp"
#include "table.hpp"

#include <optional>

namespace cvq::cli {

struct RunOptions {
    Params params;
    std::optional<Sweep> sweep;
    int jobs = 1;
    /// teleport: tmst-asym, tmst-sym, swap, 2ps-sym, 2ps-asym, h2ps-sym, h2ps-asym.
    std::string resource = "tmst-asym";
    /// distill: sym or asym.
    std::string geometry = "sym";
    /// state: tmsv, tmst, lossy-asym, lossy-sym.
    std::string kind = "lossy-asym";
};

/// Names of the commands that produce one table row per sweep point.
const std::vector<std::string>& sweep_commands();
std::string describe(const std::string& command);

/// Rows are computed in parallel on `jobs` threads and stored in sweep order.
Table run_sweep(const std::string& command, const RunOptions& opt);

/// State JSON with its symplectic spectrum, purity and, for two modes, negativity.
nlohmann::json run_state(const RunOptions& opt);

struct Summary {
    nlohmann::json report;
    bool all_pass = true;
};

/// Headline anchors with stored tolerances.
Summary run_summary(const Params& p);

}  // namespace cvq::cli
