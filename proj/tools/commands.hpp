#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace bousslab::cli {

struct CommonFlags {
    std::string out_dir;                  // overrides config out_dir when set
    std::optional<std::uint64_t> seed;    // overrides config seed when set
    int jobs = 1;
};

/// Run one simulation, write trajectory.bin + summary.csv.
/// Returns 0 on success, 2 on numerical abort.
int cmd_simulate(const RunConfig& cfg, const CommonFlags& flags);

/// Run a verification suite, write report_<suite>.json and per-check detail
/// CSVs. Returns 0 iff no check failed (inconclusive allowed), 1 on unknown
/// suite, 2 on numerical abort.
int cmd_verify(const std::string& suite, const RunConfig& cfg,
               const CommonFlags& flags);

/// One run per parameter value plus an aggregated comparison CSV.
int cmd_sweep(const RunConfig& cfg, const std::string& param,
              const std::vector<double>& values, const CommonFlags& flags);

const std::vector<std::string>& known_suites();

} // namespace bousslab::cli
