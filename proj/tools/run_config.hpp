#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bousslab::cli {

/// Parse failure with the offending line and key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, std::string field, const std::string& message)
        : std::runtime_error("config line " + std::to_string(line) + ", key '" +
                             field + "': " + message),
          line_(line), field_(std::move(field)) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

  private:
    int line_;
    std::string field_;
};

/// Flat key-value run configuration (TOML-compatible subset: `key = value`
/// lines, `#` comments, quoted strings, numbers, booleans). Unknown keys are
/// rejected with their line number.
struct RunConfig {
    int grid_n = 256;
    double box_length = 6.283185307179586;
    double alpha = 1.5;

    std::string mode = "boussinesq"; // boussinesq | transport
    std::string source = "linear";   // linear | cubic | sine | polynomial
    std::string source_f1;           // polynomial coefficients, ascending powers
    std::string source_f2;

    std::string initial_omega = "euler_eigen";
    std::string initial_theta = "gaussian_bump";
    double initial_theta_width = 0.5;
    double initial_amplitude = 1.0;
    int block_q = 3;
    std::uint64_t seed = 7;
    double slope = 2.0;

    std::string velocity = "shear"; // transport runs
    std::string forcing = "none";   // none | single_block
    int forcing_q = 3;
    double forcing_amplitude = 1.0;

    double dt = 0.01;
    double cfl_safety = 0.5;
    double t_end = 1.0;
    int snapshot_stride = 1;
    int block_stride = 1;
    int field_stride = 0;
    double lp_exponent = 2.0;

    int ensemble_count = 64;
    double tolerance_scale = 1.0; // global scale on the shipped thresholds

    std::string out_dir = "out";

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    void validate() const; // throws ConfigError with field names
};

} // namespace bousslab::cli
