#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bousslab {

/// One quantitative check: ensemble description, parameters, thresholds.
/// Thresholds are configuration; the shipped defaults are deliberately loose
/// because the estimates hold with unspecified constants.
struct CheckSpec {
    std::string name;

    // ensemble
    int count = 16;
    std::uint64_t seed = 7;
    double slope = 2.0;

    // parameters
    double alpha = 1.5;
    double p = 2.0;
    double r = 1.0;
    double rho = 1.0;
    double s = 0.0;
    int q_lo = 2;
    int q_hi = 5;

    // thresholds
    double tolerance = 20.0; // max allowed constant / min allowed ratio
    double c_min = 0.2;      // decay-rate window (semigroup fit)
    double c_max = 3.0;
    double big_c_max = 10.0; // prefactor cap (semigroup fit)
    double slope_max = 0.1;  // max ratio growth per q
    double fit_residual_max = 0.1; // log-space residual -> inconclusive
    double t_probe = 0.25;         // twin-run response-ratio time
    double envelope_slack = 1.5;   // twin-run fitted-envelope headroom
};

enum class CheckStatus { Pass, Inconclusive, Fail };

const char* to_string(CheckStatus status);

struct SampleValue {
    int sample = 0;
    std::optional<int> q;
    double value = 0.0;
};

struct VerificationReport {
    std::string name;
    std::map<std::string, double> params;
    std::vector<SampleValue> samples;
    double min = 0.0, max = 0.0, median = 0.0;
    std::map<std::string, double> fitted;
    CheckStatus status = CheckStatus::Pass;
    bool rhs_zero_violation = false;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
    int grid_n = 0;
    double alpha = 0.0;

    /// min/max/median over sample values (order-independent reduction).
    void finalize_aggregates();
};

/// {"checks": [...]}, one object per report; schema in schemas/.
void write_reports_json(std::ostream& os,
                        std::span<const VerificationReport> reports);

/// Detail table: sample,q,value (q empty where not applicable).
void write_report_detail_csv(std::ostream& os, const VerificationReport& rep);

} // namespace bousslab
