#include "bousslab/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>

#include <json.hpp>

namespace bousslab {

const char* to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::Fail: return "fail";
    }
    return "unknown";
}

void VerificationReport::finalize_aggregates() {
    if (samples.empty()) {
        min = max = median = 0.0;
        return;
    }
    std::vector<double> values;
    values.reserve(samples.size());
    for (const SampleValue& s : samples)
        values.push_back(s.value);
    std::sort(values.begin(), values.end());
    min = values.front();
    max = values.back();
    const std::size_t mid = values.size() / 2;
    median = values.size() % 2 == 1
                 ? values[mid]
                 : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["name"] = rep.name;
    j["status"] = to_string(rep.status);
    j["params"] = rep.params;
    j["aggregates"] = {{"min", rep.min},
                       {"max", rep.max},
                       {"median", rep.median},
                       {"count", rep.samples.size()}};
    j["fitted"] = rep.fitted;
    j["rhs_zero_violation"] = rep.rhs_zero_violation;
    j["notes"] = rep.notes;
    j["provenance"] = {{"seed", rep.seed},
                       {"grid_n", rep.grid_n},
                       {"alpha", rep.alpha}};
    return j;
}

} // namespace

void write_reports_json(std::ostream& os,
                        std::span<const VerificationReport> reports) {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const VerificationReport& rep : reports)
        j["checks"].push_back(to_json(rep));
    os << j.dump(2) << "\n";
}

void write_report_detail_csv(std::ostream& os, const VerificationReport& rep) {
    os << "sample,q,value\n";
    char buf[96];
    for (const SampleValue& s : rep.samples) {
        if (s.q)
            std::snprintf(buf, sizeof(buf), "%d,%d,%.15g\n", s.sample, *s.q,
                          s.value);
        else
            std::snprintf(buf, sizeof(buf), "%d,,%.15g\n", s.sample, s.value);
        os << buf;
    }
}

} // namespace bousslab
