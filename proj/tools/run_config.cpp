#include "run_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bousslab::cli {

namespace {

struct RawValue {
    std::string text;
    bool quoted = false;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::map<std::string, RawValue> tokenize(const std::string& text) {
    std::map<std::string, RawValue> values;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments outside quotes
        bool in_quote = false;
        std::string stripped;
        for (char c : line) {
            if (c == '"')
                in_quote = !in_quote;
            if (c == '#' && !in_quote)
                break;
            stripped.push_back(c);
        }
        stripped = trim(stripped);
        if (stripped.empty())
            continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, stripped, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(lineno, key, "empty key");
        if (values.count(key))
            throw ConfigError(lineno, key, "duplicate key");
        RawValue raw;
        raw.line = lineno;
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            raw.quoted = true;
            raw.text = value.substr(1, value.size() - 2);
        } else if (!value.empty()) {
            raw.text = value;
        } else {
            throw ConfigError(lineno, key, "empty value");
        }
        values.emplace(key, std::move(raw));
    }
    return values;
}

class Extractor {
  public:
    explicit Extractor(std::map<std::string, RawValue> values)
        : values_(std::move(values)) {}

    void take_string(const char* key, std::string& out) {
        if (const RawValue* raw = find(key))
            out = raw->text;
    }

    void take_double(const char* key, double& out) {
        if (const RawValue* raw = find(key)) {
            if (raw->quoted)
                throw ConfigError(raw->line, key, "expected a number");
            char* end = nullptr;
            const double v = std::strtod(raw->text.c_str(), &end);
            if (end != raw->text.c_str() + raw->text.size() || !std::isfinite(v))
                throw ConfigError(raw->line, key, "not a valid number");
            out = v;
        }
    }

    void take_int(const char* key, int& out) {
        double v = out;
        const RawValue* raw = find(key);
        if (!raw)
            return;
        take_double(key, v);
        if (v != std::floor(v))
            throw ConfigError(raw->line, key, "expected an integer");
        out = static_cast<int>(v);
    }

    void take_u64(const char* key, std::uint64_t& out) {
        if (const RawValue* raw = find(key)) {
            if (raw->quoted)
                throw ConfigError(raw->line, key, "expected an integer");
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(
                raw->text.data(), raw->text.data() + raw->text.size(), v);
            if (ec != std::errc() || ptr != raw->text.data() + raw->text.size())
                throw ConfigError(raw->line, key, "not a valid unsigned integer");
            out = v;
        }
    }

    /// Every key must have been consumed by the schema.
    void reject_unknown() const {
        for (const auto& [key, raw] : values_)
            if (!consumed_.count(key))
                throw ConfigError(raw.line, key, "unknown key");
    }

  private:
    const RawValue* find(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end())
            return nullptr;
        consumed_.insert(key);
        return &it->second;
    }

    std::map<std::string, RawValue> values_;
    std::set<std::string> consumed_;
};

} // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    Extractor ex(tokenize(text));
    RunConfig cfg;
    ex.take_int("grid_n", cfg.grid_n);
    ex.take_double("box_length", cfg.box_length);
    ex.take_double("alpha", cfg.alpha);
    ex.take_string("mode", cfg.mode);
    ex.take_string("source", cfg.source);
    ex.take_string("source_f1", cfg.source_f1);
    ex.take_string("source_f2", cfg.source_f2);
    ex.take_string("initial_omega", cfg.initial_omega);
    ex.take_string("initial_theta", cfg.initial_theta);
    ex.take_double("initial_theta_width", cfg.initial_theta_width);
    ex.take_double("initial_amplitude", cfg.initial_amplitude);
    ex.take_int("block_q", cfg.block_q);
    ex.take_u64("seed", cfg.seed);
    ex.take_double("slope", cfg.slope);
    ex.take_string("velocity", cfg.velocity);
    ex.take_string("forcing", cfg.forcing);
    ex.take_int("forcing_q", cfg.forcing_q);
    ex.take_double("forcing_amplitude", cfg.forcing_amplitude);
    ex.take_double("dt", cfg.dt);
    ex.take_double("cfl_safety", cfg.cfl_safety);
    ex.take_double("t_end", cfg.t_end);
    ex.take_int("snapshot_stride", cfg.snapshot_stride);
    ex.take_int("block_stride", cfg.block_stride);
    ex.take_int("field_stride", cfg.field_stride);
    ex.take_double("lp_exponent", cfg.lp_exponent);
    ex.take_int("ensemble_count", cfg.ensemble_count);
    ex.take_double("tolerance_scale", cfg.tolerance_scale);
    ex.take_string("out_dir", cfg.out_dir);
    ex.reject_unknown();
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError(0, path, "cannot open config file");
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return from_string(buffer.str());
}

void RunConfig::validate() const {
    auto fail = [](const char* field, const std::string& msg) {
        throw ConfigError(0, field, msg);
    };
    if (grid_n < 16 || (grid_n & (grid_n - 1)) != 0)
        fail("grid_n", "must be a power of two >= 16");
    if (!(box_length > 0.0))
        fail("box_length", "must be positive");
    if (!(alpha > 0.0) || alpha > 2.0)
        fail("alpha", "must be in (0, 2]");
    if (mode != "boussinesq" && mode != "transport")
        fail("mode", "must be 'boussinesq' or 'transport'");
    if (source != "linear" && source != "cubic" && source != "sine" &&
        source != "polynomial")
        fail("source", "must be linear, cubic, sine or polynomial");
    for (const std::string* name : {&initial_omega, &initial_theta}) {
        const std::string& v = *name;
        if (v != "euler_eigen" && v != "gaussian_bump" && v != "single_block" &&
            v != "random" && v != "zero")
            fail(name == &initial_omega ? "initial_omega" : "initial_theta",
                 "must be euler_eigen, gaussian_bump, single_block, random or "
                 "zero");
    }
    if (velocity != "zero" && velocity != "shear" && velocity != "eigen" &&
        velocity != "random" && velocity != "pulsating_shear")
        fail("velocity", "must be zero, shear, eigen, random or pulsating_shear");
    if (forcing != "none" && forcing != "single_block")
        fail("forcing", "must be none or single_block");
    if (!(dt > 0.0))
        fail("dt", "must be positive");
    if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
        fail("cfl_safety", "must be in (0, 1]");
    if (!(t_end > 0.0))
        fail("t_end", "must be positive");
    if (snapshot_stride < 1)
        fail("snapshot_stride", "must be >= 1");
    if (block_stride < 1)
        fail("block_stride", "must be >= 1");
    if (field_stride < 0)
        fail("field_stride", "must be >= 0");
    if (lp_exponent < 1.0)
        fail("lp_exponent", "must be >= 1");
    if (ensemble_count < 1)
        fail("ensemble_count", "must be >= 1");
    if (!(tolerance_scale > 0.0))
        fail("tolerance_scale", "must be positive");
}

} // namespace bousslab::cli
