#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>

#include "cli/cli.hpp"

namespace bnpid::cli {
namespace {

// Every run option, as spelled on the command line (without "--").
const std::vector<std::string>& option_keys() {
    static const std::vector<std::string> keys = {"scenario", "n",       "n-draws", "seed",      "grid",     "prior-family",
                                                  "alpha",    "out-dir", "workers", "hist-bins", "emit-data"};
    return keys;
}

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file \"" + path + "\"");
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key=value, got \"" + line + "\"");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (std::find(option_keys().begin(), option_keys().end(), key) == option_keys().end()) {
            throw UsageError("config line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
        }
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw UsageError("--" + key + ": malformed integer \"" + text + "\"");
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw UsageError("--" + key + ": malformed number \"" + text + "\"");
    return value;
}

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos) throw UsageError("--grid: expected lo:hi:step, got \"" + text + "\"");
    GridSpec g{parse_real("grid", text.substr(0, a)), parse_real("grid", text.substr(a + 1, b - a - 1)),
               parse_real("grid", text.substr(b + 1))};
    if (!(g.lo < g.hi) || !(g.step > 0.0)) throw UsageError("--grid: need lo < hi and step > 0 in \"" + text + "\"");
    return g;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text.empty()) return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError("--" + key + ": expected true or false, got \"" + text + "\"");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest(args.begin(), args.end());
    if (!rest.empty() && rest.front() == "run") rest.erase(rest.begin());

    CLI::App app{"bnpid run"};
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flags;
    for (const auto& key : option_keys()) {
        if (key == "emit-data") continue;
        flags[key] = app.add_option("--" + key, flag_values[key]);
    }
    bool emit_data = false;
    flags["emit-data"] = app.add_flag("--emit-data", emit_data);
    std::string config_path;
    app.add_option("--config", config_path);

    try {
        std::vector<std::string> reversed(rest.rbegin(), rest.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    std::map<std::string, std::string> values;
    if (!config_path.empty()) values = read_config_file(config_path);
    for (const auto& [key, opt] : flags) {
        if (opt->count() == 0) continue;
        values[key] = key == "emit-data" ? (emit_data ? "true" : "false") : flag_values[key];
    }

    if (!values.contains("scenario")) throw UsageError("run: --scenario is required");
    RunConfig cfg;
    try {
        cfg.scenario = parse_scenario_id(values["scenario"]);
    } catch (const std::exception&) {
        throw UsageError("unknown scenario \"" + values["scenario"] + "\"");
    }
    const ScenarioConfig defaults = default_config(cfg.scenario);
    cfg.n = defaults.n;

    if (values.contains("n")) {
        if (!scenario_has_data(cfg.scenario)) {
            throw UsageError("--n: scenario \"" + values["scenario"] + "\" takes no data");
        }
        cfg.n = parse_integer<std::size_t>("n", values["n"]);
        if (cfg.n < 1) throw UsageError("--n: must be at least 1, got \"" + values["n"] + "\"");
    }
    if (values.contains("n-draws")) {
        cfg.n_draws = parse_integer<std::size_t>("n-draws", values["n-draws"]);
        if (cfg.n_draws < 1) throw UsageError("--n-draws: must be at least 1, got \"" + values["n-draws"] + "\"");
    }
    if (values.contains("seed")) cfg.seed = parse_integer<std::uint64_t>("seed", values["seed"]);
    if (values.contains("grid")) cfg.grid = parse_grid(values["grid"]);
    if (values.contains("prior-family")) {
        try {
            cfg.prior_family = parse_prior_family(values["prior-family"]);
        } catch (const std::exception&) {
            throw UsageError("--prior-family: unknown family \"" + values["prior-family"] + "\"");
        }
    }
    if (values.contains("alpha")) {
        cfg.alpha = parse_real("alpha", values["alpha"]);
        if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
            throw UsageError("--alpha: must lie in (0, 1], got \"" + values["alpha"] + "\"");
        }
    }
    if (values.contains("out-dir")) cfg.out_dir = values["out-dir"];
    if (values.contains("workers")) {
        cfg.workers = parse_integer<int>("workers", values["workers"]);
        if (cfg.workers < 1) throw UsageError("--workers: must be at least 1, got \"" + values["workers"] + "\"");
    }
    if (values.contains("hist-bins")) {
        cfg.hist_bins = parse_integer<std::size_t>("hist-bins", values["hist-bins"]);
        if (cfg.hist_bins < 1) throw UsageError("--hist-bins: must be at least 1");
    }
    if (values.contains("emit-data")) cfg.emit_data = parse_bool("emit-data", values["emit-data"]);
    if (cfg.emit_data && !scenario_has_data(cfg.scenario)) {
        throw UsageError("--emit-data: scenario \"" + values["scenario"] + "\" takes no data");
    }
    return cfg;
}

}  // namespace bnpid::cli
