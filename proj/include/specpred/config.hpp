#pragma once

// Flat key-value experiment configuration ('section.key = value' lines,
// '#' comments).  Unknown keys are rejected; every run materializes the
// full resolved map into its output metadata so result files are
// self-describing.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "specpred/analysis.hpp"
#include "specpred/errors.hpp"
#include "specpred/params.hpp"
#include "specpred/signals.hpp"

namespace specpred {

class ExperimentConfig {
public:
    static const std::map<std::string, std::string>& defaults() {
        static const std::map<std::string, std::string> d = {
            {"predictor.gamma", "1"},
            {"predictor.gamma_list", ""},
            {"predictor.q", "2"},
            {"predictor.mu", "1.5"},
            {"predictor.alpha_rule", "power_law"},
            {"predictor.c0", "1"},
            {"kernel.fft_size", "65536"},
            {"kernel.truncation", "0"},
            {"signal.kind", "sinusoids"},
            {"signal.components", "0:1:0"},
            {"signal.omega1", "2"},
            {"signal.n_components", "24"},
            {"signal.c", "2"},
            {"signal.q", "2"},
            {"signal.n_lines", "256"},
            {"signal.nu", "0.05"},
            {"signal.seed", "1"},
            {"run.t0", "0"},
            {"run.window", "8192"},
            {"run.M", "0"},
            {"run.memory_tail_target", "1e-10"},
            {"run.grid_size", "8192"},
            {"run.norms", "linf,rms"},
            {"run.nus", "0,0.01,0.05,0.1"},
            {"run.memories", "4,8,16,32"},
            {"run.noise_seed", "777"},
            {"output.dir", "out"},
            {"output.formats", "csv"},
            {"output.id", ""},
        };
        return d;
    }

    ExperimentConfig() : values_(defaults()) {}

    static ExperimentConfig from_string(const std::string& text) {
        ExperimentConfig cfg;
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw validation_error("config line " + std::to_string(lineno) +
                                       ": expected 'key = value'");
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        return cfg;
    }

    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw validation_error("config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        return from_string(ss.str());
    }

    void set(const std::string& key, const std::string& value) {
        if (!defaults().count(key)) throw validation_error("config: unknown key '" + key + "'");
        values_[key] = value;
    }

    const std::string& get(const std::string& key) const { return values_.at(key); }

    double get_double(const std::string& key) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(get(key), &pos);
            if (pos != get(key).size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw validation_error("config: key '" + key + "' is not a number: '" + get(key) +
                                   "'");
        }
    }

    std::int64_t get_int(const std::string& key) const {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(get(key), &pos);
            if (pos != get(key).size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw validation_error("config: key '" + key + "' is not an integer: '" +
                                   get(key) + "'");
        }
    }

    std::vector<double> get_list(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& item : split(get(key), ',')) {
            const std::string s = trim(item);
            if (s.empty()) continue;
            try {
                out.push_back(std::stod(s));
            } catch (const std::exception&) {
                throw validation_error("config: bad number '" + s + "' in list '" + key + "'");
            }
        }
        return out;
    }

    std::vector<std::string> get_strings(const std::string& key) const {
        std::vector<std::string> out;
        for (const std::string& item : split(get(key), ','))
            if (!trim(item).empty()) out.push_back(trim(item));
        return out;
    }

    PredictorParams predictor() const {
        PredictorParams p;
        p.gamma = get_double("predictor.gamma");
        p.q = get_double("predictor.q");
        p.mu = get_double("predictor.mu");
        p.rule = alpha_rule_from_string(get("predictor.alpha_rule"));
        p.c0 = get_double("predictor.c0");
        p.validate();
        return p;
    }

    /// predictor.gamma_list when given, else the single predictor.gamma.
    std::vector<double> gamma_list() const {
        if (!get("predictor.gamma_list").empty()) return get_list("predictor.gamma_list");
        return {get_double("predictor.gamma")};
    }

    SpectrumSpec signal() const {
        SpectrumSpec s;
        s.kind = spectrum_kind_from_string(get("signal.kind"));
        s.components = parse_components(get("signal.components"));
        s.omega1 = get_double("signal.omega1");
        s.n_components = int(get_int("signal.n_components"));
        s.c = get_double("signal.c");
        s.q = get_double("signal.q");
        s.n_lines = int(get_int("signal.n_lines"));
        s.nu = get_double("signal.nu");
        s.seed = std::uint64_t(get_int("signal.seed"));
        s.validate();
        return s;
    }

    RunConfig run() const {
        RunConfig r;
        r.fft_size = int(get_int("kernel.fft_size"));
        r.truncation = int(get_int("kernel.truncation"));
        r.memory = int(get_int("run.M"));
        r.memory_tail_target = get_double("run.memory_tail_target");
        r.t0 = get_int("run.t0");
        r.window = get_int("run.window");
        r.grid_size = int(get_int("run.grid_size"));
        r.weight = WeightParams{get_double("signal.c"), get_double("signal.q")};
        r.noise_seed = std::uint64_t(get_int("run.noise_seed"));
        if (r.window < 2) throw validation_error("config: run.window must be >= 2");
        return r;
    }

    /// Full resolved map, ordered, for embedding into output metadata.
    Metadata resolved_metadata() const {
        Metadata m;
        for (const auto& [key, value] : values_) m.emplace_back("cfg." + key, value);
        return m;
    }

    /// "omega:amplitude:phase" components separated by ';' or whitespace.
    static std::vector<SinusoidComponent> parse_components(const std::string& text) {
        std::vector<SinusoidComponent> out;
        std::string norm = text;
        for (char& ch : norm)
            if (ch == ';') ch = ' ';
        std::istringstream is(norm);
        std::string tok;
        while (is >> tok) {
            const auto parts = split(tok, ':');
            if (parts.size() != 3)
                throw validation_error("config: component '" + tok +
                                       "' must be omega:amplitude:phase");
            try {
                out.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
            } catch (const std::exception&) {
                throw validation_error("config: bad component '" + tok + "'");
            }
        }
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    }

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    }

    std::map<std::string, std::string> values_;
};

} // namespace specpred
