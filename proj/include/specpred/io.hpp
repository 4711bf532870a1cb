#pragma once

// File formats: kernel records (flat text and JSON), series (two-column
// text and JSON), prediction runs (three-column text).  All floating-
// point output is printed at 17 significant digits so a parse/print
// cycle is byte-identical.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specpred/errors.hpp"
#include "specpred/kernel.hpp"
#include "specpred/predict.hpp"
#include "specpred/series.hpp"

namespace specpred {

inline std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON number token: finite values at 17 significant digits, null for
/// the non-finite markers (JSON has no inf/nan literals).
inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return fmt17(v);
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

namespace detail {

template <class Real>
void write_kernel_fields(std::ostream& os, const PredictorKernel<Real>& k, bool json) {
    const char* prec = std::is_same_v<Real, double> ? "double" : "float128";
    const auto field = [&](const char* name, const std::string& value, bool quoted) {
        if (json)
            os << "  \"" << name << "\": " << (quoted ? "\"" + value + "\"" : value) << ",\n";
        else
            os << name << " = " << value << "\n";
    };
    field("gamma", fmt17(k.params.gamma), false);
    field("q", fmt17(k.params.q), false);
    field("mu", fmt17(k.params.mu), false);
    field("alpha_rule", to_string(k.params.rule), !json ? false : true);
    field("c0", fmt17(k.params.c0), false);
    field("alpha", fmt17(k.alpha), false);
    field("fft_size", std::to_string(k.fft_size), false);
    field("truncation", std::to_string(k.truncation), false);
    field("precision", prec, !json ? false : true);
    field("causality_defect", fmt17(k.causality_defect), false);
    field("tail_bound", fmt17(k.tail_bound), false);
    field("l1_norm", fmt17(k.l1_norm), false);
}

} // namespace detail

template <class Real>
void write_kernel_text(std::ostream& os, const PredictorKernel<Real>& k,
                       const Metadata& meta = {}) {
    os << "# specpred kernel v1\n";
    for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
    detail::write_kernel_fields(os, k, false);
    os << "coeffs:\n";
    for (const Real& c : k.coeffs) os << fmt17(double(c)) << "\n";
}

template <class Real>
void write_kernel_json(std::ostream& os, const PredictorKernel<Real>& k,
                       const Metadata& meta = {}) {
    os << "{\n  \"format\": \"specpred-kernel-v1\",\n";
    if (!meta.empty()) {
        os << "  \"metadata\": {";
        for (std::size_t i = 0; i < meta.size(); ++i)
            os << (i ? ", " : "") << nlohmann::json(meta[i].first).dump() << ": "
               << nlohmann::json(meta[i].second).dump();
        os << "},\n";
    }
    detail::write_kernel_fields(os, k, true);
    os << "  \"coeffs\": [";
    for (std::size_t i = 0; i < k.coeffs.size(); ++i)
        os << (i ? ", " : "") << fmt17(double(k.coeffs[i]));
    os << "]\n}\n";
}

inline void write_kernel_text(std::ostream& os, const AnyKernel& k, const Metadata& meta = {}) {
    std::visit([&](const auto& kk) { write_kernel_text(os, kk, meta); }, k);
}
inline void write_kernel_json(std::ostream& os, const AnyKernel& k, const Metadata& meta = {}) {
    std::visit([&](const auto& kk) { write_kernel_json(os, kk, meta); }, k);
}

/// Files always carry double-rounded taps, so imports land on
/// PredictorKernel<double> regardless of the synthesis precision.
inline Kernel read_kernel_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw io_error(std::string("kernel json: ") + e.what());
    }
    if (j.value("format", "") != std::string("specpred-kernel-v1"))
        throw io_error("kernel json: unknown format tag");
    Kernel k;
    k.params.gamma = j.at("gamma").get<double>();
    k.params.q = j.at("q").get<double>();
    k.params.mu = j.at("mu").get<double>();
    k.params.rule = alpha_rule_from_string(j.at("alpha_rule").get<std::string>());
    k.params.c0 = j.at("c0").get<double>();
    k.alpha = j.at("alpha").get<double>();
    k.fft_size = j.at("fft_size").get<int>();
    k.truncation = j.at("truncation").get<int>();
    k.causality_defect = j.at("causality_defect").get<double>();
    k.tail_bound = j.at("tail_bound").get<double>();
    k.l1_norm = j.at("l1_norm").get<double>();
    k.coeffs = j.at("coeffs").get<std::vector<double>>();
    if (int(k.coeffs.size()) != k.truncation + 1)
        throw io_error("kernel json: coeffs length does not match truncation");
    k.params.validate();
    return k;
}

inline Kernel read_kernel_text(std::istream& is) {
    Kernel k;
    std::string line;
    bool in_coeffs = false;
    int seen = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line == "coeffs:") {
            in_coeffs = true;
            continue;
        }
        if (in_coeffs) {
            k.coeffs.push_back(std::stod(line));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw io_error("kernel text: expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        ++seen;
        if (key == "gamma") k.params.gamma = std::stod(val);
        else if (key == "q") k.params.q = std::stod(val);
        else if (key == "mu") k.params.mu = std::stod(val);
        else if (key == "alpha_rule") k.params.rule = alpha_rule_from_string(val);
        else if (key == "c0") k.params.c0 = std::stod(val);
        else if (key == "alpha") k.alpha = std::stod(val);
        else if (key == "fft_size") k.fft_size = std::stoi(val);
        else if (key == "truncation") k.truncation = std::stoi(val);
        else if (key == "precision") ; // informational
        else if (key == "causality_defect") k.causality_defect = std::stod(val);
        else if (key == "tail_bound") k.tail_bound = std::stod(val);
        else if (key == "l1_norm") k.l1_norm = std::stod(val);
        else throw io_error("kernel text: unknown field '" + key + "'");
    }
    if (seen < 8 || k.coeffs.empty()) throw io_error("kernel text: incomplete record");
    if (int(k.coeffs.size()) != k.truncation + 1)
        throw io_error("kernel text: coeffs length does not match truncation");
    k.params.validate();
    return k;
}

// ---------------------------------------------------------------------------
// Series and prediction runs
// ---------------------------------------------------------------------------

inline void write_series_text(std::ostream& os, const Series& x, const Metadata& meta = {}) {
    os << "# specpred series v1\n";
    for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
    for (std::int64_t t = x.t0(); t <= x.t1(); ++t)
        os << t << " " << fmt17(x.at(t)) << "\n";
}

inline void write_series_json(std::ostream& os, const Series& x, const Metadata& meta = {}) {
    os << "{\n  \"format\": \"specpred-series-v1\",\n";
    if (!meta.empty()) {
        os << "  \"metadata\": {";
        for (std::size_t i = 0; i < meta.size(); ++i)
            os << (i ? ", " : "") << nlohmann::json(meta[i].first).dump() << ": "
               << nlohmann::json(meta[i].second).dump();
        os << "},\n";
    }
    os << "  \"start_time\": " << x.t0() << ",\n  \"samples\": [";
    for (std::size_t i = 0; i < x.samples.size(); ++i)
        os << (i ? ", " : "") << fmt17(x.samples[i]);
    os << "]\n}\n";
}

inline Series read_series_text(std::istream& is) {
    std::vector<double> samples;
    std::int64_t t0 = 0;
    bool first = true;
    std::int64_t expect = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t t;
        double v;
        if (!(ls >> t >> v)) throw io_error("series text: expected 't value'");
        if (first) {
            t0 = t;
            expect = t;
            first = false;
        }
        if (t != expect) throw io_error("series text: non-contiguous time index");
        ++expect;
        samples.push_back(v);
    }
    if (samples.empty()) throw io_error("series text: no samples");
    return Series(t0, std::move(samples));
}

inline Series read_series_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw io_error(std::string("series json: ") + e.what());
    }
    if (j.value("format", "") != std::string("specpred-series-v1"))
        throw io_error("series json: unknown format tag");
    return Series(j.at("start_time").get<std::int64_t>(),
                  j.at("samples").get<std::vector<double>>());
}

/// Three columns over the valid window: t, x(t+1), xhat(t).
inline void write_prediction_text(std::ostream& os, const PredictionRun& run,
                                  const Metadata& meta = {}) {
    os << "# specpred prediction v1\n";
    for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
    os << "# columns: t x(t+1) xhat(t)\n";
    for (std::int64_t t = run.valid_t0(); t <= run.valid_t1(); ++t)
        os << t << " " << fmt17(run.input.at(t + 1)) << " " << fmt17(run.predicted.at(t))
           << "\n";
}

} // namespace specpred
