#pragma once

// CSV / JSON emission for the experiment reports.  CSV carries the
// resolved configuration as '# key = value' comment lines followed by a
// header row; numeric cells are printed at 17 significant digits
// (empty cell for a value that does not exist on a flagged row).

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "specpred/analysis.hpp"
#include "specpred/io.hpp"

namespace specpred {

namespace detail {

inline std::string csv_cell(double v) { return std::isnan(v) ? std::string() : fmt17(v); }

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline void csv_header(std::ostream& os, const char* kind, const Metadata& meta) {
    os << "# specpred " << kind << " v1\n";
    for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
}

inline void json_meta(std::ostream& os, const Metadata& meta) {
    os << "  \"metadata\": {";
    for (std::size_t i = 0; i < meta.size(); ++i)
        os << (i ? ", " : "") << nlohmann::json(meta[i].first).dump() << ": "
           << nlohmann::json(meta[i].second).dump();
    os << "},\n";
}

} // namespace detail

inline void write_sweep_csv(std::ostream& os, const SweepReport& rep) {
    detail::csv_header(os, "sweep", rep.metadata);
    os << "gamma,alpha,log_kappa,kappa,psi_rho1,psi_rho2,i1_factor,truncation,memory,"
          "tail_l1,error_linf,error_rms,i1_term,i2_term,err_bound,time_domain,note\n";
    for (const auto& r : rep.rows) {
        os << fmt17(r.gamma) << ',' << fmt17(r.alpha) << ',' << fmt17(r.log_kappa) << ','
           << fmt17(r.kappa) << ',' << fmt17(r.psi_rho1) << ',' << fmt17(r.psi_rho2) << ','
           << fmt17(r.i1_factor) << ',' << r.truncation << ',' << r.memory << ','
           << detail::csv_cell(r.tail_l1) << ',' << detail::csv_cell(r.error_linf) << ','
           << detail::csv_cell(r.error_rms) << ',' << fmt17(r.i1_term) << ','
           << fmt17(r.i2_term) << ',' << detail::csv_cell(r.err_bound) << ','
           << (r.time_domain ? 1 : 0) << ',' << detail::csv_quote(r.note) << "\n";
    }
}

inline void write_sweep_json(std::ostream& os, const SweepReport& rep) {
    os << "{\n  \"format\": \"specpred-sweep-v1\",\n";
    detail::json_meta(os, rep.metadata);
    os << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << "    {\"gamma\": " << json_number(r.gamma) << ", \"alpha\": "
           << json_number(r.alpha) << ", \"log_kappa\": " << json_number(r.log_kappa)
           << ", \"kappa\": " << json_number(r.kappa) << ", \"psi_rho1\": "
           << json_number(r.psi_rho1) << ", \"psi_rho2\": " << json_number(r.psi_rho2)
           << ", \"i1_factor\": " << json_number(r.i1_factor) << ", \"truncation\": "
           << r.truncation << ", \"memory\": " << r.memory << ", \"tail_l1\": "
           << json_number(r.tail_l1) << ", \"error_linf\": " << json_number(r.error_linf)
           << ", \"error_rms\": " << json_number(r.error_rms) << ", \"i1_term\": "
           << json_number(r.i1_term) << ", \"i2_term\": " << json_number(r.i2_term)
           << ", \"err_bound\": " << json_number(r.err_bound) << ", \"time_domain\": "
           << (r.time_domain ? "true" : "false") << ", \"note\": "
           << nlohmann::json(r.note).dump() << "}" << (i + 1 < rep.rows.size() ? "," : "")
           << "\n";
    }
    os << "  ]\n}\n";
}

inline void write_robustness_csv(std::ostream& os, const RobustnessReport& rep) {
    detail::csv_header(os, "robustness", rep.metadata);
    os << "nu,gamma,epsilon_clean,error_noisy,bound,kappa,bound_violated\n";
    for (const auto& r : rep.rows)
        os << fmt17(r.nu) << ',' << fmt17(r.gamma) << ',' << fmt17(r.epsilon_clean) << ','
           << fmt17(r.error_noisy) << ',' << fmt17(r.bound) << ',' << fmt17(r.kappa) << ','
           << (r.bound_violated ? 1 : 0) << "\n";
}

inline void write_robustness_json(std::ostream& os, const RobustnessReport& rep) {
    os << "{\n  \"format\": \"specpred-robustness-v1\",\n";
    detail::json_meta(os, rep.metadata);
    os << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << "    {\"nu\": " << json_number(r.nu) << ", \"gamma\": " << json_number(r.gamma)
           << ", \"epsilon_clean\": " << json_number(r.epsilon_clean) << ", \"error_noisy\": "
           << json_number(r.error_noisy) << ", \"bound\": " << json_number(r.bound)
           << ", \"kappa\": " << json_number(r.kappa) << ", \"bound_violated\": "
           << (r.bound_violated ? "true" : "false") << "}"
           << (i + 1 < rep.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

inline void write_truncation_csv(std::ostream& os, const TruncationReport& rep) {
    detail::csv_header(os, "truncation", rep.metadata);
    os << "memory,error_linf,error_rms,tail_l1\n";
    for (const auto& r : rep.rows)
        os << r.memory << ',' << fmt17(r.error_linf) << ',' << fmt17(r.error_rms) << ','
           << fmt17(r.tail_l1) << "\n";
}

inline void write_truncation_json(std::ostream& os, const TruncationReport& rep) {
    os << "{\n  \"format\": \"specpred-truncation-v1\",\n";
    detail::json_meta(os, rep.metadata);
    os << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << "    {\"memory\": " << r.memory << ", \"error_linf\": "
           << json_number(r.error_linf) << ", \"error_rms\": " << json_number(r.error_rms)
           << ", \"tail_l1\": " << json_number(r.tail_l1) << "}"
           << (i + 1 < rep.rows.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

} // namespace specpred
