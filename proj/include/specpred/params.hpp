#pragma once

#include <cmath>
#include <string>

#include "specpred/errors.hpp"

namespace specpred {

/// Schedule tying the pole offset alpha to the design parameter gamma.
enum class AlphaRule {
    /// alpha = 1 - gamma^{2 mu / (1 - q)}, mu > 1.
    PowerLaw,
    /// alpha = 1 - (log gamma)^{-1} gamma^{2 / (1 - q)}, gamma > 1.
    LogCorrected,
    /// alpha = 1 - (1/2) (2 gamma / c0)^{2 / (1 - q)}.  Targets uniform
    /// prediction over the class with weight constant c0; the limit
    /// case of the power-law schedule at mu = 1.
    Uniform,
};

inline const char* to_string(AlphaRule rule) {
    switch (rule) {
    case AlphaRule::PowerLaw: return "power_law";
    case AlphaRule::LogCorrected: return "log_corrected";
    case AlphaRule::Uniform: return "uniform";
    }
    return "?";
}

inline AlphaRule alpha_rule_from_string(const std::string& s) {
    if (s == "power_law") return AlphaRule::PowerLaw;
    if (s == "log_corrected") return AlphaRule::LogCorrected;
    if (s == "uniform") return AlphaRule::Uniform;
    throw validation_error("unknown alpha rule '" + s + "'");
}

/// Parameters of the spectral weight h(omega, c) = exp(c / |e^{i omega} + 1|^q).
struct WeightParams {
    double c = 2.0;
    double q = 2.0;

    void validate() const {
        if (!(c > 0.0)) throw validation_error("weight: c must be > 0");
        if (!(q > 1.0)) throw validation_error("weight: q must be > 1");
    }
};

/// One member of the predictor family: gamma fixes the accuracy target,
/// q the decay class, and the alpha rule maps gamma to the pole offset.
struct PredictorParams {
    double gamma = 1.0;
    double q = 2.0;
    double mu = 1.5;
    AlphaRule rule = AlphaRule::PowerLaw;
    double c0 = 1.0; ///< only read by AlphaRule::Uniform

    void validate() const {
        if (!(gamma > 0.0)) throw validation_error("predictor: gamma must be > 0");
        if (!(q > 1.0)) throw validation_error("predictor: q must be > 1");
        if (rule == AlphaRule::PowerLaw && !(mu > 1.0))
            throw validation_error("predictor: mu must be > 1 for the power-law rule");
        if (rule == AlphaRule::LogCorrected && !(gamma > 1.0))
            throw validation_error("predictor: gamma must be > 1 for the log-corrected rule");
        if (rule == AlphaRule::Uniform && !(c0 > 0.0))
            throw validation_error("predictor: c0 must be > 0 for the uniform rule");
    }
};

/// Pole offset alpha(gamma) for the selected rule.  The pole z = -alpha
/// must sit strictly inside the unit disk; parameters that push alpha
/// out of (-1, 1) (gamma too small for the rule) are rejected.
inline double alpha(const PredictorParams& p) {
    p.validate();
    double a = 0.0;
    switch (p.rule) {
    case AlphaRule::PowerLaw:
        a = 1.0 - std::pow(p.gamma, 2.0 * p.mu / (1.0 - p.q));
        break;
    case AlphaRule::LogCorrected:
        a = 1.0 - std::pow(p.gamma, 2.0 / (1.0 - p.q)) / std::log(p.gamma);
        break;
    case AlphaRule::Uniform:
        a = 1.0 - 0.5 * std::pow(2.0 * p.gamma / p.c0, 2.0 / (1.0 - p.q));
        break;
    }
    if (!(a > -1.0 && a < 1.0))
        throw validation_error("alpha(gamma) = " + std::to_string(a) +
                               " outside (-1, 1); gamma too small for the rule");
    return a;
}

} // namespace specpred
