#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "specpred/errors.hpp"

namespace specpred {

/// Finite window of a real-valued discrete-time signal.  Sample i holds
/// x(start_time + i).
struct Series {
    std::int64_t start_time = 0;
    std::vector<double> samples;

    Series() = default;
    Series(std::int64_t t0, std::vector<double> data) : start_time(t0), samples(std::move(data)) {
        validate();
    }

    std::int64_t t0() const { return start_time; }
    std::int64_t t1() const { return start_time + std::int64_t(samples.size()) - 1; }
    std::size_t size() const { return samples.size(); }

    double at(std::int64_t t) const { return samples[std::size_t(t - start_time)]; }
    double& at(std::int64_t t) { return samples[std::size_t(t - start_time)]; }

    double linf() const {
        double m = 0.0;
        for (double v : samples) m = std::max(m, std::fabs(v));
        return m;
    }

    void validate() const {
        if (samples.empty()) throw validation_error("Series: need at least one sample");
        for (double v : samples)
            if (!std::isfinite(v)) throw validation_error("Series: non-finite sample");
    }
};

} // namespace specpred
