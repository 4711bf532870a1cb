#pragma once

#include <stdexcept>
#include <string>

namespace specpred {

/// Parameter or configuration rejected at construction time.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Evaluation left the dynamic range of the floating-point path
/// (exponent magnitude past the safe limit, or a kernel whose taps
/// cannot be synthesized accurately at the requested precision).
class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

/// Synthesized kernel has significant mass at negative lags.
class noncausal_error : public std::runtime_error {
public:
    explicit noncausal_error(const std::string& what) : std::runtime_error(what) {}
};

/// Series window too short for the requested memory, or empty
/// evaluation window.
class window_error : public std::invalid_argument {
public:
    explicit window_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input file (kernel record, series file, config).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace specpred
