#pragma once

namespace specpred {

inline constexpr const char* kVersion = "0.1.0";

inline const char* version_string() {
#ifdef SPECPRED_GIT_DESCRIBE
    return "specpred " SPECPRED_GIT_DESCRIBE;
#else
    return "specpred 0.1.0";
#endif
}

} // namespace specpred
