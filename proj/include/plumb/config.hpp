// Run-wide configuration shared by the CLI commands.

#pragma once

#include <cstdint>
#include <string>

#include "plumb/numeric.hpp"

namespace plumb {

inline constexpr const char* kVersion = "plumbzhat 0.1.0";

struct RunConfig {
    unsigned precision_digits = 64;
    unsigned long long term_budget = 100000000ULL;
    int radial_j0 = 12;
    int radial_J = 16;
    std::string normalization_override; // "", "prop_scaled", "corollary_literal"
    std::string format = "json";        // json | csv | text
    int parallelism = 1;
    std::uint64_t seed = 1;

    void check() const {
        if (precision_digits < 32) throw UsageError("config: precision must be >= 32");
        if (term_budget == 0) throw UsageError("config: budget must be positive");
        if (parallelism < 1) throw UsageError("config: parallelism must be positive");
        if (radial_J <= radial_j0) throw UsageError("config: radial schedule needs J > j0");
        if (format != "json" && format != "csv" && format != "text")
            throw UsageError("config: format must be json, csv or text");
        if (!normalization_override.empty() && normalization_override != "prop_scaled" &&
            normalization_override != "corollary_literal")
            throw UsageError("config: unknown normalization mode");
    }

    std::string to_json() const;
};

} // namespace plumb
