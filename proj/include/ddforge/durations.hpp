#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "ddforge/circuit.hpp"

namespace ddforge {

/// Per-gate durations in dt. RZ is virtual (0 dt). RZX uses the linear
/// pulse-area model d(theta) = alpha + beta * |theta|, rounded to integer dt.
struct DurationTable {
    double dt_ns = 0.2;
    std::int64_t rz = 0;
    std::int64_t sx = 160;
    std::int64_t x = 160;
    std::int64_t y = 160;
    std::int64_t rx = 160;
    std::int64_t h = 160; // one physical pulse; only used pre-decomposition
    std::int64_t cx = 1088;
    std::int64_t measure = 5440;
    // Fitted so the echoed-RZX CX reproduces the 1088 dt CX slot exactly
    // (d(pi/4) = 384) and an echoed RZZ(pi/3) schedules to 1008 dt.
    double rzx_alpha = 24.0;
    double rzx_beta = 1440.0 / M_PI;

    static DurationTable defaults() { return {}; }

    /// Duration of an op in dt. Throws when the gate kind has no entry
    /// (CZ, RZZ, CP must be decomposed first).
    std::int64_t duration_of(const Op& op) const;

    double dt_to_us(std::int64_t dt) const { return static_cast<double>(dt) * dt_ns * 1e-3; }
};

DurationTable load_duration_config(const std::string& path);
void save_duration_config(const DurationTable& t, const std::string& path);

} // namespace ddforge
