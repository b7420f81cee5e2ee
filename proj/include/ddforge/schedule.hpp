#pragma once

#include <cstdint>
#include <vector>

#include "ddforge/circuit.hpp"
#include "ddforge/durations.hpp"

namespace ddforge {

/// Circuit with integer start times in dt. ops, start and dur are aligned.
struct ScheduledCircuit {
    Circuit circuit;
    std::vector<std::int64_t> start;
    std::vector<std::int64_t> dur;
    std::int64_t total_duration = 0;

    size_t size() const { return circuit.ops.size(); }
    std::int64_t end_of(size_t i) const { return start[i] + dur[i]; }

    /// Sorted, merged busy intervals of one qubit, gates only (Delay and
    /// zero-duration ops do not count as busy; Measure intervals are kept
    /// separate by idle_windows).
    std::vector<std::pair<std::int64_t, std::int64_t>> busy_intervals(int qubit) const;

    /// Throws if any two ops overlap on a qubit or an op runs past
    /// total_duration.
    void validate() const;
};

/// Boundary marker for a window without a gate neighbor on that side.
constexpr int kNoNeighbor = -1;

/// Maximal scheduled gap on one qubit, strictly between two of its gates.
/// left_op / right_op index into ScheduledCircuit::ops.
struct IdleWindow {
    int qubit = 0;
    std::int64_t start = 0;
    std::int64_t length = 0;
    int left_op = kNoNeighbor;
    int right_op = kNoNeighbor;
};

/// List scheduling in input order: each op starts as soon as every operand
/// qubit is free. Stable for ties. Throws when a gate kind has no duration.
ScheduledCircuit schedule_asap(const Circuit& c, const DurationTable& durations);

/// Every maximal gap between consecutive gates on each qubit. Explicit Delay
/// ops count as idle time, not as busy. Idle before a qubit's first gate and
/// after its last gate (including the stretch before Measure) is excluded.
std::vector<IdleWindow> idle_windows(const ScheduledCircuit& sched);

std::int64_t total_duration(const ScheduledCircuit& sched);

/// {"op_index": start_time} map for golden-file comparisons.
std::string schedule_to_json(const ScheduledCircuit& sched);

} // namespace ddforge
