#include "ddforge/schedule.hpp"

#include <algorithm>

#include <json.hpp>

namespace ddforge {

namespace {

bool counts_as_gate(const Op& op) {
    switch (op.kind) {
        case GateKind::Delay:
        case GateKind::Barrier:
        case GateKind::Measure:
            return false;
        default:
            return true;
    }
}

} // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> ScheduledCircuit::busy_intervals(int qubit) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (size_t i = 0; i < size(); ++i) {
        const Op& op = circuit.ops[i];
        if (!counts_as_gate(op) || dur[i] == 0) continue;
        for (int q : op.qubits)
            if (q == qubit) out.emplace_back(start[i], end_of(i));
    }
    std::sort(out.begin(), out.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> merged;
    for (auto& iv : out) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

void ScheduledCircuit::validate() const {
    if (start.size() != size() || dur.size() != size())
        throw std::logic_error("schedule arrays misaligned");
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> per_qubit(circuit.num_qubits);
    for (size_t i = 0; i < size(); ++i) {
        if (start[i] < 0 || dur[i] < 0) throw std::logic_error("negative start or duration");
        if (end_of(i) > total_duration) throw std::logic_error("op runs past total_duration");
        for (int q : circuit.ops[i].qubits) per_qubit[q].emplace_back(start[i], end_of(i));
    }
    for (auto& ivs : per_qubit) {
        std::sort(ivs.begin(), ivs.end());
        for (size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i].first < ivs[i - 1].second)
                throw std::logic_error("overlapping ops on a qubit");
    }
}

ScheduledCircuit schedule_asap(const Circuit& c, const DurationTable& durations) {
    c.validate();
    ScheduledCircuit sched;
    sched.circuit = c;
    sched.start.resize(c.ops.size());
    sched.dur.resize(c.ops.size());
    std::vector<std::int64_t> avail(c.num_qubits, 0);
    for (size_t i = 0; i < c.ops.size(); ++i) {
        const Op& op = c.ops[i];
        std::int64_t d = durations.duration_of(op);
        std::int64_t t = 0;
        for (int q : op.qubits) t = std::max(t, avail[q]);
        sched.start[i] = t;
        sched.dur[i] = d;
        for (int q : op.qubits) avail[q] = t + d;
        sched.total_duration = std::max(sched.total_duration, t + d);
    }
    return sched;
}

std::vector<IdleWindow> idle_windows(const ScheduledCircuit& sched) {
    // Per qubit, the time-ordered gates (Delay/Barrier/Measure excluded,
    // zero-duration ops excluded); a window is a positive gap between two
    // consecutive entries.
    struct Slot {
        std::int64_t start, end;
        int op;
    };
    std::vector<std::vector<Slot>> per_qubit(sched.circuit.num_qubits);
    for (size_t i = 0; i < sched.size(); ++i) {
        const Op& op = sched.circuit.ops[i];
        if (!counts_as_gate(op) || sched.dur[i] == 0) continue;
        for (int q : op.qubits)
            per_qubit[q].push_back({sched.start[i], sched.end_of(i), static_cast<int>(i)});
    }
    std::vector<IdleWindow> out;
    for (int q = 0; q < sched.circuit.num_qubits; ++q) {
        auto& slots = per_qubit[q];
        std::sort(slots.begin(), slots.end(),
                  [](const Slot& a, const Slot& b) { return a.start < b.start; });
        for (size_t i = 1; i < slots.size(); ++i) {
            std::int64_t gap = slots[i].start - slots[i - 1].end;
            if (gap > 0)
                out.push_back({q, slots[i - 1].end, gap, slots[i - 1].op, slots[i].op});
        }
    }
    std::sort(out.begin(), out.end(), [](const IdleWindow& a, const IdleWindow& b) {
        return a.qubit != b.qubit ? a.qubit < b.qubit : a.start < b.start;
    });
    return out;
}

std::int64_t total_duration(const ScheduledCircuit& sched) { return sched.total_duration; }

std::string schedule_to_json(const ScheduledCircuit& sched) {
    nlohmann::json j = nlohmann::json::object();
    for (size_t i = 0; i < sched.size(); ++i) j[std::to_string(i)] = sched.start[i];
    return j.dump();
}

} // namespace ddforge
