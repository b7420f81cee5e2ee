#include "ddforge/dd.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ddforge/basis.hpp"
#include "state_kernels.hpp"

namespace ddforge {

using kernels::Mat2;
using kernels::cplx;

const char* seq_name(SeqName s) {
    switch (s) {
        case SeqName::HahnX: return "hahn_x";
        case SeqName::HahnY: return "hahn_y";
        case SeqName::Cp: return "cp";
        case SeqName::Cpmg: return "cpmg";
        case SeqName::Xy4: return "xy4";
        case SeqName::Xy8: return "xy8";
        case SeqName::Xy16: return "xy16";
        case SeqName::UddX: return "udd_x";
        case SeqName::UddY: return "udd_y";
        case SeqName::Kdd: return "kdd";
    }
    throw std::logic_error("unreachable sequence name");
}

SeqName seq_from_name(const std::string& name) {
    for (SeqName s : sequence_catalog())
        if (name == seq_name(s)) return s;
    throw std::invalid_argument("unknown DD sequence: " + name);
}

std::vector<SeqName> sequence_catalog() {
    return {SeqName::HahnX, SeqName::HahnY, SeqName::Cp,   SeqName::Cpmg, SeqName::Xy4,
            SeqName::Xy8,   SeqName::Xy16,  SeqName::UddX, SeqName::UddY, SeqName::Kdd};
}

int default_repetitions(SeqName s) {
    switch (s) {
        case SeqName::Cp:
        case SeqName::Cpmg:
            return 2;
        case SeqName::UddX:
        case SeqName::UddY:
            return 8;
        default:
            return 1;
    }
}

namespace {

DDPulse pulse_x() { return {{Op{GateKind::X, {0}}}}; }
DDPulse pulse_y() { return {{Op{GateKind::Y, {0}}}}; }
DDPulse pulse_x_inv() { return {{Op{GateKind::RX, {0}, -M_PI}}}; }

// RY(-pi) realized with virtual Z rotations around a physical RX(-pi).
DDPulse pulse_y_inv() {
    return {{Op{GateKind::RZ, {0}, M_PI / 2}, Op{GateKind::RX, {0}, -M_PI},
             Op{GateKind::RZ, {0}, -M_PI / 2}}};
}

DDPulse kdd_triple(double f) {
    return {{Op{GateKind::RZ, {0}, f}, Op{GateKind::RX, {0}, -M_PI},
             Op{GateKind::RZ, {0}, -f}}};
}

} // namespace

std::array<std::complex<double>, 4> DDSequence::net_unitary() const {
    Mat2 net{1.0, 0.0, 0.0, 1.0};
    for (const auto& p : pulses)
        for (const auto& g : p.gates)
            net = kernels::matmul2(kernels::gate1_matrix(g.kind, g.param), net);
    return net;
}

bool DDSequence::needs_absorption() const {
    Mat2 net = net_unitary();
    cplx tr = net[0] + net[3];
    return std::abs(tr) / 2.0 < 1.0 - 1e-9;
}

int DDSequence::gate_count() const {
    int n = 0;
    for (const auto& p : pulses) n += static_cast<int>(p.gates.size());
    return n;
}

std::vector<double> udd_positions(int n) {
    if (n < 1) throw std::invalid_argument("UDD needs n >= 1");
    std::vector<double> out(n);
    for (int j = 1; j <= n; ++j) {
        double s = std::sin(M_PI * j / (2.0 * n + 2.0));
        out[j - 1] = s * s;
    }
    return out;
}

std::vector<Op> kdd_expand(double phi) {
    static const double block_offsets[4] = {0.0, M_PI / 2, 0.0, M_PI / 2};
    static const double inner[5] = {M_PI / 6, 0.0, M_PI / 2, 0.0, M_PI / 6};
    std::vector<Op> out;
    for (double b : block_offsets)
        for (double f : inner)
            for (const auto& g : kdd_triple(phi + b + f).gates) out.push_back(g);
    return out;
}

DDSequence build_sequence(SeqName name, int n) {
    if (n == 0) n = default_repetitions(name);
    if (n < 1) throw std::invalid_argument("repetition count must be >= 1");
    DDSequence seq;
    seq.name = name;
    seq.n = n;
    switch (name) {
        case SeqName::HahnX:
            seq.pulses = {pulse_x()};
            break;
        case SeqName::HahnY:
            seq.pulses = {pulse_y()};
            break;
        case SeqName::Cp:
            for (int i = 0; i < n; ++i) seq.pulses.push_back(pulse_x());
            break;
        case SeqName::Cpmg:
            for (int i = 0; i < n; ++i) seq.pulses.push_back(pulse_y());
            break;
        case SeqName::Xy4:
            for (int i = 0; i < n; ++i)
                for (auto p : {pulse_x(), pulse_y(), pulse_x(), pulse_y()})
                    seq.pulses.push_back(std::move(p));
            break;
        case SeqName::Xy8:
            for (int i = 0; i < n; ++i)
                for (auto p : {pulse_x(), pulse_y(), pulse_x(), pulse_y(), pulse_y(), pulse_x(),
                               pulse_y(), pulse_x()})
                    seq.pulses.push_back(std::move(p));
            break;
        case SeqName::Xy16:
            for (int i = 0; i < n; ++i) {
                for (auto p : {pulse_x(), pulse_y(), pulse_x(), pulse_y(), pulse_y(), pulse_x(),
                               pulse_y(), pulse_x()})
                    seq.pulses.push_back(std::move(p));
                for (auto p : {pulse_x_inv(), pulse_y_inv(), pulse_x_inv(), pulse_y_inv(),
                               pulse_y_inv(), pulse_x_inv(), pulse_y_inv(), pulse_x_inv()})
                    seq.pulses.push_back(std::move(p));
            }
            break;
        case SeqName::UddX:
        case SeqName::UddY:
            seq.policy = SpacingPolicy::ExplicitPositions;
            seq.positions = udd_positions(n);
            for (int i = 0; i < n; ++i)
                seq.pulses.push_back(name == SeqName::UddX ? pulse_x() : pulse_y());
            break;
        case SeqName::Kdd: {
            for (int i = 0; i < n; ++i) {
                auto gates = kdd_expand(0.0);
                for (size_t g = 0; g + 2 < gates.size(); g += 3)
                    seq.pulses.push_back({{gates[g], gates[g + 1], gates[g + 2]}});
            }
            break;
        }
    }
    return seq;
}

namespace {

struct Entry {
    Op op;
    std::int64_t start = 0;
    std::int64_t dur = 0;
    int order = 0; // original position, insertions get fresh increasing values
    bool alive = true;
};

struct Workspace {
    std::vector<Entry> entries;
    int next_order = 0;

    static Workspace from(const ScheduledCircuit& s) {
        Workspace w;
        w.entries.reserve(s.size());
        for (size_t i = 0; i < s.size(); ++i)
            w.entries.push_back({s.circuit.ops[i], s.start[i], s.dur[i], static_cast<int>(i), true});
        w.next_order = static_cast<int>(s.size());
        return w;
    }

    void append(Op op, std::int64_t start, std::int64_t dur) {
        entries.push_back({std::move(op), start, dur, next_order++, true});
    }
};

bool run_member(const Op& op) { return is_single_qubit_gate(op); }

/// Contiguous single-qubit run touching time t on one side of a window.
/// Returns entry indices in time order; empty when the boundary op is not a
/// single-qubit gate chain or there is nothing there.
std::vector<int> collect_run(const Workspace& w, int qubit, std::int64_t t, bool leftward) {
    std::vector<int> run;
    std::int64_t edge = t;
    bool advanced = true;
    while (advanced) {
        advanced = false;
        // Gather every alive 1q op on the qubit flush against the current
        // edge. Anything else (2q gate, measure, delay) cannot extend the
        // chain and is simply not collected.
        std::vector<int> layer;
        for (size_t i = 0; i < w.entries.size(); ++i) {
            const Entry& e = w.entries[i];
            if (!e.alive || !run_member(e.op)) continue;
            if (e.op.qubits[0] != qubit) continue;
            std::int64_t boundary = leftward ? e.start + e.dur : e.start;
            if (boundary == edge) layer.push_back(static_cast<int>(i));
        }
        if (layer.empty()) break;
        std::int64_t next_edge = edge;
        for (int idx : layer) {
            run.push_back(idx);
            const Entry& e = w.entries[idx];
            std::int64_t far = leftward ? e.start : e.start + e.dur;
            next_edge = leftward ? std::min(next_edge, far) : std::max(next_edge, far);
        }
        if (next_edge != edge) {
            edge = next_edge;
            advanced = true;
        }
    }
    std::sort(run.begin(), run.end(), [&w](int a, int b) {
        if (w.entries[a].start != w.entries[b].start) return w.entries[a].start < w.entries[b].start;
        return w.entries[a].order < w.entries[b].order;
    });
    return run;
}

bool run_has_physical(const Workspace& w, const std::vector<int>& run) {
    for (int i : run)
        if (w.entries[i].dur > 0) return true;
    return false;
}

Mat2 run_product(const Workspace& w, const std::vector<int>& run) {
    Mat2 prod{1.0, 0.0, 0.0, 1.0};
    for (int i : run) {
        const Op& op = w.entries[i].op;
        prod = kernels::matmul2(kernels::gate1_matrix(op.kind, op.param), prod);
    }
    return prod;
}

/// Replaces a 1q run with the resynthesis of `merged`, reusing the original
/// physical pulse slots so no other op's start time moves.
void replace_run(Workspace& w, int qubit, const std::vector<int>& run, const Mat2& merged,
                 const DurationTable& durations) {
    std::vector<std::pair<std::int64_t, std::int64_t>> slots; // (start, dur) of physical pulses
    std::int64_t t_first = w.entries[run.front()].start;
    for (int i : run) {
        if (w.entries[i].dur > 0) slots.emplace_back(w.entries[i].start, w.entries[i].dur);
        w.entries[i].alive = false;
    }
    auto ops = resynthesize_1q(merged);
    size_t slot = 0;
    std::int64_t cursor = t_first;
    for (Op op : ops) {
        op.qubits[0] = qubit;
        std::int64_t d = durations.duration_of(op);
        if (d == 0) {
            w.append(std::move(op), cursor, 0);
            continue;
        }
        if (slot >= slots.size()) throw std::logic_error("1q merge produced more pulses than it had");
        if (d > slots[slot].second) throw std::logic_error("1q merge pulse longer than its slot");
        std::int64_t s = slots[slot].first;
        w.append(std::move(op), s, d);
        cursor = s + d;
        ++slot;
    }
}

struct Placement {
    std::int64_t start;
    const DDPulse* pulse;
};

std::int64_t pulse_duration(const DDPulse& p, const DurationTable& durations) {
    std::int64_t d = 0;
    for (const auto& g : p.gates) d += durations.duration_of(g);
    return d;
}

std::vector<Placement> place_equidistant(const DDSequence& seq, const IdleWindow& w,
                                         const std::vector<std::int64_t>& durs,
                                         std::int64_t slack) {
    const std::int64_t k = static_cast<std::int64_t>(seq.pulses.size());
    std::int64_t tau = slack / k;
    std::vector<Placement> out;
    std::int64_t t = w.start + tau / 2;
    for (size_t i = 0; i < seq.pulses.size(); ++i) {
        out.push_back({t, &seq.pulses[i]});
        t += durs[i] + tau;
    }
    return out;
}

std::vector<Placement> place_explicit(const DDSequence& seq, const IdleWindow& w,
                                      const std::vector<std::int64_t>& durs) {
    std::vector<std::int64_t> suffix(seq.pulses.size() + 1, 0);
    for (size_t i = seq.pulses.size(); i > 0; --i) suffix[i - 1] = suffix[i] + durs[i - 1];
    std::vector<Placement> out;
    std::int64_t cursor = w.start;
    const std::int64_t end = w.start + w.length;
    for (size_t i = 0; i < seq.pulses.size(); ++i) {
        double center = static_cast<double>(w.start) + seq.positions[i] * static_cast<double>(w.length);
        std::int64_t s = std::llround(center - static_cast<double>(durs[i]) / 2.0);
        s = std::max(s, cursor);
        s = std::min(s, end - suffix[i]);
        out.push_back({s, &seq.pulses[i]});
        cursor = s + durs[i];
    }
    return out;
}

} // namespace

bool hahn_absorbable(const ScheduledCircuit& sched, const IdleWindow& window) {
    Workspace w = Workspace::from(sched);
    auto left = collect_run(w, window.qubit, window.start, true);
    if (!left.empty() && run_has_physical(w, left)) return true;
    auto right = collect_run(w, window.qubit, window.start + window.length, false);
    return !right.empty() && run_has_physical(w, right);
}

std::pair<ScheduledCircuit, InsertionReport> insert_dd(const ScheduledCircuit& sched,
                                                       const DDSequence& seq,
                                                       const DurationTable& durations) {
    if (seq.pulses.empty()) throw std::invalid_argument("empty DD sequence");
    InsertionReport report;
    Workspace work = Workspace::from(sched);

    std::vector<std::int64_t> durs(seq.pulses.size());
    std::int64_t total_pulse = 0;
    for (size_t i = 0; i < seq.pulses.size(); ++i) {
        durs[i] = pulse_duration(seq.pulses[i], durations);
        total_pulse += durs[i];
    }
    const bool needs_absorb = seq.needs_absorption();
    Mat2 net = seq.net_unitary();
    Mat2 net_dag = kernels::dagger2(net);

    auto windows = idle_windows(sched);
    report.windows_considered = static_cast<int>(windows.size());

    for (const auto& w : windows) {
        WindowOutcome outcome;
        outcome.window = w;
        const std::int64_t slack = w.length - total_pulse;
        if (slack <= 0) {
            outcome.action = WindowOutcome::Action::TooShort;
            ++report.windows_skipped_too_short;
            report.details.push_back(outcome);
            continue;
        }
        std::vector<int> absorb_run;
        bool absorb_left = true;
        if (needs_absorb) {
            auto left = collect_run(work, w.qubit, w.start, true);
            if (!left.empty() && run_has_physical(work, left)) {
                absorb_run = std::move(left);
            } else {
                auto right = collect_run(work, w.qubit, w.start + w.length, false);
                if (!right.empty() && run_has_physical(work, right)) {
                    absorb_run = std::move(right);
                    absorb_left = false;
                } else {
                    outcome.action = WindowOutcome::Action::Unabsorbable;
                    ++report.hahn_skipped_unabsorbable;
                    report.details.push_back(outcome);
                    continue;
                }
            }
        }
        auto placements = seq.policy == SpacingPolicy::EquidistantSymmetric
                              ? place_equidistant(seq, w, durs, slack)
                              : place_explicit(seq, w, durs);
        // Delays covered by the window become real pulses plus implicit idle.
        for (auto& e : work.entries) {
            if (!e.alive || e.op.kind != GateKind::Delay || e.op.qubits[0] != w.qubit) continue;
            if (e.start >= w.start && e.start + e.dur <= w.start + w.length) e.alive = false;
        }
        // Merge the compensating inverse before appending pulses: a merge op
        // coincident with a flush pulse at the window edge must sort first.
        if (needs_absorb) {
            Mat2 prod = run_product(work, absorb_run);
            Mat2 merged = absorb_left ? kernels::matmul2(net_dag, prod)
                                      : kernels::matmul2(prod, net_dag);
            replace_run(work, w.qubit, absorb_run, merged, durations);
        }
        for (const auto& pl : placements) {
            std::int64_t t = pl.start;
            for (Op g : pl.pulse->gates) {
                g.qubits[0] = w.qubit;
                std::int64_t d = durations.duration_of(g);
                work.append(std::move(g), t, d);
                t += d;
            }
        }
        outcome.action = WindowOutcome::Action::Filled;
        outcome.pulses_inserted = seq.pulse_count();
        ++report.windows_filled;
        report.details.push_back(outcome);
    }

    // Rebuild in time order; ties resolved by insertion order so virtual RZ
    // dressing stays attached to its pulse.
    std::vector<const Entry*> alive;
    for (const auto& e : work.entries)
        if (e.alive) alive.push_back(&e);
    std::sort(alive.begin(), alive.end(), [](const Entry* a, const Entry* b) {
        if (a->start != b->start) return a->start < b->start;
        return a->order < b->order;
    });
    ScheduledCircuit out;
    out.circuit = Circuit(sched.circuit.num_qubits, sched.circuit.name);
    out.total_duration = sched.total_duration;
    for (const Entry* e : alive) {
        out.circuit.ops.push_back(e->op);
        out.start.push_back(e->start);
        out.dur.push_back(e->dur);
    }
    out.validate();
    return {std::move(out), std::move(report)};
}

std::string insertion_report_to_json(const InsertionReport& r) {
    nlohmann::json j;
    j["windows_considered"] = r.windows_considered;
    j["windows_filled"] = r.windows_filled;
    j["windows_skipped_too_short"] = r.windows_skipped_too_short;
    j["hahn_skipped_unabsorbable"] = r.hahn_skipped_unabsorbable;
    j["details"] = nlohmann::json::array();
    for (const auto& d : r.details) {
        const char* action = d.action == WindowOutcome::Action::Filled ? "filled"
                             : d.action == WindowOutcome::Action::TooShort ? "too_short"
                                                                           : "unabsorbable";
        j["details"].push_back({{"qubit", d.window.qubit},
                                {"start", d.window.start},
                                {"length", d.window.length},
                                {"action", action},
                                {"pulses", d.pulses_inserted}});
    }
    return j.dump();
}

} // namespace ddforge
