#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ddforge/schedule.hpp"

namespace ddforge {

enum class SeqName { HahnX, HahnY, Cp, Cpmg, Xy4, Xy8, Xy16, UddX, UddY, Kdd };

const char* seq_name(SeqName s);
SeqName seq_from_name(const std::string& name);
std::vector<SeqName> sequence_catalog();

/// One decoupling pulse: a single physical rotation, possibly dressed with
/// virtual RZ gates that are emitted back-to-back with it (zero spacing).
/// Gates are prototypes on qubit 0, retargeted at insertion time.
struct DDPulse {
    std::vector<Op> gates;
};

enum class SpacingPolicy { EquidistantSymmetric, ExplicitPositions };

struct DDSequence {
    SeqName name = SeqName::Xy4;
    int n = 1; // basic-cycle repetition count
    SpacingPolicy policy = SpacingPolicy::EquidistantSymmetric;
    std::vector<DDPulse> pulses;
    std::vector<double> positions; // ExplicitPositions only, in (0,1)

    /// Net unitary of the pulse list (2x2), time order.
    std::array<std::complex<double>, 4> net_unitary() const;
    /// True when the net unitary is not the identity up to phase, so the
    /// inverse has to be absorbed into a neighboring single-qubit gate.
    bool needs_absorption() const;
    int pulse_count() const { return static_cast<int>(pulses.size()); }
    int gate_count() const;
};

int default_repetitions(SeqName s);

/// Sequence construction per catalog entry; n <= 0 selects the default
/// repetition count (CP/CPMG 2, XY4/XY8/XY16 1, UDD 8, KDD 1).
DDSequence build_sequence(SeqName name, int n = 0);

/// Uhrig positions sin^2(pi j / (2n+2)), j = 1..n. Strictly increasing and
/// symmetric about 1/2.
std::vector<double> udd_positions(int n);

/// Full KDD cycle (KDD_phi, KDD_{phi+pi/2})^2 with the base phase added:
/// 20 composite pi pulses, each emitted as RZ(f), RX(-pi), RZ(-f) with zero
/// internal spacing; 60 gates total, prototypes on qubit 0.
std::vector<Op> kdd_expand(double phi);

struct WindowOutcome {
    enum class Action { Filled, TooShort, Unabsorbable };
    IdleWindow window;
    Action action = Action::Filled;
    int pulses_inserted = 0;
};

struct InsertionReport {
    int windows_considered = 0;
    int windows_filled = 0;
    int windows_skipped_too_short = 0;
    int hahn_skipped_unabsorbable = 0;
    std::vector<WindowOutcome> details;
};

std::string insertion_report_to_json(const InsertionReport& r);

/// True when the window borders a single-qubit gate the compensating inverse
/// of a non-identity sequence can be absorbed into (left side preferred).
bool hahn_absorbable(const ScheduledCircuit& sched, const IdleWindow& window);

/// Inserts the sequence into every feasible idle window. A window is feasible
/// when its slack (length minus total pulse duration) is strictly positive
/// and, for sequences whose net unitary is not the identity, a neighboring
/// single-qubit gate can absorb the inverse. Equidistant sequences are placed
/// tau/2 | pulse | tau | ... | pulse | tau/2 with tau rounded down to integer
/// dt and the remainder appended to the final slack; explicit-position
/// sequences center pulse j at start + position_j * length, clamped to avoid
/// overlap. Delay ops covered by a filled window are removed. Infeasible
/// windows are counted, never fatal. Start times of pre-existing ops and the
/// total duration never change.
std::pair<ScheduledCircuit, InsertionReport> insert_dd(const ScheduledCircuit& sched,
                                                       const DDSequence& seq,
                                                       const DurationTable& durations);

} // namespace ddforge
