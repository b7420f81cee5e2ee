#include <doctest.h>

#include <cmath>

#include "ddforge/basis.hpp"
#include "ddforge/benchmarks.hpp"
#include "ddforge/dd.hpp"
#include "ddforge/unitary.hpp"
#include "test_util.hpp"

using namespace ddforge;

static const DurationTable kDt = DurationTable::defaults();

namespace {

Unitary to_unitary(const std::array<cplx, 4>& m) {
    return testutil::mat2x2(m[0], m[1], m[2], m[3]);
}

/// Schedule with one idle window of the requested length on qubit 0,
/// bounded by X gates.
ScheduledCircuit window_fixture(std::int64_t window_len) {
    Circuit c(1);
    c.x(0).delay(0, window_len).x(0);
    return schedule_asap(c, kDt);
}

Circuit time_ordered(const ScheduledCircuit& s) {
    Circuit c(s.circuit.num_qubits);
    c.ops = s.circuit.ops;
    return c;
}

} // namespace

TEST_CASE("catalog structure") {
    SUBCASE("XY4 is X-Y-X-Y with net -I exactly") {
        DDSequence s = build_sequence(SeqName::Xy4);
        REQUIRE(s.pulse_count() == 4);
        auto net = s.net_unitary();
        CHECK(net[0] == cplx(-1, 0));
        CHECK(net[3] == cplx(-1, 0));
        CHECK(net[1] == cplx(0, 0));
        CHECK(net[2] == cplx(0, 0));
    }
    SUBCASE("CP defaults to X-X with net I") {
        DDSequence s = build_sequence(SeqName::Cp);
        REQUIRE(s.pulse_count() == 2);
        CHECK(s.pulses[0].gates[0].kind == GateKind::X);
        CHECK(equiv_up_to_phase(to_unitary(s.net_unitary()), Unitary::identity(2), 1e-12));
    }
    SUBCASE("CPMG is Y-Y") {
        DDSequence s = build_sequence(SeqName::Cpmg);
        REQUIRE(s.pulse_count() == 2);
        CHECK(s.pulses[0].gates[0].kind == GateKind::Y);
    }
    SUBCASE("pulse counts match the catalog") {
        CHECK(build_sequence(SeqName::Xy8).pulse_count() == 8);
        CHECK(build_sequence(SeqName::Xy16).pulse_count() == 16);
        CHECK(build_sequence(SeqName::UddX).pulse_count() == 8);
        CHECK(build_sequence(SeqName::Kdd).pulse_count() == 20);
        CHECK(build_sequence(SeqName::HahnX).pulse_count() == 1);
    }
    SUBCASE("every non-Hahn catalog entry nets identity up to phase") {
        for (SeqName name : sequence_catalog()) {
            if (name == SeqName::HahnX || name == SeqName::HahnY) continue;
            DDSequence s = build_sequence(name);
            CHECK_MESSAGE(
                equiv_up_to_phase(to_unitary(s.net_unitary()), Unitary::identity(2), 1e-10),
                seq_name(name));
            CHECK_FALSE(s.needs_absorption());
        }
        CHECK(build_sequence(SeqName::HahnX).needs_absorption());
        CHECK(build_sequence(SeqName::HahnY).needs_absorption());
    }
    SUBCASE("bad arguments are rejected") {
        CHECK_THROWS(build_sequence(SeqName::Cp, -3));
        CHECK_THROWS(seq_from_name("xy32"));
    }
}

TEST_CASE("udd_positions") {
    SUBCASE("n=1 is the Hahn point") {
        auto p = udd_positions(1);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == doctest::Approx(0.5));
    }
    SUBCASE("n=2 is quarter points") {
        auto p = udd_positions(2);
        CHECK(p[0] == doctest::Approx(0.25));
        CHECK(p[1] == doctest::Approx(0.75));
    }
    SUBCASE("n=8 matches the closed form and its symmetry") {
        auto p = udd_positions(8);
        REQUIRE(p.size() == 8);
        double s4 = std::sin(4.0 * M_PI / 18.0);
        CHECK(p[3] == doctest::Approx(s4 * s4).epsilon(1e-14));
        for (int j = 0; j < 8; ++j) {
            CHECK(p[j] + p[7 - j] == doctest::Approx(1.0).epsilon(1e-14));
            if (j > 0) CHECK(p[j] > p[j - 1]);
        }
    }
}

TEST_CASE("kdd_expand") {
    auto gates = kdd_expand(0.0);
    CHECK(gates.size() == 60);
    SUBCASE("phi=0 triple is RZ(0), RX(-pi), RZ(0), i.e. X up to phase") {
        // second triple of the first block has offset 0
        Circuit c(1);
        c.ops = {gates[3], gates[4], gates[5]};
        CHECK(equiv_up_to_phase(unitary_of(c), testutil::pauli_x(), 1e-12));
    }
    SUBCASE("net unitary of the full expansion is identity up to phase") {
        Circuit c(1);
        c.ops = gates;
        CHECK(equiv_up_to_phase(unitary_of(c), Unitary::identity(2), 1e-10));
    }
    SUBCASE("KDD sequence is 20 pulses / 60 gates") {
        DDSequence s = build_sequence(SeqName::Kdd);
        CHECK(s.pulse_count() == 20);
        CHECK(s.gate_count() == 60);
    }
}

TEST_CASE("equidistant insertion arithmetic in a 928 dt window") {
    // slack = 928 - 4*160 = 288, tau = 72: slacks 36 | 72 | 72 | 72 | 36.
    ScheduledCircuit s = window_fixture(928);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::Xy4), kDt);
    CHECK(report.windows_considered == 1);
    CHECK(report.windows_filled == 1);
    std::vector<std::int64_t> pulse_starts;
    for (size_t i = 0; i < out.size(); ++i)
        if ((out.circuit.ops[i].kind == GateKind::X || out.circuit.ops[i].kind == GateKind::Y) &&
            out.start[i] >= 160 && out.start[i] + out.dur[i] <= 160 + 928)
            pulse_starts.push_back(out.start[i]);
    REQUIRE(pulse_starts.size() == 4);
    // window spans [160, 1088); tau/2 = 36
    CHECK(pulse_starts[0] == 160 + 36);
    CHECK(pulse_starts[1] == 160 + 36 + 160 + 72);
    CHECK(pulse_starts[2] == 160 + 36 + 2 * (160 + 72));
    CHECK(pulse_starts[3] == 160 + 36 + 3 * (160 + 72));
    CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out)), 1e-10));
}

TEST_CASE("windows shorter than the pulse train are skipped") {
    ScheduledCircuit s = window_fixture(300);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::Xy16), kDt);
    CHECK(report.windows_filled == 0);
    CHECK(report.windows_skipped_too_short == 1);
    CHECK(out.size() == s.size());
}

TEST_CASE("a window exactly equal to the pulse train is still too short") {
    // Zero slack leaves no room for decoupling delays.
    ScheduledCircuit s = window_fixture(160);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::HahnX), kDt);
    CHECK(report.windows_filled == 0);
    CHECK(report.windows_skipped_too_short == 1);
}

TEST_CASE("UDD insertion centers pulses at the Uhrig positions") {
    const std::int64_t len = 4800;
    ScheduledCircuit s = window_fixture(len);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::UddX, 8), kDt);
    CHECK(report.windows_filled == 1);
    std::vector<std::int64_t> centers;
    for (size_t i = 0; i < out.size(); ++i)
        if (out.circuit.ops[i].kind == GateKind::X && out.start[i] > 160 &&
            out.start[i] + out.dur[i] <= 160 + len)
            centers.push_back(out.start[i] + 80);
    REQUIRE(centers.size() == 8);
    auto pos = udd_positions(8);
    for (int j = 0; j < 8; ++j) {
        double ideal = 160.0 + pos[j] * static_cast<double>(len);
        CHECK(std::abs(static_cast<double>(centers[j]) - ideal) <= 1.0);
    }
}

TEST_CASE("insert_dd preserves start times and total duration") {
    Rng rng(8080);
    for (SeqName name : sequence_catalog()) {
        Circuit c = decompose_to_basis(testutil::random_circuit(rng, 4, 24), BasisSet::CxBasis);
        ScheduledCircuit s = schedule_asap(c, kDt);
        auto [out, report] = insert_dd(s, build_sequence(name), kDt);
        CHECK(out.total_duration == s.total_duration);
        // every original gate keeps its slot (delays may be consumed)
        for (size_t i = 0; i < s.size(); ++i) {
            const Op& op = s.circuit.ops[i];
            if (op.kind == GateKind::Delay) continue;
            if (report.windows_filled > 0 && is_single_qubit_gate(op)) continue; // may be rewritten by absorption
            bool found = false;
            for (size_t j = 0; j < out.size(); ++j)
                found |= out.start[j] == s.start[i] && out.circuit.ops[j].kind == op.kind &&
                         out.circuit.ops[j].qubits == op.qubits;
            CHECK_MESSAGE(found, "op ", i, " lost under ", seq_name(name));
        }
    }
}

TEST_CASE("hahn absorption") {
    SUBCASE("window bounded by SX on the right is absorbable") {
        Circuit c(2);
        c.cx(0, 1).delay(0, 1000).sx(0);
        ScheduledCircuit s = schedule_asap(c, kDt);
        auto windows = idle_windows(s);
        REQUIRE(windows.size() == 1);
        CHECK(hahn_absorbable(s, windows[0]));
    }
    SUBCASE("window bounded by CX on both sides is not absorbable") {
        Circuit c(3);
        c.cx(0, 1).cx(1, 2).cx(0, 1);
        ScheduledCircuit s = schedule_asap(c, kDt);
        auto windows = idle_windows(s);
        REQUIRE(!windows.empty());
        bool q0_window = false;
        for (const auto& w : windows) {
            if (w.qubit != 0) continue;
            q0_window = true;
            CHECK_FALSE(hahn_absorbable(s, w));
        }
        CHECK(q0_window);
    }
    SUBCASE("measure and two-qubit boundaries offer nothing to merge into") {
        Circuit c(2);
        c.cx(0, 1).cx(0, 1).measure(0).measure(1);
        ScheduledCircuit s = schedule_asap(c, kDt);
        for (const auto& w : idle_windows(s)) CHECK_FALSE(hahn_absorbable(s, w));
    }
    SUBCASE("hahn fills an absorbable window and stays unitary-equivalent") {
        Circuit c(1);
        c.sx(0).delay(0, 1000).sx(0);
        ScheduledCircuit s = schedule_asap(c, kDt);
        auto [out, report] = insert_dd(s, build_sequence(SeqName::HahnX), kDt);
        CHECK(report.windows_filled == 1);
        CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out)), 1e-10));
        CHECK(out.total_duration == s.total_duration);
    }
    SUBCASE("hahn skips and counts unabsorbable windows") {
        Circuit c(3);
        c.cx(0, 1).cx(1, 2).cx(0, 1);
        ScheduledCircuit s = schedule_asap(c, kDt);
        auto [out, report] = insert_dd(s, build_sequence(SeqName::HahnY), kDt);
        CHECK(report.hahn_skipped_unabsorbable > 0);
        CHECK(report.windows_filled + report.windows_skipped_too_short +
                  report.hahn_skipped_unabsorbable ==
              report.windows_considered);
        CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out)), 1e-10));
    }
}

TEST_CASE("insertion preserves the unitary for 500 random circuits x catalog") {
    Rng rng(0xDD);
    int cases = 0;
    while (cases < 500) {
        int n = 2 + static_cast<int>(rng.uniform_below(4));
        Circuit c = decompose_to_basis(testutil::random_circuit(rng, n, 18), BasisSet::CxBasis);
        ScheduledCircuit s = schedule_asap(c, kDt);
        SeqName name = sequence_catalog()[cases % 10];
        auto [out, report] = insert_dd(s, build_sequence(name), kDt);
        Circuit a = time_ordered(s), b = time_ordered(out);
        CHECK(equiv_up_to_phase(unitary_of(a), unitary_of(b), 1e-9));
        ++cases;
    }
}

TEST_CASE("report counts add up") {
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        Circuit c = decompose_to_basis(testutil::random_circuit(rng, 4, 20), BasisSet::CxBasis);
        ScheduledCircuit s = schedule_asap(c, kDt);
        SeqName name = sequence_catalog()[trial % 10];
        auto [out, report] = insert_dd(s, build_sequence(name), kDt);
        CHECK(report.windows_filled + report.windows_skipped_too_short +
                  report.hahn_skipped_unabsorbable ==
              report.windows_considered);
        CHECK(static_cast<int>(report.details.size()) == report.windows_considered);
    }
}

TEST_CASE("insertion report serializes") {
    ScheduledCircuit s = window_fixture(928);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::Cp), kDt);
    std::string j = insertion_report_to_json(report);
    CHECK(j.find("windows_filled") != std::string::npos);
    CHECK(j.find("\"filled\"") != std::string::npos);
}

TEST_CASE("kdd_expand with a base phase still nets identity") {
    for (double phi : {0.3, -1.2, M_PI / 5}) {
        Circuit c(1);
        c.ops = kdd_expand(phi);
        CHECK(c.ops.size() == 60);
        CHECK(equiv_up_to_phase(unitary_of(c), Unitary::identity(2), 1e-10));
    }
}

TEST_CASE("odd-n UDD needs absorption and stays equivalent when it can merge") {
    DDSequence udd3 = build_sequence(SeqName::UddX, 3);
    CHECK(udd3.needs_absorption());
    Circuit c(1);
    c.sx(0).delay(0, 2000).sx(0);
    ScheduledCircuit s = schedule_asap(c, kDt);
    auto [out, report] = insert_dd(s, udd3, kDt);
    CHECK(report.windows_filled == 1);
    CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out)), 1e-10));

    Circuit blocked(2);
    blocked.cx(0, 1).cx(1, 0).cx(0, 1);
    ScheduledCircuit sb = schedule_asap(blocked, kDt);
    auto [out2, report2] = insert_dd(sb, udd3, kDt);
    CHECK(report2.windows_filled == 0);
    CHECK(report2.hahn_skipped_unabsorbable == report2.windows_considered -
                                                   report2.windows_skipped_too_short);
}

TEST_CASE("hahn with a flush pulse at the window edge keeps the unitary") {
    // slack of exactly 1 dt puts the echo pulse flush against the window
    // start; the absorbed compensation must still precede it in time order.
    Circuit c(1);
    c.sx(0).delay(0, 161).sx(0);
    ScheduledCircuit s = schedule_asap(c, kDt);
    auto [out, report] = insert_dd(s, build_sequence(SeqName::HahnX), kDt);
    REQUIRE(report.windows_filled == 1);
    CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out)), 1e-10));
    auto [out2, report2] = insert_dd(s, build_sequence(SeqName::HahnY), kDt);
    REQUIRE(report2.windows_filled == 1);
    CHECK(equiv_up_to_phase(unitary_of(time_ordered(s)), unitary_of(time_ordered(out2)), 1e-10));
}

TEST_CASE("net-identity sequences preserve every pre-existing op slot exactly") {
    Rng rng(909090);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = decompose_to_basis(testutil::random_circuit(rng, 4, 22), BasisSet::CxBasis);
        ScheduledCircuit s = schedule_asap(c, kDt);
        SeqName name = sequence_catalog()[2 + trial % 5]; // cp..xy16, all net identity
        auto [out, report] = insert_dd(s, build_sequence(name), kDt);
        for (size_t i = 0; i < s.size(); ++i) {
            const Op& op = s.circuit.ops[i];
            if (op.kind == GateKind::Delay) continue;
            bool found = false;
            for (size_t j = 0; j < out.size(); ++j)
                found |= out.start[j] == s.start[i] && out.dur[j] == s.dur[i] &&
                         out.circuit.ops[j].kind == op.kind && out.circuit.ops[j].qubits == op.qubits &&
                         out.circuit.ops[j].param == op.param;
            REQUIRE(found);
        }
    }
}
