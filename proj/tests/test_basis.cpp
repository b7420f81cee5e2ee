#include <doctest.h>

#include <cmath>

#include "ddforge/basis.hpp"
#include "ddforge/unitary.hpp"
#include "test_util.hpp"

using namespace ddforge;

namespace {
bool only_basis_gates(const Circuit& c, BasisSet basis) {
    for (const auto& op : c.ops) {
        switch (op.kind) {
            case GateKind::RZ:
            case GateKind::SX:
            case GateKind::X:
            case GateKind::Delay:
            case GateKind::Barrier:
            case GateKind::Measure:
                break;
            case GateKind::CX:
                if (basis != BasisSet::CxBasis) return false;
                break;
            case GateKind::RZX:
                if (basis != BasisSet::RzxBasis) return false;
                break;
            default:
                return false;
        }
    }
    return true;
}
} // namespace

TEST_CASE("H resynthesizes to exactly RZ(pi/2), SX, RZ(pi/2)") {
    Circuit c(1);
    c.h(0);
    Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
    REQUIRE(out.ops.size() == 3);
    CHECK(out.ops[0].kind == GateKind::RZ);
    CHECK(out.ops[0].param == doctest::Approx(M_PI / 2));
    CHECK(out.ops[1].kind == GateKind::SX);
    CHECK(out.ops[2].kind == GateKind::RZ);
    CHECK(out.ops[2].param == doctest::Approx(M_PI / 2));
    CHECK(equiv_up_to_phase(unitary_of(c), unitary_of(out), 1e-12));
}

TEST_CASE("RZZ(pi/3) in the CX basis matches the CX, RZ, CX shape") {
    Circuit c(2);
    c.rzz(0, 1, M_PI / 3);
    Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
    REQUIRE(out.ops.size() == 3);
    CHECK(out.ops[0].kind == GateKind::CX);
    CHECK(out.ops[1].kind == GateKind::RZ);
    CHECK(out.ops[1].qubits[0] == 1); // on the target
    CHECK(out.ops[1].param == doctest::Approx(M_PI / 3));
    CHECK(out.ops[2].kind == GateKind::CX);
    CHECK(equiv_up_to_phase(unitary_of(c), unitary_of(out), 1e-12));
}

TEST_CASE("CX passes through the CX basis untouched") {
    Circuit c(2);
    c.cx(0, 1);
    Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
    REQUIRE(out.ops.size() == 1);
    CHECK(out.ops[0].kind == GateKind::CX);
}

TEST_CASE("single gates survive resynthesis in canonical form") {
    SUBCASE("X stays X") {
        Circuit c(1);
        c.x(0);
        Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
        REQUIRE(out.ops.size() == 1);
        CHECK(out.ops[0].kind == GateKind::X);
    }
    SUBCASE("SX stays SX") {
        Circuit c(1);
        c.sx(0);
        Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
        REQUIRE(out.ops.size() == 1);
        CHECK(out.ops[0].kind == GateKind::SX);
    }
    SUBCASE("H H cancels to nothing") {
        Circuit c(1);
        c.h(0).h(0);
        Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
        CHECK(out.ops.empty());
    }
}

TEST_CASE("1000 random circuits decompose to both bases unitary-equivalently") {
    Rng rng(20260808);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(rng.uniform_below(5));
        int gates = 1 + static_cast<int>(rng.uniform_below(30));
        Circuit c = testutil::random_circuit(rng, n, gates);
        Unitary ref = unitary_of(c);
        BasisSet basis = trial % 2 == 0 ? BasisSet::CxBasis : BasisSet::RzxBasis;
        Circuit out = decompose_to_basis(c, basis);
        CHECK(only_basis_gates(out, basis));
        CHECK(equiv_up_to_phase(ref, unitary_of(out), 1e-9));
    }
}

TEST_CASE("merged 1q runs use at most two pulses") {
    Rng rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        Circuit c = testutil::random_circuit(rng, 1, 12, false);
        Circuit out = decompose_to_basis(c, BasisSet::CxBasis);
        int pulses = 0;
        for (const auto& op : out.ops)
            if (op.kind == GateKind::SX || op.kind == GateKind::X) ++pulses;
        CHECK(pulses <= 2);
        CHECK(equiv_up_to_phase(unitary_of(c), unitary_of(out), 1e-10));
    }
}

TEST_CASE("unknown gate names are rejected") {
    CHECK_THROWS(gate_from_name("cnotty"));
}
