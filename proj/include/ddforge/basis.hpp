#pragma once

#include <array>
#include <complex>

#include "ddforge/circuit.hpp"

namespace ddforge {

enum class BasisSet {
    CxBasis,  // {RZ, SX, X, CX}
    RzxBasis, // {RZ, SX, X, RZX}
};

/// Gate list realizing a single-qubit unitary (given as a row-major 2x2)
/// in RZ/SX/X form, up to global phase. Emits at most two physical pulses
/// (RZ-SX-RZ-SX-RZ worst case); identity collapses to an empty list.
/// Ops come out in time order on qubit 0; retarget before use.
std::vector<Op> resynthesize_1q(const std::array<std::complex<double>, 4>& u);

/// Number of nonzero-duration pulses (SX/X) a resynthesized form uses.
int pulse_count_1q(const std::array<std::complex<double>, 4>& u);

/// Rewrites a circuit onto the requested basis. Two-qubit gates are expanded
/// (CX basis: CZ/RZZ/RZX/CP via CX; RZX basis: via echoed RZX), then maximal
/// single-qubit runs are merged and resynthesized. Delay/Barrier/Measure pass
/// through. Unitary-equivalent up to global phase.
Circuit decompose_to_basis(const Circuit& c, BasisSet basis);

} // namespace ddforge
