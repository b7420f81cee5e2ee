#pragma once

#include "ddforge/circuit.hpp"

namespace ddforge {

/// Echoed cross-resonance realization of RZX(theta) on (control, target):
/// RZX(theta/2), X on control, RZX(-theta/2), X on control (time order).
/// The product equals RZX(theta) exactly, with no residual phase.
std::vector<Op> echoed_rzx(int control, int target, double theta);

/// Pulse-efficient rewrite onto the {RZ, SX, X, RZX} basis. Every RZZ becomes
/// a Hadamard-conjugated echoed RZX, every CX its echoed-RZX(pi/2) form, and
/// single-qubit runs are merged so at most one 1q block separates consecutive
/// RZX pulses. Angles are folded into (-pi, pi] first. Unitary-equivalent up
/// to global phase.
Circuit rewrite_to_rzx(const Circuit& c);

} // namespace ddforge
