#pragma once

// Shared helpers for the test suites: random circuit generation, inverse
// circuits, and a couple of hand-built matrix oracles kept independent of
// the library's gate kernels.

#include <cmath>
#include <complex>
#include <vector>

#include "ddforge/circuit.hpp"
#include "ddforge/rng.hpp"
#include "ddforge/unitary.hpp"

namespace testutil {

using ddforge::Circuit;
using ddforge::GateKind;
using ddforge::Op;
using ddforge::Rng;
using ddforge::Unitary;
using ddforge::cplx;

/// Random circuit over the full supported gate set (no Measure).
inline Circuit random_circuit(Rng& rng, int num_qubits, int num_gates,
                              bool two_qubit_rotations = true) {
    Circuit c(num_qubits, "random");
    for (int i = 0; i < num_gates; ++i) {
        double angle = (rng.uniform() * 2 - 1) * 2 * M_PI;
        int q = static_cast<int>(rng.uniform_below(num_qubits));
        int kind = static_cast<int>(rng.uniform_below(two_qubit_rotations && num_qubits > 1 ? 10 : 6));
        switch (kind) {
            case 0: c.x(q); break;
            case 1: c.sx(q); break;
            case 2: c.rz(q, angle); break;
            case 3: c.h(q); break;
            case 4: c.rx(q, angle); break;
            case 5: c.y(q); break;
            default: {
                int r = static_cast<int>(rng.uniform_below(num_qubits - 1));
                if (r >= q) ++r;
                if (kind == 6) c.cx(q, r);
                if (kind == 7) c.cz(q, r);
                if (kind == 8) c.rzz(q, r, angle);
                if (kind == 9) c.cp(q, r, angle);
                break;
            }
        }
    }
    return c;
}

/// Gate-by-gate inverse, up to global phase (SX inverse realized as
/// RZ(pi) SX RZ(pi)).
inline Circuit inverse_circuit(const Circuit& c) {
    Circuit inv(c.num_qubits, c.name + "-inv");
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        const Op& op = *it;
        switch (op.kind) {
            case GateKind::X:
            case GateKind::Y:
            case GateKind::H:
            case GateKind::CX:
            case GateKind::CZ:
            case GateKind::Delay:
            case GateKind::Barrier:
                inv.ops.push_back(op);
                break;
            case GateKind::SX:
                inv.rz(op.qubits[0], M_PI);
                inv.sx(op.qubits[0]);
                inv.rz(op.qubits[0], M_PI);
                break;
            case GateKind::RZ:
            case GateKind::RX:
            case GateKind::RZX:
            case GateKind::RZZ:
            case GateKind::CP:
                inv.ops.push_back({op.kind, op.qubits, -op.param});
                break;
            case GateKind::Measure:
                throw std::invalid_argument("cannot invert a measurement");
        }
    }
    return inv;
}

inline Unitary mat2x2(cplx a, cplx b, cplx c, cplx d) {
    Unitary u(2);
    u.at(0, 0) = a;
    u.at(0, 1) = b;
    u.at(1, 0) = c;
    u.at(1, 1) = d;
    return u;
}

inline Unitary pauli_x() { return mat2x2(0, 1, 1, 0); }
inline Unitary pauli_y() { return mat2x2(0, cplx(0, -1), cplx(0, 1), 0); }
inline Unitary pauli_z() { return mat2x2(1, 0, 0, -1); }
inline Unitary hadamard() {
    double r = 1 / std::sqrt(2.0);
    return mat2x2(r, r, r, -r);
}
inline Unitary eye(int d) { return Unitary::identity(d); }

} // namespace testutil
