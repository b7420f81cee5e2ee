#pragma once

// Statevector gate kernels shared by the unitary oracle and the noise
// simulator. Multi-qubit gate matrices are in the *local* little-endian
// basis of the op's qubit list: local index = bit(qubits[0]) + 2*bit(qubits[1]).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "ddforge/circuit.hpp"

namespace ddforge::kernels {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;   // row-major 2x2
using Mat4 = std::array<cplx, 16>;  // row-major 4x4

inline Mat2 mat_rz(double t) {
    return {std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2)};
}

inline Mat2 mat_rx(double t) {
    cplx c = std::cos(t / 2), s = cplx(0, -1) * std::sin(t / 2);
    return {c, s, s, c};
}

inline Mat2 mat_ry(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return {c, -s, s, c};
}

inline Mat2 mat_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 mat_y() { return {0.0, cplx(0, -1), cplx(0, 1), 0.0}; }
inline Mat2 mat_z() { return {1.0, 0.0, 0.0, -1.0}; }
inline Mat2 mat_sx() {
    return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
}
inline Mat2 mat_h() {
    double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, -r};
}

inline Mat2 matmul2(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 dagger2(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

/// 2x2 matrix of a single-qubit gate. overrot scales the rotation angle of
/// physical pulses (X, Y, SX, RX) by (1 + overrot); RZ and H are untouched.
/// With overrot = 0 the exact canonical matrices are returned.
inline Mat2 gate1_matrix(GateKind k, double param, double overrot = 0.0) {
    bool noisy = overrot != 0.0;
    switch (k) {
        case GateKind::X: return noisy ? mat_rx(M_PI * (1 + overrot)) : mat_x();
        case GateKind::Y: return noisy ? mat_ry(M_PI * (1 + overrot)) : mat_y();
        case GateKind::SX: return noisy ? mat_rx(M_PI / 2 * (1 + overrot)) : mat_sx();
        case GateKind::RZ: return mat_rz(param);
        case GateKind::RX: return mat_rx(param * (1 + overrot));
        case GateKind::H: return mat_h();
        default: throw std::invalid_argument("not a single-qubit gate");
    }
}

/// 4x4 matrix of a two-qubit gate in the local basis described above.
inline Mat4 gate2_matrix(GateKind k, double param) {
    Mat4 m{};
    auto at = [&m](int r, int c) -> cplx& { return m[static_cast<size_t>(r) * 4 + c]; };
    switch (k) {
        case GateKind::CX: // control = qubits[0], target = qubits[1]
            at(0, 0) = 1;
            at(3, 1) = 1;
            at(2, 2) = 1;
            at(1, 3) = 1;
            return m;
        case GateKind::CZ:
            at(0, 0) = 1;
            at(1, 1) = 1;
            at(2, 2) = 1;
            at(3, 3) = -1;
            return m;
        case GateKind::RZZ: {
            cplx even = std::polar(1.0, -param / 2), odd = std::polar(1.0, param / 2);
            at(0, 0) = even;
            at(1, 1) = odd;
            at(2, 2) = odd;
            at(3, 3) = even;
            return m;
        }
        case GateKind::CP:
            at(0, 0) = 1;
            at(1, 1) = 1;
            at(2, 2) = 1;
            at(3, 3) = std::polar(1.0, param);
            return m;
        case GateKind::RZX: {
            // exp(-i t/2 Z(q0) X(q1)); generator flips bit(q1) with sign (-1)^bit(q0)
            cplx c = std::cos(param / 2);
            cplx is = cplx(0, 1) * std::sin(param / 2);
            at(0, 0) = c;
            at(1, 1) = c;
            at(2, 2) = c;
            at(3, 3) = c;
            at(0, 2) = -is;
            at(2, 0) = -is;
            at(1, 3) = is;
            at(3, 1) = is;
            return m;
        }
        default: throw std::invalid_argument("not a two-qubit gate");
    }
}

/// Applies a 2x2 matrix to qubit q of an n-qubit statevector.
inline void apply1(cplx* state, int n, int q, const Mat2& m) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cplx a0 = state[i], a1 = state[i | bit];
        state[i] = m[0] * a0 + m[1] * a1;
        state[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

/// Applies a diagonal phase pair (p0 on |0>, p1 on |1>) to qubit q.
inline void apply_phase(cplx* state, int n, int q, cplx p0, cplx p1) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < dim; ++i) state[i] *= (i & bit) ? p1 : p0;
}

/// Applies a 4x4 matrix to qubits (q0, q1) of an n-qubit statevector.
inline void apply2(cplx* state, int n, int q0, int q1, const Mat4& m) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & (b0 | b1)) continue;
        std::uint64_t i0 = i, i1 = i | b0, i2 = i | b1, i3 = i | b0 | b1;
        cplx a0 = state[i0], a1 = state[i1], a2 = state[i2], a3 = state[i3];
        state[i0] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
        state[i1] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
        state[i2] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
        state[i3] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
    }
}

/// Applies one circuit op (no noise) to a statevector. Delay/Barrier are
/// identity; Measure must be handled by the caller.
inline void apply_op(cplx* state, int n, const Op& op) {
    switch (op.kind) {
        case GateKind::Delay:
        case GateKind::Barrier:
            return;
        case GateKind::Measure:
            throw std::invalid_argument("apply_op cannot apply Measure");
        default:
            break;
    }
    if (is_single_qubit_gate(op)) {
        apply1(state, n, op.qubits[0], gate1_matrix(op.kind, op.param));
    } else {
        apply2(state, n, op.qubits[0], op.qubits[1], gate2_matrix(op.kind, op.param));
    }
}

} // namespace ddforge::kernels
