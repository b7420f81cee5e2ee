#include "ddforge/basis.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "ddforge/rzx.hpp"
#include "state_kernels.hpp"

namespace ddforge {

namespace {

using kernels::Mat2;
using kernels::cplx;

constexpr double kEps = 1e-12;

double norm_pi(double a) {
    // to (-pi, pi]
    a = std::fmod(a, 2 * M_PI);
    if (a <= -M_PI) a += 2 * M_PI;
    if (a > M_PI) a -= 2 * M_PI;
    return a;
}

struct EulerZyz {
    double p = 0, t = 0, r = 0; // U ~ RZ(p) RY(t) RZ(r), t in [0, pi]
};

/// ZYZ Euler angles of a 2x2 unitary, ignoring global phase.
EulerZyz euler_zyz(Mat2 u) {
    // Normalize to det 1 so the RZ(p) RY(t) RZ(r) template applies directly.
    cplx det = u[0] * u[3] - u[1] * u[2];
    cplx scale = std::sqrt(det);
    for (auto& v : u) v /= scale;
    EulerZyz e;
    double c = std::abs(u[0]);
    double s = std::abs(u[2]);
    e.t = 2.0 * std::atan2(s, c);
    if (s < kEps) {
        // diagonal: RZ only
        e.p = norm_pi(-2.0 * std::arg(u[0]));
        e.r = 0;
    } else if (c < kEps) {
        // anti-diagonal: t = pi
        e.p = norm_pi(2.0 * std::arg(u[2]));
        e.r = 0;
    } else {
        double sum = -2.0 * std::arg(u[0]); // p + r
        double diff = 2.0 * std::arg(u[2]); // p - r
        e.p = norm_pi((sum + diff) / 2.0);
        e.r = norm_pi((sum - diff) / 2.0);
    }
    return e;
}

void emit_rz(std::vector<Op>& out, double angle) {
    angle = norm_pi(angle);
    if (std::abs(angle) > kEps) out.push_back({GateKind::RZ, {0}, angle});
}

double overlap2(const Mat2& a, const Mat2& b) {
    cplx tr = std::conj(a[0]) * b[0] + std::conj(a[2]) * b[2] + std::conj(a[1]) * b[1] +
              std::conj(a[3]) * b[3];
    return std::abs(tr) / 2.0;
}

} // namespace

std::vector<Op> resynthesize_1q(const std::array<std::complex<double>, 4>& u) {
    std::vector<Op> out;
    // Exact-match fast paths keep common gates canonical.
    if (overlap2(u, kernels::mat_x()) > 1 - 1e-12) {
        out.push_back({GateKind::X, {0}});
        return out;
    }
    if (overlap2(u, kernels::mat_sx()) > 1 - 1e-12) {
        out.push_back({GateKind::SX, {0}});
        return out;
    }
    EulerZyz e = euler_zyz(u);
    if (e.t < 1e-9) {
        emit_rz(out, e.p + e.r);
        return out;
    }
    // RY(t) = RZ(pi/2) RX(t) RZ(-pi/2), so U ~ RZ(p+pi/2) RX(t) RZ(r-pi/2).
    double lead = e.r - M_PI / 2; // earliest in time
    double tail = e.p + M_PI / 2;
    if (std::abs(e.t - M_PI / 2) < 1e-9) {
        emit_rz(out, lead);
        out.push_back({GateKind::SX, {0}});
        emit_rz(out, tail);
        return out;
    }
    if (std::abs(e.t - M_PI) < 1e-9) {
        emit_rz(out, lead);
        out.push_back({GateKind::X, {0}});
        emit_rz(out, tail);
        return out;
    }
    // Generic: RX(t) ~ SX RZ(pi - t) SX up to RZ dressing; derived from
    // U(t, 0, 0) = RZ(pi) SX RZ(t + pi) SX with ZYZ angles (t, 0, 0).
    emit_rz(out, e.r);
    out.push_back({GateKind::SX, {0}});
    emit_rz(out, e.t + M_PI);
    out.push_back({GateKind::SX, {0}});
    emit_rz(out, e.p + M_PI);
    return out;
}

int pulse_count_1q(const std::array<std::complex<double>, 4>& u) {
    int n = 0;
    for (const auto& op : resynthesize_1q(u))
        if (op.kind == GateKind::SX || op.kind == GateKind::X) ++n;
    return n;
}

namespace {

/// Expands one two-qubit op onto the basis, appending ops in time order.
void expand_2q(const Op& op, BasisSet basis, std::vector<Op>& out) {
    const int a = op.qubits[0], b = op.qubits[1];
    auto h_t = [&](int q) { out.push_back({GateKind::H, {q}}); };
    if (basis == BasisSet::CxBasis) {
        switch (op.kind) {
            case GateKind::CX:
                out.push_back(op);
                return;
            case GateKind::CZ:
                h_t(b);
                out.push_back({GateKind::CX, {a, b}});
                h_t(b);
                return;
            case GateKind::RZZ:
                out.push_back({GateKind::CX, {a, b}});
                out.push_back({GateKind::RZ, {b}, op.param});
                out.push_back({GateKind::CX, {a, b}});
                return;
            case GateKind::RZX:
                // RZX = (I (x) H) RZZ (I (x) H) with X side = b
                h_t(b);
                out.push_back({GateKind::CX, {a, b}});
                out.push_back({GateKind::RZ, {b}, op.param});
                out.push_back({GateKind::CX, {a, b}});
                h_t(b);
                return;
            case GateKind::CP:
                out.push_back({GateKind::RZ, {a}, op.param / 2});
                out.push_back({GateKind::CX, {a, b}});
                out.push_back({GateKind::RZ, {b}, -op.param / 2});
                out.push_back({GateKind::CX, {a, b}});
                out.push_back({GateKind::RZ, {b}, op.param / 2});
                return;
            default:
                throw std::invalid_argument(std::string("unknown two-qubit gate ") +
                                            gate_name(op.kind));
        }
    }
    // RZX basis
    switch (op.kind) {
        case GateKind::RZX:
            for (auto& g : echoed_rzx(a, b, op.param)) out.push_back(g);
            return;
        case GateKind::RZZ:
            h_t(b);
            for (auto& g : echoed_rzx(a, b, op.param)) out.push_back(g);
            h_t(b);
            return;
        case GateKind::CX:
            // CX ~ (RZ(-pi/2) (x) RX(-pi/2)) . RZX(pi/2)
            for (auto& g : echoed_rzx(a, b, M_PI / 2)) out.push_back(g);
            out.push_back({GateKind::RZ, {a}, -M_PI / 2});
            out.push_back({GateKind::RX, {b}, -M_PI / 2});
            return;
        case GateKind::CZ:
            h_t(b);
            expand_2q({GateKind::CX, {a, b}}, BasisSet::RzxBasis, out);
            h_t(b);
            return;
        case GateKind::CP:
            // CP(t) ~ RZ(t/2) (x) RZ(t/2) . RZZ(-t/2)
            out.push_back({GateKind::RZ, {a}, op.param / 2});
            out.push_back({GateKind::RZ, {b}, op.param / 2});
            expand_2q({GateKind::RZZ, {a, b}, -op.param / 2}, BasisSet::RzxBasis, out);
            return;
        default:
            throw std::invalid_argument(std::string("unknown two-qubit gate ") + gate_name(op.kind));
    }
}

/// Merges maximal single-qubit runs and resynthesizes each as RZ/SX/X.
Circuit merge_1q_runs(const Circuit& c) {
    Circuit out(c.num_qubits, c.name);
    // Pending 1q product per qubit (time order: product = later * earlier).
    std::vector<Mat2> pending(c.num_qubits, Mat2{1.0, 0.0, 0.0, 1.0});
    std::vector<bool> dirty(c.num_qubits, false);
    auto flush = [&](int q) {
        if (!dirty[q]) return;
        for (Op op : resynthesize_1q(pending[q])) {
            op.qubits[0] = q;
            out.ops.push_back(std::move(op));
        }
        pending[q] = Mat2{1.0, 0.0, 0.0, 1.0};
        dirty[q] = false;
    };
    for (const auto& op : c.ops) {
        if (is_single_qubit_gate(op)) {
            int q = op.qubits[0];
            pending[q] = kernels::matmul2(kernels::gate1_matrix(op.kind, op.param), pending[q]);
            dirty[q] = true;
            continue;
        }
        for (int q : op.qubits) flush(q);
        out.ops.push_back(op);
    }
    for (int q = 0; q < c.num_qubits; ++q) flush(q);
    return out;
}

} // namespace

Circuit decompose_to_basis(const Circuit& c, BasisSet basis) {
    c.validate();
    Circuit expanded(c.num_qubits, c.name);
    for (const auto& op : c.ops) {
        switch (op.kind) {
            case GateKind::Delay:
            case GateKind::Barrier:
            case GateKind::Measure:
                expanded.ops.push_back(op);
                break;
            default:
                if (is_single_qubit_gate(op)) {
                    expanded.ops.push_back(op);
                } else {
                    expand_2q(op, basis, expanded.ops);
                }
        }
    }
    return merge_1q_runs(expanded);
}

} // namespace ddforge
