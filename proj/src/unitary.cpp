#include "ddforge/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "state_kernels.hpp"

namespace ddforge {

Unitary Unitary::identity(int d) {
    Unitary u(d);
    for (int i = 0; i < d; ++i) u.at(i, i) = 1.0;
    return u;
}

Unitary matmul(const Unitary& lhs, const Unitary& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("dimension mismatch");
    int d = lhs.dim;
    Unitary out(d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            cplx v = lhs.at(r, k);
            if (v == cplx(0, 0)) continue;
            for (int c = 0; c < d; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    return out;
}

Unitary dagger(const Unitary& u) {
    Unitary out(u.dim);
    for (int r = 0; r < u.dim; ++r)
        for (int c = 0; c < u.dim; ++c) out.at(c, r) = std::conj(u.at(r, c));
    return out;
}

Unitary kron(const Unitary& hi, const Unitary& lo) {
    Unitary out(hi.dim * lo.dim);
    for (int r1 = 0; r1 < hi.dim; ++r1)
        for (int c1 = 0; c1 < hi.dim; ++c1)
            for (int r0 = 0; r0 < lo.dim; ++r0)
                for (int c0 = 0; c0 < lo.dim; ++c0)
                    out.at(r1 * lo.dim + r0, c1 * lo.dim + c0) = hi.at(r1, c1) * lo.at(r0, c0);
    return out;
}

double phase_overlap(const Unitary& a, const Unitary& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
    cplx tr(0, 0);
    for (size_t i = 0; i < a.a.size(); ++i) tr += std::conj(a.a[i]) * b.a[i];
    return std::abs(tr) / a.dim;
}

bool equiv_up_to_phase(const Unitary& a, const Unitary& b, double tol) {
    return phase_overlap(a, b) >= 1.0 - tol;
}

Unitary unitary_of(const Circuit& c) {
    if (c.num_qubits > 10)
        throw std::invalid_argument("oracle scale exceeded: " + std::to_string(c.num_qubits) +
                                    " qubits > 10");
    if (c.has_measure()) throw std::invalid_argument("oracle scale exceeded: circuit has Measure ops");
    c.validate();
    const int n = c.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    // Evolve the columns of the identity; buf is column-major.
    std::vector<cplx> buf(dim * dim, cplx(0, 0));
    for (std::uint64_t col = 0; col < dim; ++col) buf[col * dim + col] = 1.0;
    for (const auto& op : c.ops)
        for (std::uint64_t col = 0; col < dim; ++col)
            kernels::apply_op(buf.data() + col * dim, n, op);
    Unitary u(static_cast<int>(dim));
    for (std::uint64_t col = 0; col < dim; ++col)
        for (std::uint64_t row = 0; row < dim; ++row)
            u.at(static_cast<int>(row), static_cast<int>(col)) = buf[col * dim + row];
    return u;
}

std::vector<cplx> ideal_amplitudes(const Circuit& c) {
    if (c.num_qubits > 24) throw std::invalid_argument("statevector scale exceeded");
    c.validate();
    const int n = c.num_qubits;
    std::vector<cplx> state(std::uint64_t{1} << n, cplx(0, 0));
    state[0] = 1.0;
    for (const auto& op : c.ops) {
        if (op.kind == GateKind::Measure) continue;
        kernels::apply_op(state.data(), n, op);
    }
    return state;
}

std::string bits_of_index(std::uint64_t index, const std::vector<int>& qubits) {
    std::string s(qubits.size(), '0');
    for (size_t i = 0; i < qubits.size(); ++i) {
        // qubits ascending; leftmost character is the highest qubit
        if (index >> qubits[i] & 1) s[qubits.size() - 1 - i] = '1';
    }
    return s;
}

std::vector<std::pair<std::string, double>> ideal_distribution(const Circuit& c) {
    auto amps = ideal_amplitudes(c);
    std::vector<int> qs = c.measured_qubits();
    if (qs.empty()) {
        qs.resize(c.num_qubits);
        for (int i = 0; i < c.num_qubits; ++i) qs[i] = i;
    }
    std::map<std::string, double> acc;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        double p = std::norm(amps[i]);
        if (p > 0.0) acc[bits_of_index(i, qs)] += p;
    }
    return {acc.begin(), acc.end()};
}

} // namespace ddforge
