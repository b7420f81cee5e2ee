#pragma once

#include <complex>
#include <vector>

#include "ddforge/circuit.hpp"

namespace ddforge {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. For circuit unitaries dim = 2^n with
/// little-endian qubit ordering (qubit 0 = least-significant index bit).
struct Unitary {
    int dim = 0;
    std::vector<cplx> a;

    Unitary() = default;
    explicit Unitary(int d) : dim(d), a(static_cast<size_t>(d) * d, cplx(0, 0)) {}

    cplx& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

    static Unitary identity(int d);
};

Unitary matmul(const Unitary& lhs, const Unitary& rhs);
Unitary dagger(const Unitary& u);
Unitary kron(const Unitary& hi, const Unitary& lo); // hi acts on the more significant bits

/// |tr(a^dag b)| / dim. Equals 1 iff a and b agree up to a global phase.
double phase_overlap(const Unitary& a, const Unitary& b);

/// true iff phase_overlap(a, b) >= 1 - tol. Throws on dimension mismatch.
bool equiv_up_to_phase(const Unitary& a, const Unitary& b, double tol);

/// Product of gate unitaries in time order (later gates on the left).
/// Delay and Barrier are identity. Rejects Measure ops and > 10 qubits.
Unitary unitary_of(const Circuit& c);

/// Final statevector of circuit applied to |0...0> (Measure ops skipped).
std::vector<cplx> ideal_amplitudes(const Circuit& c);

/// Ideal output distribution over the measured qubits (all qubits when the
/// circuit has no Measure ops), keyed by bitstring "q_{k-1}...q_0".
std::vector<std::pair<std::string, double>> ideal_distribution(const Circuit& c);

/// Bitstring over the given qubits, most-significant qubit leftmost.
std::string bits_of_index(std::uint64_t index, const std::vector<int>& qubits);

} // namespace ddforge
