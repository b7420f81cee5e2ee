#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddforge {

/// Gate vocabulary. Parameterized kinds carry one angle in radians,
/// Delay carries an integer duration in dt.
enum class GateKind {
    X,
    Y,
    SX,
    RZ,
    RX,
    H,
    CZ,
    CX,
    RZX,
    RZZ,
    CP,
    Delay,
    Measure,
    Barrier,
};

const char* gate_name(GateKind k);
GateKind gate_from_name(const std::string& name);

/// Number of qubit operands (Barrier is variadic, returns -1).
int gate_arity(GateKind k);
bool gate_has_param(GateKind k);

/// Reduces an angle to (-2*pi, 2*pi]. All rotation gates here are
/// 4*pi-periodic, so this never changes the unitary.
double reduce_angle(double theta);

struct Op {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    double param = 0.0;        // angle, for parameterized kinds
    std::int64_t duration = 0; // Delay only

    Op() = default;
    Op(GateKind k, std::vector<int> qs, double p = 0.0, std::int64_t d = 0);
};

bool is_single_qubit_gate(const Op& op);
bool is_two_qubit_gate(const Op& op);

/// Ordered list of gate applications on indexed qubits. Qubit 0 is the
/// least-significant bit of every basis-state index and bitstring.
struct Circuit {
    int num_qubits = 0;
    std::string name;
    std::vector<Op> ops;

    Circuit() = default;
    explicit Circuit(int n, std::string nm = "") : num_qubits(n), name(std::move(nm)) {
        if (n <= 0) throw std::invalid_argument("circuit needs a positive qubit count");
    }

    Circuit& add(Op op);
    Circuit& x(int q) { return add({GateKind::X, {q}}); }
    Circuit& y(int q) { return add({GateKind::Y, {q}}); }
    Circuit& sx(int q) { return add({GateKind::SX, {q}}); }
    Circuit& h(int q) { return add({GateKind::H, {q}}); }
    Circuit& rz(int q, double t) { return add({GateKind::RZ, {q}, t}); }
    Circuit& rx(int q, double t) { return add({GateKind::RX, {q}, t}); }
    Circuit& cz(int a, int b) { return add({GateKind::CZ, {a, b}}); }
    Circuit& cx(int c, int t) { return add({GateKind::CX, {c, t}}); }
    Circuit& rzx(int zq, int xq, double t) { return add({GateKind::RZX, {zq, xq}, t}); }
    Circuit& rzz(int a, int b, double t) { return add({GateKind::RZZ, {a, b}, t}); }
    Circuit& cp(int a, int b, double t) { return add({GateKind::CP, {a, b}, t}); }
    Circuit& delay(int q, std::int64_t d) { return add({GateKind::Delay, {q}, 0.0, d}); }
    Circuit& measure(int q) { return add({GateKind::Measure, {q}}); }
    Circuit& barrier(std::vector<int> qs) { return add({GateKind::Barrier, std::move(qs)}); }

    bool has_measure() const;
    std::vector<int> measured_qubits() const; // ascending

    /// Throws if qubit indices are out of range / duplicated, a Delay is
    /// negative, or a Measure is not the final op on its qubit.
    void validate() const;
};

/// JSON round trip per the circuit schema:
/// {"name": str, "num_qubits": int, "ops": [{"gate", "qubits", "params", "duration"?}]}
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

} // namespace ddforge
