#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddforge/circuit.hpp"

namespace ddforge {

/// Undirected simple graph. Edges are stored (u < v), sorted.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::string label;

    bool has_edge(int u, int v) const;
};

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

/// Pairing-model d-regular graph; resamples until simple. n*d must be even.
Graph random_regular_graph(int d, int n, std::uint64_t seed);
/// Independent-coin G(n, p) graph.
Graph erdos_renyi(int n, double p, std::uint64_t seed);
Graph path_graph(int n);
Graph complete_graph(int n);

/// Bitstring convention throughout: character i of a secret/shift string is
/// qubit (len-1-i), so the ideal measured bitstring prints exactly as the
/// input string.

/// Bernstein-Vazirani over |secret| data qubits plus one ancilla (the highest
/// index, prepared in |->). Measures the data qubits.
Circuit bv_circuit(const std::string& secret);

/// Hidden Shift for the Maiorana-McFarland bent function f(x) = XOR of
/// x_{2i} x_{2i+1} (a CZ layer on pairs), shifted oracle X-conjugated.
/// Needs even length. Measures all qubits; ideal output is the shift.
Circuit hs_circuit(const std::string& shift);

/// X-prep of input_state followed by the standard QFT (H + controlled-phase
/// ladder + final swaps as 3 CX each).
Circuit qft_circuit(int n, const std::string& input_state);

/// H on every qubit, then CZ per edge in sorted order.
Circuit graph_state_circuit(const Graph& g);

/// p=1 QAOA Max-Cut ansatz: H layer, RZZ(2*gamma) per edge, RX(2*beta) per
/// qubit, measure all.
Circuit qaoa_maxcut_ansatz(const Graph& g, double gamma, double beta);

/// Cut size of the assignment encoded in bits of z.
int cut_value(const Graph& g, std::uint64_t z);

struct MaxCutResult {
    int best_value = 0; // maximum cut
    double c_min = 0;   // minimum of C(z) = -cut(z)
};

/// Exhaustive scan over all 2^n assignments (n <= 24).
MaxCutResult maxcut_bruteforce(const Graph& g);

/// Exact noiseless <C> of the p=1 ansatz, C(z) = -cut(z).
double qaoa_expectation_exact(const Graph& g, double gamma, double beta);

struct QaoaParams {
    double gamma = 0;
    double beta = 0;
    double value = 0; // <C> at the optimum (negative)
};

/// Derivative-free simplex optimization of the exact noiseless expectation,
/// 5 random restarts, best kept. budget caps total expectation evaluations.
QaoaParams optimize_qaoa(const Graph& g, int budget = 600, std::uint64_t seed = 1);

} // namespace ddforge
