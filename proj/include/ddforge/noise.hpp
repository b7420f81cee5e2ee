#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddforge/schedule.hpp"

namespace ddforge {

/// Stochastic stand-in for system-bath dynamics. Quasi-static detuning (a
/// per-trajectory Gaussian Z rotation rate, applied per microsecond of idle)
/// models the low-frequency noise DD refocuses; T1/T2 Kraus channels model
/// the Markovian part; depolarizing and over-rotation model gate error.
struct NoiseModel {
    std::string name = "zero";
    double quasi_static_sigma = 0.0;   // rad per us of idle, Gaussian std-dev
    double t1_us = 0.0;                // 0 disables amplitude damping
    double t2_us = 0.0;                // 0 disables dephasing
    double depol_1q = 0.0;
    double depol_2q = 0.0;
    double overrotation_epsilon = 0.0; // fractional angle error on X/Y/SX/RX
    std::uint64_t seed = 0;

    bool is_zero() const;
    /// Throws on negative rates, probabilities outside [0,1], or t2 > 2*t1.
    void validate() const;
};

NoiseModel load_noise_config(const std::string& path);

struct CountsResult {
    std::map<std::string, long long> counts;
    long long shots = 0;
};

std::string counts_to_json(const CountsResult& r);
std::map<std::string, double> counts_to_distribution(const CountsResult& r);

/// Monte-Carlo trajectory simulation: one trajectory per shot, each with its
/// own detuning draw and Kraus sampling, measured once in the computational
/// basis. Bit-identical for a fixed seed regardless of thread count.
/// Bitstrings cover the measured qubits (all qubits when none are measured),
/// highest qubit leftmost.
CountsResult simulate(const ScheduledCircuit& sched, const NoiseModel& noise, long long shots);

/// Average gate fidelity of the noisy channel against the circuit's ideal
/// unitary, with Kraus channels composed exactly and the static detuning
/// integrated on a Gauss-Hermite grid (no sampling noise). Circuits up to
/// 4 qubits and no Measure ops.
double effective_channel_fidelity(const ScheduledCircuit& sched, const NoiseModel& noise);

/// Nodes/weights for integration against exp(-x^2) on the real line.
std::vector<std::pair<double, double>> gauss_hermite(int n);

} // namespace ddforge
