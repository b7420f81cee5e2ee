#include "ddforge/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "ddforge/rng.hpp"
#include "ddforge/unitary.hpp"
#include "kvconfig.hpp"
#include "state_kernels.hpp"

namespace ddforge {

using kernels::Mat2;
using kernels::Mat4;

bool NoiseModel::is_zero() const {
    return quasi_static_sigma == 0 && t1_us == 0 && t2_us == 0 && depol_1q == 0 && depol_2q == 0 &&
           overrotation_epsilon == 0;
}

void NoiseModel::validate() const {
    if (quasi_static_sigma < 0) throw std::invalid_argument("quasi_static_sigma must be >= 0");
    if (t1_us < 0 || t2_us < 0) throw std::invalid_argument("relaxation times must be >= 0");
    if (t1_us > 0 && t2_us > 2 * t1_us) throw std::invalid_argument("t2 must be <= 2*t1");
    if (depol_1q < 0 || depol_1q > 1 || depol_2q < 0 || depol_2q > 1)
        throw std::invalid_argument("depolarizing probabilities must be in [0,1]");
}

NoiseModel load_noise_config(const std::string& path) {
    auto kv = load_kv_file(path);
    NoiseModel m;
    m.name = kv_string(kv, "name", "unnamed");
    m.quasi_static_sigma = kv_double(kv, "quasi_static_sigma", 0.0);
    m.t1_us = kv_double(kv, "t1_us", 0.0);
    m.t2_us = kv_double(kv, "t2_us", 0.0);
    m.depol_1q = kv_double(kv, "depol_1q", 0.0);
    m.depol_2q = kv_double(kv, "depol_2q", 0.0);
    m.overrotation_epsilon = kv_double(kv, "overrotation_epsilon", 0.0);
    m.seed = static_cast<std::uint64_t>(kv_int(kv, "seed", 0));
    m.validate();
    return m;
}

std::string counts_to_json(const CountsResult& r) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : r.counts) j[k] = v;
    return j.dump();
}

std::map<std::string, double> counts_to_distribution(const CountsResult& r) {
    std::map<std::string, double> out;
    for (const auto& [k, v] : r.counts)
        out[k] = static_cast<double>(v) / static_cast<double>(r.shots);
    return out;
}

namespace {

struct Event {
    enum class Kind { Idle, Gate1, Gate2, Depol1, Depol2 };
    Kind kind;
    int q0 = 0, q1 = 0;
    double t_us = 0;      // Idle
    double p_amp = 0;     // Idle: amplitude-damping branch probability scale
    double sqrt_keep = 1; // Idle: sqrt(1 - gamma)
    double p_phi = 0;     // Idle: phase-flip probability
    double p_depol = 0;
    Mat2 m1{};
    Mat4 m2{};
};

struct Program {
    int num_qubits = 0;
    std::vector<Event> events;
    std::vector<int> measured; // ascending; empty means "all"
    bool has_detuning = false;
    double total_idle_us = 0;
    std::vector<double> idle_us_per_qubit;
};

/// Flattens a scheduled circuit plus noise model into a linear event list.
Program build_program(const ScheduledCircuit& sched, const NoiseModel& noise,
                      const DurationTable& dt) {
    sched.validate();
    Program prog;
    prog.num_qubits = sched.circuit.num_qubits;
    prog.idle_us_per_qubit.assign(prog.num_qubits, 0.0);

    const double gamma_rate = noise.t1_us > 0 ? 1.0 / noise.t1_us : 0.0;
    double phi_rate = 0.0;
    if (noise.t2_us > 0) {
        phi_rate = 1.0 / noise.t2_us - 0.5 * gamma_rate;
        if (phi_rate < 0) phi_rate = 0;
    }

    auto idle_event = [&](int q, std::int64_t span_dt) {
        if (span_dt <= 0) return;
        double t = dt.dt_to_us(span_dt);
        Event e;
        e.kind = Event::Kind::Idle;
        e.q0 = q;
        e.t_us = t;
        if (gamma_rate > 0) {
            double gamma = 1.0 - std::exp(-t * gamma_rate);
            e.p_amp = gamma;
            e.sqrt_keep = std::sqrt(1.0 - gamma);
        }
        if (phi_rate > 0) e.p_phi = 0.5 * (1.0 - std::exp(-t * phi_rate));
        prog.events.push_back(e);
        prog.total_idle_us += t;
        prog.idle_us_per_qubit[q] += t;
    };

    // Decoherence during a gate: same Kraus channels, no detuning (the tone
    // is driven, not free-precessing).
    auto gate_decoherence = [&](int q, std::int64_t span_dt) {
        if (span_dt <= 0 || (gamma_rate == 0 && phi_rate == 0)) return;
        double t = dt.dt_to_us(span_dt);
        Event e;
        e.kind = Event::Kind::Idle;
        e.q0 = q;
        e.t_us = 0; // no detuning phase
        if (gamma_rate > 0) {
            double gamma = 1.0 - std::exp(-t * gamma_rate);
            e.p_amp = gamma;
            e.sqrt_keep = std::sqrt(1.0 - gamma);
        }
        if (phi_rate > 0) e.p_phi = 0.5 * (1.0 - std::exp(-t * phi_rate));
        prog.events.push_back(e);
    };

    std::vector<size_t> order(sched.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return sched.start[a] < sched.start[b]; });

    std::vector<std::int64_t> avail(prog.num_qubits, 0);
    for (size_t idx : order) {
        const Op& op = sched.circuit.ops[idx];
        const std::int64_t t0 = sched.start[idx];
        const std::int64_t d = sched.dur[idx];
        switch (op.kind) {
            case GateKind::Barrier:
                break;
            case GateKind::Delay: {
                int q = op.qubits[0];
                idle_event(q, t0 - avail[q]);
                idle_event(q, d);
                avail[q] = t0 + d;
                break;
            }
            case GateKind::Measure: {
                int q = op.qubits[0];
                idle_event(q, t0 - avail[q]);
                avail[q] = t0 + d;
                prog.measured.push_back(q);
                break;
            }
            default: {
                for (int q : op.qubits) {
                    idle_event(q, t0 - avail[q]);
                    avail[q] = t0 + d;
                }
                Event e;
                if (is_single_qubit_gate(op)) {
                    e.kind = Event::Kind::Gate1;
                    e.q0 = op.qubits[0];
                    e.m1 = kernels::gate1_matrix(op.kind, op.param, noise.overrotation_epsilon);
                } else {
                    e.kind = Event::Kind::Gate2;
                    e.q0 = op.qubits[0];
                    e.q1 = op.qubits[1];
                    e.m2 = kernels::gate2_matrix(op.kind, op.param);
                }
                prog.events.push_back(e);
                for (int q : op.qubits) gate_decoherence(q, d);
                if (is_single_qubit_gate(op) && noise.depol_1q > 0 && d > 0) {
                    Event dp;
                    dp.kind = Event::Kind::Depol1;
                    dp.q0 = op.qubits[0];
                    dp.p_depol = noise.depol_1q;
                    prog.events.push_back(dp);
                } else if (is_two_qubit_gate(op) && noise.depol_2q > 0) {
                    Event dp;
                    dp.kind = Event::Kind::Depol2;
                    dp.q0 = op.qubits[0];
                    dp.q1 = op.qubits[1];
                    dp.p_depol = noise.depol_2q;
                    prog.events.push_back(dp);
                }
            }
        }
    }
    std::sort(prog.measured.begin(), prog.measured.end());
    if (prog.measured.empty()) {
        prog.measured.resize(prog.num_qubits);
        for (int q = 0; q < prog.num_qubits; ++q) prog.measured[q] = q;
    }
    prog.has_detuning = noise.quasi_static_sigma > 0 && prog.total_idle_us > 0;
    return prog;
}

const Mat2 kPauli1[3] = {kernels::mat_x(), kernels::mat_y(), kernels::mat_z()};

void run_trajectory(const Program& prog, const NoiseModel& noise, Rng& rng,
                    std::vector<cplx>& state, std::vector<double>& delta) {
    const int n = prog.num_qubits;
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::fill(state.begin(), state.end(), cplx(0, 0));
    state[0] = 1.0;
    if (noise.quasi_static_sigma > 0)
        for (int q = 0; q < n; ++q) delta[q] = noise.quasi_static_sigma * rng.gaussian();

    for (const Event& e : prog.events) {
        switch (e.kind) {
            case Event::Kind::Idle: {
                const std::uint64_t bit = std::uint64_t{1} << e.q0;
                if (noise.quasi_static_sigma > 0 && e.t_us > 0) {
                    double phi = delta[e.q0] * e.t_us;
                    kernels::apply_phase(state.data(), n, e.q0, std::polar(1.0, -phi / 2),
                                         std::polar(1.0, phi / 2));
                }
                if (e.p_amp > 0) {
                    double p1 = 0;
                    for (std::uint64_t i = 0; i < dim; ++i)
                        if (i & bit) p1 += std::norm(state[i]);
                    double pe = e.p_amp * p1;
                    if (rng.uniform() < pe) {
                        // decay branch: |...1...> -> |...0...>
                        double inv = 1.0 / std::sqrt(pe);
                        double amp = std::sqrt(e.p_amp);
                        for (std::uint64_t i = 0; i < dim; ++i) {
                            if (i & bit) {
                                state[i & ~bit] = state[i] * amp * inv;
                                state[i] = 0;
                            }
                        }
                    } else {
                        double inv = 1.0 / std::sqrt(1.0 - pe);
                        for (std::uint64_t i = 0; i < dim; ++i)
                            state[i] *= (i & bit) ? e.sqrt_keep * inv : inv;
                    }
                }
                if (e.p_phi > 0 && rng.uniform() < e.p_phi)
                    kernels::apply_phase(state.data(), n, e.q0, 1.0, -1.0);
                break;
            }
            case Event::Kind::Gate1:
                kernels::apply1(state.data(), n, e.q0, e.m1);
                break;
            case Event::Kind::Gate2:
                kernels::apply2(state.data(), n, e.q0, e.q1, e.m2);
                break;
            case Event::Kind::Depol1:
                if (rng.uniform() < e.p_depol)
                    kernels::apply1(state.data(), n, e.q0,
                                    kPauli1[rng.uniform_below(3)]);
                break;
            case Event::Kind::Depol2:
                if (rng.uniform() < e.p_depol) {
                    std::uint64_t pick = rng.uniform_below(15) + 1;
                    int pa = static_cast<int>(pick & 3);
                    int pb = static_cast<int>(pick >> 2);
                    if (pa) kernels::apply1(state.data(), n, e.q0, kPauli1[pa - 1]);
                    if (pb) kernels::apply1(state.data(), n, e.q1, kPauli1[pb - 1]);
                }
                break;
        }
    }
}

std::uint64_t sample_index(const std::vector<cplx>& state, double u) {
    double acc = 0;
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        acc += std::norm(state[i]);
        if (u < acc) return i;
    }
    return state.size() - 1;
}

} // namespace

CountsResult simulate(const ScheduledCircuit& sched, const NoiseModel& noise, long long shots) {
    noise.validate();
    if (shots <= 0) throw std::invalid_argument("shots must be > 0");
    if (sched.circuit.num_qubits > 16)
        throw std::invalid_argument("simulator scale exceeded: > 16 qubits");
    Program prog = build_program(sched, noise, DurationTable::defaults());

    const int n = prog.num_qubits;
    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = std::clamp<unsigned>(hw == 0 ? 1 : hw, 1, 16);
    if (const char* env = std::getenv("DDFORGE_THREADS"))
        nthreads = std::clamp<unsigned>(static_cast<unsigned>(std::atoi(env)), 1, 64);
    if (shots < 512) nthreads = 1;

    std::vector<std::map<std::string, long long>> partial(nthreads);
    auto worker = [&](unsigned tid) {
        std::vector<cplx> state(std::uint64_t{1} << n);
        std::vector<double> delta(n, 0.0);
        auto& local = partial[tid];
        for (long long t = tid; t < shots; t += nthreads) {
            Rng rng(mix_seed(noise.seed, static_cast<std::uint64_t>(t)));
            run_trajectory(prog, noise, rng, state, delta);
            std::uint64_t idx = sample_index(state, rng.uniform());
            local[bits_of_index(idx, prog.measured)]++;
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < nthreads; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }
    CountsResult out;
    out.shots = shots;
    for (auto& m : partial)
        for (auto& [k, v] : m) out.counts[k] += v;
    return out;
}

namespace {

// --- exact channel evolution on density matrices (row-major d x d) ---

void left1(std::vector<cplx>& rho, int n, int q, const Mat2& m) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t r = 0; r < d; ++r) {
        if (r & bit) continue;
        for (std::uint64_t c = 0; c < d; ++c) {
            cplx a0 = rho[r * d + c], a1 = rho[(r | bit) * d + c];
            rho[r * d + c] = m[0] * a0 + m[1] * a1;
            rho[(r | bit) * d + c] = m[2] * a0 + m[3] * a1;
        }
    }
}

void right1_dag(std::vector<cplx>& rho, int n, int q, const Mat2& m) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t c = 0; c < d; ++c) {
        if (c & bit) continue;
        for (std::uint64_t r = 0; r < d; ++r) {
            cplx a0 = rho[r * d + c], a1 = rho[r * d + (c | bit)];
            rho[r * d + c] = std::conj(m[0]) * a0 + std::conj(m[1]) * a1;
            rho[r * d + (c | bit)] = std::conj(m[2]) * a0 + std::conj(m[3]) * a1;
        }
    }
}

void conj1(std::vector<cplx>& rho, int n, int q, const Mat2& m) {
    left1(rho, n, q, m);
    right1_dag(rho, n, q, m);
}

void left2(std::vector<cplx>& rho, int n, int qa, int qb, const Mat4& m) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t b0 = std::uint64_t{1} << qa, b1 = std::uint64_t{1} << qb;
    for (std::uint64_t r = 0; r < d; ++r) {
        if (r & (b0 | b1)) continue;
        for (std::uint64_t c = 0; c < d; ++c) {
            std::uint64_t i0 = r, i1 = r | b0, i2 = r | b1, i3 = r | b0 | b1;
            cplx a0 = rho[i0 * d + c], a1 = rho[i1 * d + c], a2 = rho[i2 * d + c],
                 a3 = rho[i3 * d + c];
            rho[i0 * d + c] = m[0] * a0 + m[1] * a1 + m[2] * a2 + m[3] * a3;
            rho[i1 * d + c] = m[4] * a0 + m[5] * a1 + m[6] * a2 + m[7] * a3;
            rho[i2 * d + c] = m[8] * a0 + m[9] * a1 + m[10] * a2 + m[11] * a3;
            rho[i3 * d + c] = m[12] * a0 + m[13] * a1 + m[14] * a2 + m[15] * a3;
        }
    }
}

void right2_dag(std::vector<cplx>& rho, int n, int qa, int qb, const Mat4& m) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t b0 = std::uint64_t{1} << qa, b1 = std::uint64_t{1} << qb;
    for (std::uint64_t c = 0; c < d; ++c) {
        if (c & (b0 | b1)) continue;
        for (std::uint64_t r = 0; r < d; ++r) {
            std::uint64_t i0 = c, i1 = c | b0, i2 = c | b1, i3 = c | b0 | b1;
            cplx a0 = rho[r * d + i0], a1 = rho[r * d + i1], a2 = rho[r * d + i2],
                 a3 = rho[r * d + i3];
            rho[r * d + i0] = std::conj(m[0]) * a0 + std::conj(m[1]) * a1 + std::conj(m[2]) * a2 +
                              std::conj(m[3]) * a3;
            rho[r * d + i1] = std::conj(m[4]) * a0 + std::conj(m[5]) * a1 + std::conj(m[6]) * a2 +
                              std::conj(m[7]) * a3;
            rho[r * d + i2] = std::conj(m[8]) * a0 + std::conj(m[9]) * a1 + std::conj(m[10]) * a2 +
                              std::conj(m[11]) * a3;
            rho[r * d + i3] = std::conj(m[12]) * a0 + std::conj(m[13]) * a1 +
                              std::conj(m[14]) * a2 + std::conj(m[15]) * a3;
        }
    }
}

void conj2(std::vector<cplx>& rho, int n, int qa, int qb, const Mat4& m) {
    left2(rho, n, qa, qb, m);
    right2_dag(rho, n, qa, qb, m);
}

/// Applies a 1q Kraus set on qubit q: rho -> sum_i K_i rho K_i^dag.
void kraus1(std::vector<cplx>& rho, int n, int q, const std::vector<Mat2>& ks,
            std::vector<cplx>& scratch) {
    std::vector<cplx> acc(rho.size(), cplx(0, 0));
    for (const auto& k : ks) {
        scratch = rho;
        conj1(scratch, n, q, k);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += scratch[i];
    }
    rho.swap(acc);
}

void apply_event_exact(const Event& e, const NoiseModel& noise, std::vector<cplx>& rho, int n,
                       const std::vector<double>& delta, std::vector<cplx>& scratch) {
    switch (e.kind) {
        case Event::Kind::Idle: {
            if (noise.quasi_static_sigma > 0 && e.t_us > 0) {
                double phi = delta[e.q0] * e.t_us;
                conj1(rho, n, e.q0, kernels::mat_rz(phi));
            }
            if (e.p_amp > 0) {
                Mat2 k0{1.0, 0.0, 0.0, e.sqrt_keep};
                Mat2 k1{0.0, std::sqrt(e.p_amp), 0.0, 0.0};
                kraus1(rho, n, e.q0, {k0, k1}, scratch);
            }
            if (e.p_phi > 0) {
                double p = e.p_phi;
                Mat2 k0{std::sqrt(1 - p), 0.0, 0.0, std::sqrt(1 - p)};
                Mat2 k1{std::sqrt(p), 0.0, 0.0, -std::sqrt(p)};
                kraus1(rho, n, e.q0, {k0, k1}, scratch);
            }
            break;
        }
        case Event::Kind::Gate1:
            conj1(rho, n, e.q0, e.m1);
            break;
        case Event::Kind::Gate2:
            conj2(rho, n, e.q0, e.q1, e.m2);
            break;
        case Event::Kind::Depol1: {
            double p = e.p_depol;
            std::vector<cplx> acc(rho.size());
            for (size_t i = 0; i < acc.size(); ++i) acc[i] = (1 - p) * rho[i];
            for (const auto& pauli : kPauli1) {
                scratch = rho;
                conj1(scratch, n, e.q0, pauli);
                for (size_t i = 0; i < acc.size(); ++i) acc[i] += (p / 3) * scratch[i];
            }
            rho.swap(acc);
            break;
        }
        case Event::Kind::Depol2: {
            double p = e.p_depol;
            std::vector<cplx> acc(rho.size());
            for (size_t i = 0; i < acc.size(); ++i) acc[i] = (1 - p) * rho[i];
            for (int pick = 1; pick < 16; ++pick) {
                scratch = rho;
                int pa = pick & 3, pb = pick >> 2;
                if (pa) conj1(scratch, n, e.q0, kPauli1[pa - 1]);
                if (pb) conj1(scratch, n, e.q1, kPauli1[pb - 1]);
                for (size_t i = 0; i < acc.size(); ++i) acc[i] += (p / 15) * scratch[i];
            }
            rho.swap(acc);
            break;
        }
    }
}

} // namespace

std::vector<std::pair<double, double>> gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("need at least one node");
    std::vector<double> x(n), w(n);
    const double eps = 1e-14;
    const int m = (n + 1) / 2;
    double z = 0, pp = 0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 0.7511255444649425; // pi^{-1/4}
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= eps) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    std::vector<std::pair<double, double>> out(n);
    for (int i = 0; i < n; ++i) out[i] = {x[n - 1 - i], w[n - 1 - i]}; // ascending nodes
    return out;
}

double effective_channel_fidelity(const ScheduledCircuit& sched, const NoiseModel& noise) {
    noise.validate();
    const int n = sched.circuit.num_qubits;
    if (n > 4) throw std::invalid_argument("channel-fidelity scale exceeded: > 4 qubits");
    if (sched.circuit.has_measure())
        throw std::invalid_argument("channel fidelity needs a measurement-free circuit");
    Program prog = build_program(sched, noise, DurationTable::defaults());
    Unitary u = unitary_of(sched.circuit);
    const std::uint64_t d = std::uint64_t{1} << n;

    std::vector<int> active;
    if (noise.quasi_static_sigma > 0)
        for (int q = 0; q < n; ++q)
            if (prog.idle_us_per_qubit[q] > 0) active.push_back(q);
    if (active.size() > 3)
        throw std::invalid_argument("channel-fidelity scale exceeded: > 3 detuned qubits");

    const int nodes = 40;
    auto gh = gauss_hermite(nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    size_t grid = 1;
    for (size_t i = 0; i < active.size(); ++i) grid *= nodes;

    double fpro_acc = 0;
    std::vector<double> delta(n, 0.0);
    std::vector<cplx> rho(d * d), scratch(d * d);
    for (size_t g = 0; g < grid; ++g) {
        double weight = 1.0;
        size_t rem = g;
        for (int q : active) {
            auto [xq, wq] = gh[rem % nodes];
            rem /= nodes;
            delta[q] = std::sqrt(2.0) * noise.quasi_static_sigma * xq;
            weight *= wq * inv_sqrt_pi;
        }
        cplx fpro(0, 0);
        for (std::uint64_t k = 0; k < d; ++k) {
            for (std::uint64_t l = 0; l < d; ++l) {
                std::fill(rho.begin(), rho.end(), cplx(0, 0));
                rho[k * d + l] = 1.0;
                for (const Event& e : prog.events) apply_event_exact(e, noise, rho, n, delta, scratch);
                // (U^dag rho' U)_{kl}
                cplx val(0, 0);
                for (std::uint64_t r = 0; r < d; ++r)
                    for (std::uint64_t c = 0; c < d; ++c)
                        val += std::conj(u.at(static_cast<int>(r), static_cast<int>(k))) *
                               rho[r * d + c] * u.at(static_cast<int>(c), static_cast<int>(l));
                fpro += val;
            }
        }
        fpro_acc += weight * (fpro.real() / static_cast<double>(d * d));
    }
    double favg = (d * fpro_acc + 1.0) / (d + 1.0);
    return std::clamp(favg, 0.0, 1.0);
}

} // namespace ddforge
