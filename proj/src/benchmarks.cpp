#include "ddforge/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ddforge/rng.hpp"
#include "ddforge/unitary.hpp"

namespace ddforge {

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["label"] = g.label;
    j["n"] = g.n;
    j["edges"] = nlohmann::json::array();
    for (auto& [u, v] : g.edges) j["edges"].push_back({u, v});
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Graph g;
    g.label = j.value("label", "");
    g.n = j.at("n").get<int>();
    for (auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

Graph random_regular_graph(int d, int n, std::uint64_t seed) {
    if (n <= 0 || d < 0 || d >= n) throw std::invalid_argument("infeasible regular graph");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("infeasible regular graph: n*d must be even");
    Rng rng(mix_seed(seed, 0x9e6721));
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * d);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);
        rng.shuffle(stubs);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                ok = false;
                break;
            }
            if (u > v) std::swap(u, v);
            if (!edges.insert({u, v}).second) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Graph g;
        g.n = n;
        g.edges.assign(edges.begin(), edges.end());
        g.label = "3-reg-" + std::to_string(n);
        if (d != 3) g.label = std::to_string(d) + "-reg-" + std::to_string(n);
        return g;
    }
    throw std::runtime_error("pairing model failed to produce a simple graph");
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n <= 0 || p < 0 || p > 1) throw std::invalid_argument("bad G(n,p) parameters");
    Rng rng(mix_seed(seed, 0x3fb812));
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) g.edges.emplace_back(u, v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "rand-%d-%g", n, p);
    g.label = buf;
    return g;
}

Graph path_graph(int n) {
    Graph g;
    g.n = n;
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    g.label = "line-" + std::to_string(n);
    return g;
}

Graph complete_graph(int n) {
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
    g.label = "K" + std::to_string(n);
    return g;
}

namespace {
bool string_bit(const std::string& s, int qubit) {
    // character i of the string is qubit (len-1-i)
    return s.at(s.size() - 1 - static_cast<size_t>(qubit)) == '1';
}

void check_bits(const std::string& s) {
    for (char c : s)
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be 0/1");
}
} // namespace

Circuit bv_circuit(const std::string& secret) {
    if (secret.empty()) throw std::invalid_argument("BV secret must be non-empty");
    check_bits(secret);
    const int n = static_cast<int>(secret.size());
    const int anc = n;
    Circuit c(n + 1, "bv-" + std::to_string(n));
    for (int q = 0; q < n; ++q) c.h(q);
    c.x(anc);
    c.h(anc);
    for (int q = 0; q < n; ++q)
        if (string_bit(secret, q)) c.cx(q, anc);
    for (int q = 0; q < n; ++q) c.h(q);
    for (int q = 0; q < n; ++q) c.measure(q);
    return c;
}

Circuit hs_circuit(const std::string& shift) {
    const int n = static_cast<int>(shift.size());
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("hidden shift needs even length");
    check_bits(shift);
    Circuit c(n, "hs-" + std::to_string(n));
    auto cz_layer = [&c, n]() {
        for (int i = 0; i + 1 < n; i += 2) c.cz(i, i + 1);
    };
    auto h_layer = [&c, n]() {
        for (int q = 0; q < n; ++q) c.h(q);
    };
    auto x_shift = [&]() {
        for (int q = 0; q < n; ++q)
            if (string_bit(shift, q)) c.x(q);
    };
    h_layer();
    x_shift();
    cz_layer();
    x_shift();
    h_layer();
    cz_layer();
    h_layer();
    for (int q = 0; q < n; ++q) c.measure(q);
    return c;
}

Circuit qft_circuit(int n, const std::string& input_state) {
    if (n < 1 || n > 16) throw std::invalid_argument("QFT size must be in [1,16]");
    if (static_cast<int>(input_state.size()) != n)
        throw std::invalid_argument("input state length must match size");
    check_bits(input_state);
    Circuit c(n, "qft-" + std::to_string(n));
    for (int q = 0; q < n; ++q)
        if (string_bit(input_state, q)) c.x(q);
    for (int i = n - 1; i >= 0; --i) {
        c.h(i);
        for (int j = i - 1; j >= 0; --j) c.cp(j, i, M_PI / std::pow(2.0, i - j));
    }
    for (int q = 0; q < n / 2; ++q) {
        int r = n - 1 - q;
        c.cx(q, r);
        c.cx(r, q);
        c.cx(q, r);
    }
    for (int q = 0; q < n; ++q) c.measure(q);
    return c;
}

Circuit graph_state_circuit(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("graph state needs at least one node");
    Circuit c(g.n, "gs-" + std::to_string(g.n));
    for (int q = 0; q < g.n; ++q) c.h(q);
    for (auto& [u, v] : g.edges) c.cz(u, v);
    for (int q = 0; q < g.n; ++q) c.measure(q);
    return c;
}

Circuit qaoa_maxcut_ansatz(const Graph& g, double gamma, double beta) {
    Circuit c(g.n, "qaoa-" + g.label);
    for (int q = 0; q < g.n; ++q) c.h(q);
    for (auto& [u, v] : g.edges) c.rzz(u, v, 2.0 * gamma);
    for (int q = 0; q < g.n; ++q) c.rx(q, 2.0 * beta);
    for (int q = 0; q < g.n; ++q) c.measure(q);
    return c;
}

int cut_value(const Graph& g, std::uint64_t z) {
    int cut = 0;
    for (auto& [u, v] : g.edges)
        cut += ((z >> u) ^ (z >> v)) & 1;
    return cut;
}

MaxCutResult maxcut_bruteforce(const Graph& g) {
    if (g.n > 24) throw std::invalid_argument("brute-force scale exceeded: > 24 nodes");
    int best = 0;
    const std::uint64_t total = std::uint64_t{1} << g.n;
    for (std::uint64_t z = 0; z < total; ++z) best = std::max(best, cut_value(g, z));
    return {best, -static_cast<double>(best)};
}

double qaoa_expectation_exact(const Graph& g, double gamma, double beta) {
    Circuit c = qaoa_maxcut_ansatz(g, gamma, beta);
    auto amps = ideal_amplitudes(c);
    double acc = 0;
    for (std::uint64_t z = 0; z < amps.size(); ++z) {
        double p = std::norm(amps[z]);
        if (p > 0) acc += p * -static_cast<double>(cut_value(g, z));
    }
    return acc;
}

namespace {

/// Nelder-Mead on a 2d objective; returns the best vertex found.
template <typename F>
std::pair<std::array<double, 2>, double> nelder_mead(F&& f, std::array<double, 2> x0,
                                                     double scale, int max_evals) {
    struct Vertex {
        std::array<double, 2> x;
        double v;
    };
    int evals = 0;
    auto eval = [&](const std::array<double, 2>& x) {
        ++evals;
        return f(x[0], x[1]);
    };
    std::array<Vertex, 3> s;
    s[0] = {x0, eval(x0)};
    s[1] = {{x0[0] + scale, x0[1]}, 0};
    s[1].v = eval(s[1].x);
    s[2] = {{x0[0], x0[1] + scale}, 0};
    s[2].v = eval(s[2].x);
    while (evals < max_evals) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
        if (std::abs(s[2].v - s[0].v) < 1e-12) break;
        std::array<double, 2> centroid = {(s[0].x[0] + s[1].x[0]) / 2, (s[0].x[1] + s[1].x[1]) / 2};
        auto along = [&](double t) -> std::array<double, 2> {
            return {centroid[0] + t * (s[2].x[0] - centroid[0]),
                    centroid[1] + t * (s[2].x[1] - centroid[1])};
        };
        auto xr = along(-1.0);
        double vr = eval(xr);
        if (vr < s[0].v) {
            auto xe = along(-2.0);
            double ve = eval(xe);
            if (ve < vr)
                s[2] = {xe, ve};
            else
                s[2] = {xr, vr};
        } else if (vr < s[1].v) {
            s[2] = {xr, vr};
        } else {
            auto xc = along(vr < s[2].v ? -0.5 : 0.5);
            double vc = eval(xc);
            if (vc < std::min(vr, s[2].v)) {
                s[2] = {xc, vc};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = {(s[i].x[0] + s[0].x[0]) / 2, (s[i].x[1] + s[0].x[1]) / 2};
                    s[i].v = eval(s[i].x);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
    return {s[0].x, s[0].v};
}

} // namespace

QaoaParams optimize_qaoa(const Graph& g, int budget, std::uint64_t seed) {
    if (g.edges.empty()) return {0.0, 0.0, 0.0};
    auto objective = [&g](double gamma, double beta) {
        return qaoa_expectation_exact(g, gamma, beta);
    };
    const int restarts = 5;
    Rng rng(mix_seed(seed, 0x9a0a5e));
    QaoaParams best;
    bool first = true;
    for (int r = 0; r < restarts; ++r) {
        std::array<double, 2> x0 = {rng.uniform() * M_PI, rng.uniform() * M_PI / 2};
        auto [x, v] = nelder_mead(objective, x0, 0.3, budget / restarts);
        if (first || v < best.value) {
            best = {x[0], x[1], v};
            first = false;
        }
    }
    return best;
}

} // namespace ddforge
