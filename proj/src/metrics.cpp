#include "ddforge/metrics.hpp"

#include <cmath>
#include <set>

namespace ddforge {

double pst(const CountsResult& counts, const std::string& expected) {
    if (counts.shots <= 0) throw std::invalid_argument("pst needs shots > 0");
    auto it = counts.counts.find(expected);
    if (it == counts.counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(counts.shots);
}

double jsd(const std::map<std::string, double>& p, const std::map<std::string, double>& q) {
    auto check = [](const std::map<std::string, double>& d, const char* which) {
        double sum = 0;
        for (auto& [k, v] : d) {
            if (v < 0) throw std::invalid_argument(std::string(which) + " has a negative mass");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument(std::string(which) + " is not normalized");
    };
    check(p, "p");
    check(q, "q");
    std::set<std::string> keys;
    for (auto& [k, v] : p) keys.insert(k);
    for (auto& [k, v] : q) keys.insert(k);
    auto get = [](const std::map<std::string, double>& d, const std::string& k) {
        auto it = d.find(k);
        return it == d.end() ? 0.0 : it->second;
    };
    double acc = 0;
    for (const auto& k : keys) {
        double pv = get(p, k), qv = get(q, k);
        double m = 0.5 * (pv + qv);
        if (pv > 0) acc += 0.5 * pv * std::log2(pv / m);
        if (qv > 0) acc += 0.5 * qv * std::log2(qv / m);
    }
    return acc < 0 ? 0.0 : acc;
}

double approximation_ratio(const CountsResult& counts, const Graph& g) {
    if (counts.shots <= 0) throw std::invalid_argument("approximation ratio needs shots > 0");
    MaxCutResult mc = maxcut_bruteforce(g);
    if (mc.c_min >= 0) throw std::invalid_argument("approximation ratio undefined on edgeless graph");
    double expectation = 0;
    for (const auto& [bits, cnt] : counts.counts) {
        std::uint64_t z = 0;
        for (char c : bits) z = (z << 1) | static_cast<std::uint64_t>(c == '1');
        double prob = static_cast<double>(cnt) / static_cast<double>(counts.shots);
        expectation += prob * -static_cast<double>(cut_value(g, z));
    }
    return expectation / mc.c_min;
}

const char* metric_name(MetricKind k) {
    switch (k) {
        case MetricKind::Pst: return "pst";
        case MetricKind::Jsd: return "jsd";
        case MetricKind::ApproxRatio: return "approx_ratio";
    }
    throw std::logic_error("unreachable metric kind");
}

double relative_report(double baseline, double variant, MetricKind kind) {
    switch (kind) {
        case MetricKind::Pst:
            if (baseline == 0) throw std::invalid_argument("zero PST baseline");
            return variant / baseline;
        case MetricKind::Jsd:
            if (baseline == 0) throw std::invalid_argument("zero JSD baseline");
            if (variant == 0) throw std::invalid_argument("zero JSD variant");
            return baseline / variant;
        case MetricKind::ApproxRatio:
            return variant - baseline;
    }
    throw std::logic_error("unreachable metric kind");
}

} // namespace ddforge
