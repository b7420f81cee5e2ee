#pragma once

#include <map>
#include <string>

#include "ddforge/benchmarks.hpp"
#include "ddforge/noise.hpp"

namespace ddforge {

/// Probability of successful trial: counts[expected] / shots. A missing key
/// counts as zero.
double pst(const CountsResult& counts, const std::string& expected);

/// Base-2 Jensen-Shannon divergence between two normalized distributions
/// over the same outcome space (missing outcomes are zero). In [0, 1].
/// Throws when either input deviates from sum 1 by more than 1e-9.
double jsd(const std::map<std::string, double>& p, const std::map<std::string, double>& q);

/// <C>/C_min with C(z) = -cut(z); 1 means every shot landed on a maximum
/// cut. Throws on edgeless graphs (C_min = 0).
double approximation_ratio(const CountsResult& counts, const Graph& g);

enum class MetricKind { Pst, Jsd, ApproxRatio };

const char* metric_name(MetricKind k);

/// Relative-result conventions: PST -> variant/baseline (> 1 better),
/// JSD -> baseline/variant (> 1 better), approximation ratio ->
/// variant - baseline (> 0 better). Throws on a zero baseline for the
/// ratio kinds.
double relative_report(double baseline, double variant, MetricKind kind);

} // namespace ddforge
