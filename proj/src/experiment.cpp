#include "ddforge/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ddforge/basis.hpp"
#include "ddforge/rng.hpp"
#include "ddforge/rzx.hpp"
#include "ddforge/unitary.hpp"
#include "kvconfig.hpp"

namespace ddforge {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

MetricKind metric_for(const std::string& benchmark) {
    if (benchmark == "bv" || benchmark == "hs") return MetricKind::Pst;
    if (benchmark == "qft" || benchmark == "gs") return MetricKind::Jsd;
    return MetricKind::ApproxRatio;
}

bool is_qaoa(const std::string& benchmark) {
    return benchmark == "qaoa-3reg" || benchmark == "qaoa-rand";
}

std::string random_bits(Rng& rng, int n) {
    std::string s(n, '0');
    for (char& c : s)
        if (rng.uniform() < 0.5) c = '1';
    return s;
}

struct Instance {
    Circuit base;        // generated benchmark circuit
    std::string label;   // secret / shift / input / graph label
    std::string expected;           // PST target, when applicable
    std::map<std::string, double> ideal; // JSD reference, when applicable
    Graph graph;                    // QAOA only
};

Instance make_instance(const ExperimentConfig& cfg, int size) {
    Instance inst;
    std::uint64_t inst_seed = mix_seed(cfg.seed, fnv1a(cfg.benchmark) ^ static_cast<std::uint64_t>(size));
    Rng rng(inst_seed);
    auto pick_bits = [&](int n) {
        if (cfg.secret_mode == "ones") return std::string(n, '1');
        if (cfg.secret_mode == "zeros") return std::string(n, '0');
        return random_bits(rng, n);
    };
    if (cfg.benchmark == "bv") {
        std::string secret = pick_bits(size);
        inst.base = bv_circuit(secret);
        inst.label = secret;
        inst.expected = secret;
    } else if (cfg.benchmark == "hs") {
        std::string shift = pick_bits(size);
        inst.base = hs_circuit(shift);
        inst.label = shift;
        inst.expected = shift;
    } else if (cfg.benchmark == "qft") {
        std::string input = cfg.secret_mode == "random" ? random_bits(rng, size)
                                                        : std::string(size, '0');
        inst.base = qft_circuit(size, input);
        inst.label = input;
        for (auto& [k, v] : ideal_distribution(inst.base)) inst.ideal[k] = v;
    } else if (cfg.benchmark == "gs") {
        Graph g = path_graph(size);
        inst.base = graph_state_circuit(g);
        inst.label = g.label;
        for (auto& [k, v] : ideal_distribution(inst.base)) inst.ideal[k] = v;
    } else if (is_qaoa(cfg.benchmark)) {
        Graph g;
        if (cfg.benchmark == "qaoa-3reg") {
            g = random_regular_graph(3, size, inst_seed);
        } else {
            for (std::uint64_t attempt = 0;; ++attempt) {
                g = erdos_renyi(size, cfg.rand_graph_p, inst_seed + attempt);
                if (!g.edges.empty()) break;
            }
        }
        QaoaParams params = optimize_qaoa(g, cfg.qaoa_budget, inst_seed);
        inst.base = qaoa_maxcut_ansatz(g, params.gamma, params.beta);
        inst.label = g.label;
        inst.graph = g;
    } else {
        throw std::invalid_argument("unknown benchmark family: " + cfg.benchmark);
    }
    return inst;
}

struct MethodSpec {
    std::string name;
    bool pe = false;
    bool has_dd = false;
    SeqName seq = SeqName::Xy4;
};

std::vector<MethodSpec> method_list(const ExperimentConfig& cfg) {
    std::vector<MethodSpec> out;
    out.push_back({"baseline", false, false, SeqName::Xy4});
    if (cfg.pulse_efficient) out.push_back({"pe", true, false, SeqName::Xy4});
    for (const auto& name : cfg.dd) {
        if (name == "none") continue;
        SeqName s = seq_from_name(name);
        if (cfg.pulse_efficient)
            out.push_back({std::string("pe+") + name, true, true, s});
        else
            out.push_back({name, false, true, s});
    }
    return out;
}

} // namespace

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_size_list(const std::string& text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int a = std::stoi(text.substr(0, dots));
        int b = std::stoi(text.substr(dots + 2));
        for (int v = a; v <= b; ++v) out.push_back(v);
        return out;
    }
    for (const auto& tok : parse_name_list(text)) out.push_back(std::stoi(tok));
    return out;
}

void ExperimentConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("config needs at least one size");
    if (shots <= 0) throw std::invalid_argument("shots must be > 0");
    if (repeats <= 0) throw std::invalid_argument("repeats must be > 0");
    if (benchmark != "bv" && benchmark != "hs" && benchmark != "qft" && benchmark != "gs" &&
        !is_qaoa(benchmark))
        throw std::invalid_argument("unknown benchmark family: " + benchmark);
    for (const auto& name : dd)
        if (name != "none") seq_from_name(name);
    noise.validate();
}

ExperimentConfig load_experiment_config(const std::string& path) {
    auto kv = load_kv_file(path);
    ExperimentConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "benchmark") cfg.benchmark = value;
        else if (key == "sizes") cfg.sizes = parse_size_list(value);
        else if (key == "dd") cfg.dd = parse_name_list(value);
        else if (key == "pulse_efficient") cfg.pulse_efficient = value == "on" || value == "true" || value == "1";
        else if (key == "shots") cfg.shots = std::stoll(value);
        else if (key == "repeats") cfg.repeats = std::stoi(value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
        else if (key == "secret_mode") cfg.secret_mode = value;
        else if (key == "noise") { cfg.noise = load_noise_config(value); cfg.noise_file = value; }
        else if (key == "durations") cfg.durations = load_duration_config(value);
        else if (key == "out") cfg.out_dir = value;
        else if (key == "qaoa_budget") cfg.qaoa_budget = std::stoi(value);
        else if (key == "rand_graph_p") cfg.rand_graph_p = std::stod(value);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    if (cfg.sizes.empty()) {
        // family defaults: 3..12 for the algorithm benchmarks (even only for
        // hidden shift), graph sizes 4..12 for QAOA
        if (is_qaoa(cfg.benchmark)) {
            for (int n = 4; n <= 12; n += 2) cfg.sizes.push_back(n);
        } else {
            for (int n = 3; n <= 12; ++n)
                if (cfg.benchmark != "hs" || n % 2 == 0) cfg.sizes.push_back(n);
        }
    }
    cfg.validate();
    return cfg;
}

const CellResult* ExperimentReport::find(int size, const std::string& method) const {
    for (const auto& c : cells)
        if (c.size == size && c.method == method) return &c;
    return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    report.config = config;
    const MetricKind metric = metric_for(config.benchmark);
    const auto methods = method_list(config);

    for (int size : config.sizes) {
        Instance inst = make_instance(config, size);
        // Baseline must come first within a size so relatives can refer to it.
        double baseline_avg = NAN;
        for (const auto& method : methods) {
            CellResult cell;
            cell.benchmark = config.benchmark;
            cell.label = inst.label;
            cell.size = size;
            cell.method = method.name;
            cell.metric = metric;

            Circuit transpiled = method.pe ? rewrite_to_rzx(inst.base)
                                           : decompose_to_basis(inst.base, BasisSet::CxBasis);
            ScheduledCircuit sched = schedule_asap(transpiled, config.durations);
            if (method.has_dd) {
                DDSequence seq = build_sequence(method.seq);
                auto [with_dd, rep] = insert_dd(sched, seq, config.durations);
                cell.insertion = rep;
                cell.windows_considered = rep.windows_considered;
                cell.windows_filled = rep.windows_filled;
                sched = std::move(with_dd);
            }
            for (int rep = 0; rep < config.repeats; ++rep) {
                std::uint64_t cell_seed = mix_seed(
                    config.seed, fnv1a(method.name, fnv1a(config.benchmark)) ^
                                     (static_cast<std::uint64_t>(size) << 20) ^
                                     static_cast<std::uint64_t>(rep));
                NoiseModel noise = config.noise;
                noise.seed = cell_seed;
                CountsResult counts = simulate(sched, noise, config.shots);
                double value = 0;
                switch (metric) {
                    case MetricKind::Pst: value = pst(counts, inst.expected); break;
                    case MetricKind::Jsd:
                        value = jsd(counts_to_distribution(counts), inst.ideal);
                        break;
                    case MetricKind::ApproxRatio:
                        value = approximation_ratio(counts, inst.graph);
                        break;
                }
                cell.raw.push_back(value);
                cell.repeat_seeds.push_back(cell_seed);
            }
            double sum = 0;
            for (double v : cell.raw) sum += v;
            cell.avg = sum / static_cast<double>(cell.raw.size());

            cell.flag = "ok";
            if (method.name == "baseline") baseline_avg = cell.avg;
            const bool dd_not_inserted = method.has_dd && cell.windows_filled == 0;
            if (dd_not_inserted) {
                cell.flag = "not_inserted";
            } else if (method.name != "baseline") {
                bool defined = metric == MetricKind::ApproxRatio ||
                               (baseline_avg != 0 && (metric != MetricKind::Jsd || cell.avg != 0));
                if (defined) cell.relative = relative_report(baseline_avg, cell.avg, metric);
            }
            if (metric == MetricKind::Pst && cell.avg <= 0.1 && cell.flag == "ok")
                cell.flag = "low_pst";
            report.cells.push_back(std::move(cell));
        }
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        auto write = [&](const std::string& name, const std::string& content) {
            std::ofstream out(config.out_dir + "/" + name, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + name + " in " + config.out_dir);
            out << content;
        };
        write("results.csv", results_csv(report));
        write("manifest.json", manifest_json(report));
        emit_plot_data(report, config.out_dir);
    }
    return report;
}

std::string results_csv(const ExperimentReport& report) {
    std::string out = "benchmark,label,size,method,metric,value,relative,seed,repeat,flag\n";
    for (const auto& cell : report.cells) {
        for (size_t r = 0; r < cell.raw.size(); ++r) {
            out += cell.benchmark + "," + cell.label + "," + std::to_string(cell.size) + "," +
                   cell.method + "," + metric_name(cell.metric) + "," + fmt_double(cell.raw[r]) +
                   ",," + std::to_string(cell.repeat_seeds[r]) + "," + std::to_string(r) + "," +
                   cell.flag + "\n";
        }
        out += cell.benchmark + "," + cell.label + "," + std::to_string(cell.size) + "," +
               cell.method + "," + metric_name(cell.metric) + "," + fmt_double(cell.avg) + "," +
               (std::isnan(cell.relative) ? "" : fmt_double(cell.relative)) + "," +
               std::to_string(report.config.seed) + ",avg," + cell.flag + "\n";
    }
    return out;
}

std::string manifest_json(const ExperimentReport& report) {
    const auto& cfg = report.config;
    nlohmann::json j;
    j["benchmark"] = cfg.benchmark;
    j["sizes"] = cfg.sizes;
    j["dd"] = cfg.dd;
    j["pulse_efficient"] = cfg.pulse_efficient;
    j["shots"] = cfg.shots;
    j["repeats"] = cfg.repeats;
    j["master_seed"] = cfg.seed;
    j["secret_mode"] = cfg.secret_mode;
    j["noise_profile"] = cfg.noise.name;
    j["noise_file"] = cfg.noise_file;
    j["pipeline_order"] = {"rewrite", "schedule", "insert_dd", "simulate"};
    std::string canon = cfg.benchmark + "|" + std::to_string(cfg.shots) + "|" +
                        std::to_string(cfg.repeats) + "|" + std::to_string(cfg.seed) + "|" +
                        cfg.secret_mode + "|" + (cfg.pulse_efficient ? "pe" : "nope");
    for (int s : cfg.sizes) canon += "|" + std::to_string(s);
    for (const auto& d : cfg.dd) canon += "|" + d;
    j["config_hash"] = fnv1a(canon);
    j["cells"] = nlohmann::json::array();
    for (const auto& cell : report.cells) {
        nlohmann::json jc;
        jc["label"] = cell.label;
        jc["size"] = cell.size;
        jc["method"] = cell.method;
        jc["seeds"] = cell.repeat_seeds;
        jc["windows_considered"] = cell.windows_considered;
        jc["windows_filled"] = cell.windows_filled;
        jc["insertion_report"] = nlohmann::json::parse(insertion_report_to_json(cell.insertion));
        j["cells"].push_back(std::move(jc));
    }
    return j.dump(2);
}

void emit_plot_data(const ExperimentReport& report, const std::string& dir) {
    const std::string bench = report.config.benchmark;
    std::string file;
    if (bench == "bv") file = "fig4-like.csv";
    else if (bench == "qft") file = "fig5-qft-like.csv";
    else if (bench == "gs") file = "fig5-gs-like.csv";
    else if (is_qaoa(bench)) file = report.config.pulse_efficient ? "fig7-like.csv" : "fig6-like.csv";
    else return; // hs: DD never applies, nothing to plot
    std::string out = "benchmark,label,size,method,relative\n";
    for (const auto& cell : report.cells) {
        if (cell.method == "baseline" || cell.flag == "not_inserted") continue;
        if (std::isnan(cell.relative)) continue;
        out += cell.benchmark + "," + cell.label + "," + std::to_string(cell.size) + "," +
               cell.method + "," + fmt_double(cell.relative) + "\n";
    }
    std::filesystem::create_directories(dir);
    std::ofstream f(dir + "/" + file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + file);
    f << out;
}

} // namespace ddforge
