#include "ddforge/circuit.hpp"

#include <cmath>
#include <unordered_map>

#include <json.hpp>

namespace ddforge {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::SX: return "sx";
        case GateKind::RZ: return "rz";
        case GateKind::RX: return "rx";
        case GateKind::H: return "h";
        case GateKind::CZ: return "cz";
        case GateKind::CX: return "cx";
        case GateKind::RZX: return "rzx";
        case GateKind::RZZ: return "rzz";
        case GateKind::CP: return "cp";
        case GateKind::Delay: return "delay";
        case GateKind::Measure: return "measure";
        case GateKind::Barrier: return "barrier";
    }
    throw std::logic_error("unreachable gate kind");
}

GateKind gate_from_name(const std::string& name) {
    static const std::unordered_map<std::string, GateKind> table = {
        {"x", GateKind::X},     {"y", GateKind::Y},         {"sx", GateKind::SX},
        {"rz", GateKind::RZ},   {"rx", GateKind::RX},       {"h", GateKind::H},
        {"cz", GateKind::CZ},   {"cx", GateKind::CX},       {"rzx", GateKind::RZX},
        {"rzz", GateKind::RZZ}, {"cp", GateKind::CP},       {"delay", GateKind::Delay},
        {"measure", GateKind::Measure}, {"barrier", GateKind::Barrier},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown gate kind: " + name);
    return it->second;
}

int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::RX:
        case GateKind::H:
        case GateKind::Delay:
        case GateKind::Measure:
            return 1;
        case GateKind::CZ:
        case GateKind::CX:
        case GateKind::RZX:
        case GateKind::RZZ:
        case GateKind::CP:
            return 2;
        case GateKind::Barrier:
            return -1;
    }
    throw std::logic_error("unreachable gate kind");
}

bool gate_has_param(GateKind k) {
    switch (k) {
        case GateKind::RZ:
        case GateKind::RX:
        case GateKind::RZX:
        case GateKind::RZZ:
        case GateKind::CP:
            return true;
        default:
            return false;
    }
}

double reduce_angle(double theta) {
    constexpr double four_pi = 4.0 * M_PI;
    double r = std::fmod(theta, four_pi);
    if (r <= -2.0 * M_PI) r += four_pi;
    if (r > 2.0 * M_PI) r -= four_pi;
    return r;
}

Op::Op(GateKind k, std::vector<int> qs, double p, std::int64_t d)
    : kind(k), qubits(std::move(qs)), param(gate_has_param(k) ? reduce_angle(p) : 0.0), duration(d) {}

bool is_single_qubit_gate(const Op& op) {
    switch (op.kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::RX:
        case GateKind::H:
            return true;
        default:
            return false;
    }
}

bool is_two_qubit_gate(const Op& op) {
    return gate_arity(op.kind) == 2;
}

Circuit& Circuit::add(Op op) {
    int arity = gate_arity(op.kind);
    if (arity >= 0 && static_cast<int>(op.qubits.size()) != arity)
        throw std::invalid_argument(std::string("wrong operand count for ") + gate_name(op.kind));
    if (op.kind == GateKind::Barrier && op.qubits.empty())
        throw std::invalid_argument("barrier needs at least one qubit");
    if (op.kind == GateKind::Delay && op.duration < 0)
        throw std::invalid_argument("delay duration must be >= 0");
    for (size_t i = 0; i < op.qubits.size(); ++i) {
        int q = op.qubits[i];
        if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range");
        for (size_t j = i + 1; j < op.qubits.size(); ++j)
            if (op.qubits[j] == q) throw std::invalid_argument("duplicate qubit operand");
    }
    ops.push_back(std::move(op));
    return *this;
}

bool Circuit::has_measure() const {
    for (const auto& op : ops)
        if (op.kind == GateKind::Measure) return true;
    return false;
}

std::vector<int> Circuit::measured_qubits() const {
    std::vector<int> out;
    for (const auto& op : ops)
        if (op.kind == GateKind::Measure) out.push_back(op.qubits[0]);
    std::sort(out.begin(), out.end());
    return out;
}

void Circuit::validate() const {
    if (num_qubits <= 0) throw std::invalid_argument("circuit needs a positive qubit count");
    std::vector<bool> measured(num_qubits, false);
    for (const auto& op : ops) {
        for (int q : op.qubits) {
            if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range");
            if (measured[q]) throw std::invalid_argument("op after measure on qubit " + std::to_string(q));
        }
        if (op.kind == GateKind::Measure) measured[op.qubits[0]] = true;
        if (op.kind == GateKind::Delay && op.duration < 0)
            throw std::invalid_argument("delay duration must be >= 0");
    }
}

std::string circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["num_qubits"] = c.num_qubits;
    j["ops"] = nlohmann::json::array();
    for (const auto& op : c.ops) {
        nlohmann::json jo;
        jo["gate"] = gate_name(op.kind);
        jo["qubits"] = op.qubits;
        jo["params"] = gate_has_param(op.kind) ? nlohmann::json::array({op.param})
                                               : nlohmann::json::array();
        if (op.kind == GateKind::Delay) jo["duration"] = op.duration;
        j["ops"].push_back(std::move(jo));
    }
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Circuit c(j.at("num_qubits").get<int>(), j.value("name", ""));
    for (const auto& jo : j.at("ops")) {
        GateKind k = gate_from_name(jo.at("gate").get<std::string>());
        std::vector<int> qs = jo.at("qubits").get<std::vector<int>>();
        double p = 0.0;
        if (gate_has_param(k)) {
            auto params = jo.at("params").get<std::vector<double>>();
            if (params.size() != 1) throw std::invalid_argument("expected one parameter");
            p = params[0];
        }
        std::int64_t d = jo.value("duration", std::int64_t{0});
        c.add({k, std::move(qs), p, d});
    }
    return c;
}

} // namespace ddforge
