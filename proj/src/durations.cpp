#include "ddforge/durations.hpp"

#include <cmath>

#include "kvconfig.hpp"

namespace ddforge {

std::int64_t DurationTable::duration_of(const Op& op) const {
    switch (op.kind) {
        case GateKind::RZ: return rz;
        case GateKind::SX: return sx;
        case GateKind::X: return x;
        case GateKind::Y: return y;
        case GateKind::RX: return rx;
        case GateKind::H: return h;
        case GateKind::CX: return cx;
        case GateKind::Measure: return measure;
        case GateKind::Delay: return op.duration;
        case GateKind::Barrier: return 0;
        case GateKind::RZX: {
            std::int64_t d = std::llround(rzx_alpha + rzx_beta * std::abs(op.param));
            return d < 0 ? 0 : d;
        }
        default:
            throw std::invalid_argument(std::string("no duration entry for gate kind ") +
                                        gate_name(op.kind));
    }
}

DurationTable load_duration_config(const std::string& path) {
    auto kv = load_kv_file(path);
    DurationTable t;
    t.dt_ns = kv_double(kv, "dt_ns", t.dt_ns);
    t.rz = kv_int(kv, "rz", t.rz);
    t.sx = kv_int(kv, "sx", t.sx);
    t.x = kv_int(kv, "x", t.x);
    t.y = kv_int(kv, "y", t.y);
    t.rx = kv_int(kv, "rx", t.rx);
    t.h = kv_int(kv, "h", t.h);
    t.cx = kv_int(kv, "cx", t.cx);
    t.measure = kv_int(kv, "measure", t.measure);
    t.rzx_alpha = kv_double(kv, "rzx_alpha", t.rzx_alpha);
    t.rzx_beta = kv_double(kv, "rzx_beta", t.rzx_beta);
    for (auto v : {t.rz, t.sx, t.x, t.y, t.rx, t.h, t.cx, t.measure})
        if (v < 0) throw std::runtime_error("durations must be >= 0 in " + path);
    if (t.rzx_beta < 0) throw std::runtime_error("rzx_beta must be >= 0 in " + path);
    return t;
}

void save_duration_config(const DurationTable& t, const std::string& path) {
    char alpha[64], beta[64], dt[64];
    std::snprintf(alpha, sizeof alpha, "%.10g", t.rzx_alpha);
    std::snprintf(beta, sizeof beta, "%.10g", t.rzx_beta);
    std::snprintf(dt, sizeof dt, "%.10g", t.dt_ns);
    save_kv_file(path, "gate durations in dt",
                 {{"dt_ns", dt},
                  {"rz", std::to_string(t.rz)},
                  {"sx", std::to_string(t.sx)},
                  {"x", std::to_string(t.x)},
                  {"y", std::to_string(t.y)},
                  {"rx", std::to_string(t.rx)},
                  {"h", std::to_string(t.h)},
                  {"cx", std::to_string(t.cx)},
                  {"measure", std::to_string(t.measure)},
                  {"rzx_alpha", alpha},
                  {"rzx_beta", beta}});
}

} // namespace ddforge
