#include "ddforge/rzx.hpp"

#include <cmath>

#include "ddforge/basis.hpp"

namespace ddforge {

std::vector<Op> echoed_rzx(int control, int target, double theta) {
    std::vector<Op> out;
    out.push_back({GateKind::RZX, {control, target}, theta / 2});
    out.push_back({GateKind::X, {control}});
    out.push_back({GateKind::RZX, {control, target}, -theta / 2});
    out.push_back({GateKind::X, {control}});
    return out;
}

Circuit rewrite_to_rzx(const Circuit& c) {
    // Fold two-qubit rotation angles into (-pi, pi]; the CR pulse-area model
    // is defined on the magnitude and the unitary only changes by phase.
    Circuit folded(c.num_qubits, c.name);
    for (Op op : c.ops) {
        if (op.kind == GateKind::RZZ || op.kind == GateKind::RZX) {
            double a = std::remainder(op.param, 2 * M_PI); // (-pi, pi]
            if (a <= -M_PI) a += 2 * M_PI;
            if (std::abs(a) < 1e-12) continue; // identity, drop
            op.param = a;
        }
        folded.ops.push_back(std::move(op));
    }
    return decompose_to_basis(folded, BasisSet::RzxBasis);
}

} // namespace ddforge
