#include "qnogo/dsl.hpp"

namespace qnogo::dsl {

CheckOutcome check(const CompiledMachine& m, const CheckOptions& opts) {
    const std::vector<Qubit> states =
        std::holds_alternative<verify::StateSet>(m.states)
            ? verify::state_set(std::get<verify::StateSet>(m.states), opts.samples, opts.seed)
            : std::get<std::vector<Qubit>>(m.states);

    CheckOutcome out;
    out.name = m.name;
    out.target = m.target_label;
    out.set = m.set_name;
    out.states_checked = states.size();
    if (m.machine) {
        out.verdict = verify::check_machine(*m.machine, m.target, states, opts.tol);
    } else {
        out.verdict = verify::check_universal_gate(*m.candidate, m.target, states, opts.tol);
    }
    return out;
}

}  // namespace qnogo::dsl
