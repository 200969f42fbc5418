#pragma once

#include "frictionlab/class1_solver.hpp"
#include "frictionlab/config.hpp"
#include "frictionlab/state.hpp"

namespace frictionlab {

/// Class-I state from the ic block with u left at zero. Throws DomainError
/// when the preset leaves the validity domain.
StateI make_class1_state(const RunConfig& config);

/// Class-II data paired with `class1`, whose u must be current. Well
/// prepared: the lifted Class-I state (v_i = v + u_i). Otherwise every
/// species starts at the barycentric velocity. Either way velocity_mismatch
/// is then added to species 1 and compensated on the others so the
/// momentum of each cell is unchanged.
StateII make_class2_state(const RunConfig& config, const StateI& class1);

/// Class-I state with u current at t = 0, for the given solver.
StateI initial_class1(const RunConfig& config, const Class1Solver& solver);

}  // namespace frictionlab
