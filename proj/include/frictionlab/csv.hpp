#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "frictionlab/diagnostics.hpp"
#include "frictionlab/grid.hpp"
#include "frictionlab/state.hpp"

namespace frictionlab::csv {

/// Shortest representation that reads back to the same double.
std::string format(double x);

void write_row(std::ostream& out, std::span<const double> values);
void write_header(std::ostream& out, std::span<const std::string> columns);

// t, x, rho_1..rho_n, v_1..v_n, theta
std::vector<std::string> snapshot_columns_class2(std::size_t n);
// t, x, rho_1..rho_n, v, theta, u_1..u_n
std::vector<std::string> snapshot_columns_class1(std::size_t n);

void write_snapshot(std::ostream& out, double t, const StateII& state, const Grid1D& grid);
void write_snapshot(std::ostream& out, double t, const StateI& state, const Grid1D& grid);

// t, H, friction_dissipation, conduction_dissipation, coercivity_margin, R_norm, Q_norm
std::vector<std::string> relentropy_columns();
void write_relentropy(std::ostream& out, const RelEntropyReport& report);

}  // namespace frictionlab::csv
