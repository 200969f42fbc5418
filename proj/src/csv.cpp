#include "frictionlab/csv.hpp"

#include <charconv>

namespace frictionlab::csv {

std::string format(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out << ',';
    out << format(values[k]);
  }
  out << '\n';
}

void write_header(std::ostream& out, std::span<const std::string> columns) {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) out << ',';
    out << columns[k];
  }
  out << '\n';
}

std::vector<std::string> snapshot_columns_class2(std::size_t n) {
  std::vector<std::string> c{"t", "x"};
  for (std::size_t i = 1; i <= n; ++i) c.push_back("rho_" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) c.push_back("v_" + std::to_string(i));
  c.push_back("theta");
  return c;
}

std::vector<std::string> snapshot_columns_class1(std::size_t n) {
  std::vector<std::string> c{"t", "x"};
  for (std::size_t i = 1; i <= n; ++i) c.push_back("rho_" + std::to_string(i));
  c.push_back("v");
  c.push_back("theta");
  for (std::size_t i = 1; i <= n; ++i) c.push_back("u_" + std::to_string(i));
  return c;
}

void write_snapshot(std::ostream& out, double t, const StateII& s, const Grid1D& grid) {
  std::vector<double> row;
  for (std::size_t j = 0; j < s.ncells; ++j) {
    row.assign({t, grid.center(j)});
    for (std::size_t i = 0; i < s.n; ++i) row.push_back(s.rho_at(i, j));
    for (std::size_t i = 0; i < s.n; ++i) row.push_back(s.v_at(i, j));
    row.push_back(s.theta[j]);
    write_row(out, row);
  }
}

void write_snapshot(std::ostream& out, double t, const StateI& s, const Grid1D& grid) {
  std::vector<double> row;
  for (std::size_t j = 0; j < s.ncells; ++j) {
    row.assign({t, grid.center(j)});
    for (std::size_t i = 0; i < s.n; ++i) row.push_back(s.rho_at(i, j));
    row.push_back(s.v[j]);
    row.push_back(s.theta[j]);
    for (std::size_t i = 0; i < s.n; ++i) row.push_back(s.u_at(i, j));
    write_row(out, row);
  }
}

std::vector<std::string> relentropy_columns() {
  return {"t", "H", "friction_dissipation", "conduction_dissipation",
          "coercivity_margin", "R_norm", "Q_norm"};
}

void write_relentropy(std::ostream& out, const RelEntropyReport& r) {
  const double row[] = {r.t, r.H, r.friction_dissipation, r.conduction_dissipation,
                        r.coercivity_margin, r.R_norm, r.Q_norm};
  write_row(out, row);
}

}  // namespace frictionlab::csv
