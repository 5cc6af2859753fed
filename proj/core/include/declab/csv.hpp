#pragma once

#include <string>
#include <vector>

#include "declab/gcc.hpp"
#include "declab/trajectory.hpp"

namespace declab::lab {

/// Shortest-round-trip decimal form ("%.17g"); identical bits give identical
/// text, which is what the reproducibility checks compare.
std::string format_double(double x);

/// Write a numeric table with a header row. Throws IoError on open failure.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Energy history, one row per sample:
///   t,E_total,E_kin_u,E_kin_v,E_el_u,E_el_v,E_nl,dissipation_cum
void write_energy_csv(const std::string& path, const wave::TrajectoryRecord& traj);

/// Ray census for a control-region check, one row per ray:
///   family,start_x,start_y,dir_x,dir_y,hit,first_hit
/// (family encoded as 0 = stratified, 1 = vertical, 2 = horizontal).
void write_gcc_csv(const std::string& path, const rays::GccReport& report);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index by name; throws ValidationError when absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// Read a numeric CSV written by the functions above.
CsvTable read_csv(const std::string& path);

}  // namespace declab::lab
