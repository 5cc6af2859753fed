#include "declab/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "declab/errors.hpp"

namespace declab::lab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw ValidationError("csv row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw IoError("short write to '" + path + "'");
}

void write_energy_csv(const std::string& path, const wave::TrajectoryRecord& traj) {
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& e = traj.energies[k];
    rows.push_back({traj.times[k], e.total, e.kinetic_u, e.kinetic_v, e.elastic_u,
                    e.elastic_v, e.nonlinear_potential, traj.dissipation_cum[k]});
  }
  write_table_csv(path,
                  {"t", "E_total", "E_kin_u", "E_kin_v", "E_el_u", "E_el_v", "E_nl",
                   "dissipation_cum"},
                  rows);
}

void write_gcc_csv(const std::string& path, const rays::GccReport& report) {
  std::vector<std::vector<double>> rows;
  rows.reserve(report.rays.size());
  for (const auto& r : report.rays) {
    double family = 0;
    if (r.family == "vertical") family = 1;
    else if (r.family == "horizontal") family = 2;
    rows.push_back({family, r.start.x, r.start.y, r.direction.x, r.direction.y,
                    r.hit ? 1.0 : 0.0, r.first_hit});
  }
  write_table_csv(path, {"family", "start_x", "start_y", "dir_x", "dir_y", "hit", "first_hit"},
                  rows);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ValidationError("csv has no column '" + name + "'");
}

std::vector<double> CsvTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (lineno == 1) {
      t.header = cells;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str())
        throw ValidationError(path + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    if (row.size() != t.header.size())
      throw ValidationError(path + ":" + std::to_string(lineno) + ": row width mismatch");
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw ValidationError(path + ": empty csv");
  return t;
}

}  // namespace declab::lab
