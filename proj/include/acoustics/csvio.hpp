#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "acoustics/analysis_types.hpp"
#include "acoustics/grid.hpp"

namespace acoustics {

/// Shortest round-trippable decimal rendering of a double ("%.17g" trimmed),
/// shared by every CSV writer so identical runs produce identical bytes.
std::string format_double(double v);

// Field CSV: header "# field v1", columns i[,j],value.
void write_field_csv(std::ostream& os, const Field& f);
Field read_field_csv(std::istream& is, const Grid& g);  // throws on malformed input

// Energy CSV: header "# energy v1",
// columns t,E0,E1,E2_accum,alpha_min,alpha_max,E01,E02,E03,E11,E12,E13,E20.
void write_energy_csv(std::ostream& os, std::span<const EnergyReport> rows);

void write_field_file(const std::string& path, const Field& f);
Field read_field_file(const std::string& path, const Grid& g);

}  // namespace acoustics
