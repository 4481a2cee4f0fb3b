#pragma once

#include <ostream>
#include <span>
#include <string>

#include "htb/girsanov.hpp"
#include "htb/path.hpp"

namespace htb {

/// "%.17g": 17 significant digits, enough to round-trip any double exactly.
/// '.' decimal separator, locale-independent.
std::string format_double(double x);

/// One row per grid node and path:
///   path,t,S,x,lambda,db1,db2,jump,measure
/// Row k >= 1 carries the increments and jump flag of the step from node k-1
/// to node k; row 0 carries zeros.
void write_paths_csv(std::ostream& out, const Ensemble& ensemble);

/// Split form for streaming writers.
void write_paths_csv_header(std::ostream& out);
void write_path_csv_rows(std::ostream& out, const Path& path, std::size_t path_index);

/// path_index,variant,log_m
void write_density_csv(std::ostream& out, std::span<const DensityRecord> records);

}  // namespace htb
