#include "htb/csv.hpp"

#include <cstdio>

namespace htb {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_paths_csv_header(std::ostream& out) {
  out << "path,t,S,x,lambda,db1,db2,jump,measure\n";
}

void write_path_csv_rows(std::ostream& out, const Path& path, std::size_t path_index) {
  const char* measure = measure_name(path.measure);
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const MarketState& st = path.states[k];
    const bool has_step = k >= 1;
    out << path_index << ',' << format_double(st.t) << ',' << format_double(st.s) << ','
        << format_double(st.x) << ',' << format_double(st.lambda) << ','
        << format_double(has_step ? path.db1[k - 1] : 0.0) << ','
        << format_double(has_step ? path.db2[k - 1] : 0.0) << ','
        << (has_step ? int(path.jumps[k - 1]) : 0) << ',' << measure << '\n';
  }
}

void write_paths_csv(std::ostream& out, const Ensemble& ensemble) {
  write_paths_csv_header(out);
  for (std::size_t i = 0; i < ensemble.paths.size(); ++i)
    write_path_csv_rows(out, ensemble.paths[i], i);
}

void write_density_csv(std::ostream& out, std::span<const DensityRecord> records) {
  out << "path_index,variant,log_m\n";
  for (const DensityRecord& rec : records) {
    out << rec.path_index << ',' << density_variant_name(rec.variant) << ','
        << format_double(rec.log_m) << '\n';
  }
}

}  // namespace htb
