#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spindrift/diagnostics.hpp"
#include "spindrift/state.hpp"

namespace spindrift {

// Column order of the time-series CSV; stable, versioned by this exact string.
inline constexpr const char* kCsvHeader =
    "t,S,E_total,E_spin,E_em,E_ex,min_rho,max_rho,max_abs_s,max_m_defect,"
    "resE,resH,picard_iters,beta_ok,diss_rate";

// Shortest-faithful decimal at 17 significant digits, locale-independent.
std::string format_real(Real v);

std::string csv_line(const DiagnosticsRecord& rec);
void write_csv(const std::string& path,
               const std::vector<DiagnosticsRecord>& recs);

// Binary state container: magic "SDML1\n"; little-endian int32 nx, ny, field
// count; per field a 16-byte NUL-padded ASCII name followed by nx*ny
// little-endian 64-bit floats in row-major order (x fastest).
void write_snapshot(const std::string& path, const SimState& st);

struct SnapshotData {
  int nx = 0, ny = 0;
  std::vector<std::pair<std::string, Field>> fields;

  const Field* field(const std::string& name) const {
    for (const auto& f : fields)
      if (f.first == name) return &f.second;
    return nullptr;
  }
};

SnapshotData read_snapshot(const std::string& path);

void ensure_directory(const std::string& path);

}  // namespace spindrift
