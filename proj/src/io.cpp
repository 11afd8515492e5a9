#include "spindrift/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include "spindrift/errors.hpp"

namespace spindrift {

namespace {

constexpr char kMagic[6] = {'S', 'D', 'M', 'L', '1', '\n'};
constexpr int kNameBytes = 16;

void put_i32(std::ostream& out, std::int32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::int32_t get_i32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw IoError("truncated snapshot header");
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(b[k]) << (8 * k);
  return static_cast<std::int32_t>(v);
}

void put_f64(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw IoError("truncated snapshot payload");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

void put_field(std::ostream& out, const char* name, const Field& f) {
  char buf[kNameBytes] = {};
  for (int k = 0; name[k] != '\0' && k < kNameBytes - 1; ++k) buf[k] = name[k];
  out.write(buf, kNameBytes);
  for (int j = 0; j < f.cols(); ++j)
    for (int i = 0; i < f.rows(); ++i) put_f64(out, f(i, j));
}

}  // namespace

std::string format_real(Real v) {
  char buf[64];
  auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw IoError("number formatting failed");
  return std::string(buf, res.ptr);
}

std::string csv_line(const DiagnosticsRecord& rec) {
  std::string out;
  out.reserve(256);
  auto add = [&out](const std::string& s) {
    if (!out.empty()) out.push_back(',');
    out += s;
  };
  add(format_real(rec.t));
  add(format_real(rec.S));
  add(format_real(rec.E_total));
  add(format_real(rec.E_spin));
  add(format_real(rec.E_em));
  add(format_real(rec.E_ex));
  add(format_real(rec.min_rho));
  add(format_real(rec.max_rho));
  add(format_real(rec.max_abs_s));
  add(format_real(rec.max_m_defect));
  add(format_real(rec.resE));
  add(format_real(rec.resH));
  add(std::to_string(rec.picard_iters));
  add(rec.beta_ok ? "1" : "0");
  add(format_real(rec.diss_rate));
  return out;
}

void write_csv(const std::string& path,
               const std::vector<DiagnosticsRecord>& recs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const DiagnosticsRecord& rec : recs) out << csv_line(rec) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_snapshot(const std::string& path, const SimState& st) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof kMagic);
  const int nx = static_cast<int>(st.rho.rows());
  const int ny = static_cast<int>(st.rho.cols());
  put_i32(out, nx);
  put_i32(out, ny);
  put_i32(out, 13);
  put_field(out, "rho", st.rho);
  put_field(out, "s_x", st.s.x);
  put_field(out, "s_y", st.s.y);
  put_field(out, "s_z", st.s.z);
  put_field(out, "E_x", st.E.x);
  put_field(out, "E_y", st.E.y);
  put_field(out, "E_z", st.E.z);
  put_field(out, "H_x", st.H.x);
  put_field(out, "H_y", st.H.y);
  put_field(out, "H_z", st.H.z);
  put_field(out, "m_x", st.m.x);
  put_field(out, "m_y", st.m.y);
  put_field(out, "m_z", st.m.z);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) ||
      std::string(magic, sizeof magic) != std::string(kMagic, sizeof kMagic))
    throw IoError("'" + path + "' is not a snapshot file");
  SnapshotData data;
  data.nx = get_i32(in);
  data.ny = get_i32(in);
  const std::int32_t nfields = get_i32(in);
  if (data.nx < 1 || data.ny < 1 || nfields < 0 || nfields > 1024)
    throw IoError("snapshot header out of range");
  for (std::int32_t f = 0; f < nfields; ++f) {
    char name[kNameBytes];
    if (!in.read(name, kNameBytes)) throw IoError("truncated field name");
    std::size_t len = 0;
    while (len < kNameBytes && name[len] != '\0') ++len;
    Field field(data.nx, data.ny);
    for (int j = 0; j < data.ny; ++j)
      for (int i = 0; i < data.nx; ++i) field(i, j) = get_f64(in);
    data.fields.emplace_back(std::string(name, len), std::move(field));
  }
  return data;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
}

}  // namespace spindrift
