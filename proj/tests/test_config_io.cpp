#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spindrift/config.hpp"
#include "spindrift/errors.hpp"
#include "spindrift/io.hpp"
#include "spindrift/measure.hpp"

using namespace spindrift;

namespace {

const std::string kScratch = "/tmp/sdml_cfgio";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool roundtrips(Real v) {
  const std::string s = format_real(v);
  return std::strtod(s.c_str(), nullptr) == v;
}

}  // namespace

TEST_CASE("defaults fill an almost empty document") {
  const RunConfig rc =
      parse_config("{ grid: {nx: 32, ny: 32}, time: {dt: 1e-4, t_end: 0}, }");
  CHECK(rc.nx == 32);
  CHECK(rc.ny == 32);
  CHECK(rc.Lx == 1.0);
  CHECK(rc.Ly == 1.0);
  CHECK(rc.omega1.x0 == 0.25);
  CHECK(rc.omega1.x1 == 0.75);
  CHECK(rc.omega1.y0 == 0.25);
  CHECK(rc.omega1.y1 == 0.75);
  CHECK(!rc.omega2.has_value());
  CHECK(rc.bc == std::array<char, 4>{'D', 'D', 'N', 'N'});
  CHECK(!rc.periodic);
  CHECK(rc.alpha == 1.0);
  CHECK(rc.beta == 0.1);
  CHECK(rc.gamma == 1.0);
  CHECK(rc.D == 1.0);
  CHECK(rc.tau == 1.0);
  CHECK(rc.rho_D == 1.0);
  CHECK(rc.C.kind == "constant");
  CHECK(rc.C.base == 1.0);
  CHECK(rc.C.amplitude == 0.0);
  REQUIRE(rc.dt.has_value());
  CHECK(*rc.dt == 1e-4);
  CHECK(!rc.cfl.has_value());
  CHECK(rc.t_end == 0.0);
  CHECK(rc.output_every == 1);
  CHECK(rc.sigma == 1.0);
  CHECK(rc.picard_tol == 1e-8);
  CHECK(rc.picard_max == 50);
  CHECK(rc.eps_x == 0.0);
  CHECK(rc.eps_t == 0.0);
  CHECK(std::isinf(rc.M_trunc));
  CHECK(rc.output.directory == "out");
  CHECK(!rc.output.snapshot);
  CHECK(rc.init_profile == "uniform");
  CHECK(rc.init_amplitude == 0.1);
  CHECK(!rc.skip_validation);
  CHECK(rc.seed == 0);
}

TEST_CASE("cfl sets the step from the finer spacing") {
  const RunConfig rc = parse_config(
      "{ grid: {nx: 16, ny: 32, Lx: 1, Ly: 1}, time: {cfl: 0.25, t_end: 0} }");
  REQUIRE(rc.cfl.has_value());
  const BuildResult br = build_run(rc);
  CHECK(br.cfgs.coupling.dt == 0.25 * (1.0 / 32.0));
}

TEST_CASE("malformed documents report where they break") {
  bool threw = false;
  try {
    parse_config("{\n  grid {nx: 32},\n}");
  } catch (const ParseError& e) {
    threw = true;
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
  CHECK(threw);

  threw = false;
  try {
    parse_config(
        "{ grid: {nx: 32, ny: 32}, grid: {nx: 8, ny: 8},\n"
        "  time: {dt: 1e-4, t_end: 0} }");
  } catch (const ParseError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    CHECK(e.line == 1);
  }
  CHECK(threw);
}

TEST_CASE("bad values name their dotted path") {
  struct Case {
    const char* doc;
    const char* field;
  };
  const Case cases[] = {
      {"{ grid: {nx: 32, ny: 32}, physics: {zeta: 1},"
       "  time: {dt: 1e-4, t_end: 0} }",
       "physics.zeta"},
      {"{ grid: {nx: 32, ny: 32},"
       "  domains: {omega1: [0.5, 1.5, 0.25, 0.75]},"
       "  time: {dt: 1e-4, t_end: 0} }",
       "domains.omega1"},
      {"{ grid: {nx: 32, ny: 32}, physics: {tau: -1},"
       "  time: {dt: 1e-4, t_end: 0} }",
       "physics.tau"},
      {"{ grid: {nx: 32, ny: 32} }", "time.dt"},
      {"{ grid: {nx: 32, ny: 32},"
       "  bc: {left: D, right: D, bottom: D, top: D},"
       "  time: {dt: 1e-4, t_end: 0} }",
       "bc"},
      {"{ grid: {nx: 32, ny: 32}, coupling: {sigma: 1.5},"
       "  time: {dt: 1e-4, t_end: 0} }",
       "coupling.sigma"},
      {"{ grid: {nx: 2, ny: 32}, time: {dt: 1e-4, t_end: 0} }", "grid.nx"},
  };
  for (const Case& c : cases) {
    bool threw = false;
    try {
      parse_config(c.doc);
    } catch (const ConfigError& e) {
      threw = true;
      CHECK(e.field == c.field);
    }
    CHECK(threw);
  }
}

TEST_CASE("every preset parses and builds") {
  const std::vector<std::string> names = preset_names();
  REQUIRE(names.size() == 5);
  CHECK(names[0] == "equilibrium");
  CHECK(names[1] == "precession");
  CHECK(names[2] == "interlayer");
  CHECK(names[3] == "regularized");
  CHECK(names[4] == "moser");
  for (const std::string& name : names) {
    const RunConfig rc = parse_config(preset_text(name));
    const BuildResult br = build_run(rc);
    CHECK(br.grid.nx() >= 3);
  }
  CHECK_THROWS_AS(preset_text("nonexistent"), ConfigError);
}

TEST_CASE("preset contents survive the build") {
  const BuildResult eq = build_run(parse_config(preset_text("equilibrium")));
  CHECK(eq.cfgs.coupling.dt == 5e-5);
  CHECK(eq.cfgs.coupling.t_end == 1.0);
  CHECK(!eq.skip_validation);

  const BuildResult pr = build_run(parse_config(preset_text("precession")));
  CHECK(pr.grid.nx() == 6);
  CHECK(pr.skip_validation);

  const RunConfig il = parse_config(preset_text("interlayer"));
  CHECK(il.nx == 64);
  CHECK(il.omega2.has_value());
  CHECK(il.C.kind == "sine");

  const BuildResult rg = build_run(parse_config(preset_text("regularized")));
  CHECK(rg.cfgs.reg.eps_x == 0.0625);
  CHECK(rg.cfgs.reg.eps_t == 2.5e-4);
  CHECK(rg.params.M_trunc == 3.0);

  const BuildResult mo = build_run(parse_config(preset_text("moser")));
  CHECK(mo.params.beta == 0.0);
  CHECK(mo.params.tau == 10.0);
  CHECK(linf(mo.params.C) == 2.0);
}

TEST_CASE("a document read from disk parses like the same text") {
  ensure_directory(kScratch);
  const std::string text =
      "{ grid: {nx: 12, ny: 12}, time: {dt: 2e-4, t_end: 0.1},\n"
      "  physics: {beta: 0.3}, seed: 7 }";
  const std::string path = kScratch + "/doc.cfg";
  {
    std::ofstream out(path, std::ios::binary);
    out << text;
  }
  const RunConfig a = parse_config_file(path);
  const RunConfig b = parse_config(text);
  CHECK(a.nx == b.nx);
  CHECK(a.beta == b.beta);
  CHECK(*a.dt == *b.dt);
  CHECK(a.seed == 7);
  CHECK_THROWS_AS(parse_config_file(kScratch + "/missing.cfg"), IoError);
}

TEST_CASE("the csv header is stable") {
  CHECK(std::string(kCsvHeader) ==
        "t,S,E_total,E_spin,E_em,E_ex,min_rho,max_rho,max_abs_s,max_m_defect,"
        "resE,resH,picard_iters,beta_ok,diss_rate");
}

TEST_CASE("csv output is deterministic down to the byte") {
  ensure_directory(kScratch);
  const std::string empty_path = kScratch + "/empty.csv";
  write_csv(empty_path, {});
  CHECK(slurp(empty_path) == std::string(kCsvHeader) + "\n");

  DiagnosticsRecord r1;
  r1.t = 0.1;
  r1.S = -1.25;
  r1.E_total = 3.0 / 7.0;
  r1.min_rho = 1e-300;
  r1.picard_iters = 4;
  r1.beta_ok = false;
  r1.diss_rate = 2.5;
  DiagnosticsRecord r2;
  r2.t = 0.2;
  r2.max_abs_s = 0.30000000000000004;
  r2.diss_rate = 0.0;
  const std::vector<DiagnosticsRecord> recs = {r1, r2};
  const std::string pa = kScratch + "/a.csv";
  const std::string pb = kScratch + "/b.csv";
  write_csv(pa, recs);
  write_csv(pb, recs);
  const std::string bytes = slurp(pa);
  CHECK(bytes == slurp(pb));
  CHECK(bytes.substr(0, std::string(kCsvHeader).size()) == kCsvHeader);
  // One header plus one line per record.
  int newlines = 0;
  for (char ch : bytes) newlines += (ch == '\n');
  CHECK(newlines == 3);
  CHECK(bytes.find(',') != std::string::npos);
  CHECK(bytes.find("nan") == std::string::npos);

  // The t column of the first record parses back to exactly 0.1.
  const std::string line = csv_line(r1);
  CHECK(std::strtod(line.c_str(), nullptr) == 0.1);
}

TEST_CASE("printed reals parse back bitwise") {
  const Real vals[] = {0.0,    1.0,     -1.0,        0.1,   1.0 / 3.0,
                       1e-300, -2.5e17, 6.02214e23,  5e-5,  -0.0625,
                       kInf,   -kInf,   0.30000000000000004};
  for (Real v : vals) CHECK(roundtrips(v));
}

TEST_CASE("snapshots restore every field bitwise") {
  ensure_directory(kScratch + "/nested/deep");
  SimState st = SimState::zero(8, 8);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) {
      st.rho(i, j) = 1.0 + 0.01 * i + 0.5 * j;
      st.s.x(i, j) = std::sin(0.3 * i + j);
      st.s.y(i, j) = -0.25 * i;
      st.s.z(i, j) = 1.0 / (1 + i + j);
      st.E.x(i, j) = i * j * 1e-3;
      st.E.y(i, j) = -j;
      st.E.z(i, j) = 0.125;
      st.H.x(i, j) = std::cos(Real(i));
      st.H.y(i, j) = 7.0;
      st.H.z(i, j) = -1e-7 * j;
      st.m.x(i, j) = 0.6;
      st.m.y(i, j) = 0.8;
      st.m.z(i, j) = i - j;
    }
  const std::string path = kScratch + "/nested/deep/state.bin";
  write_snapshot(path, st);

  const SnapshotData sd = read_snapshot(path);
  CHECK(sd.nx == 8);
  CHECK(sd.ny == 8);
  REQUIRE(sd.fields.size() == 13);
  const char* expect_names[13] = {"rho", "s_x", "s_y", "s_z", "E_x",
                                  "E_y", "E_z", "H_x", "H_y", "H_z",
                                  "m_x", "m_y", "m_z"};
  for (int k = 0; k < 13; ++k) CHECK(sd.fields[k].first == expect_names[k]);

  const Field* views[13] = {&st.rho, &st.s.x, &st.s.y, &st.s.z, &st.E.x,
                            &st.E.y, &st.E.z, &st.H.x, &st.H.y, &st.H.z,
                            &st.m.x, &st.m.y, &st.m.z};
  for (int k = 0; k < 13; ++k) {
    const Field* f = sd.field(expect_names[k]);
    REQUIRE(f != nullptr);
    CHECK((*f == *views[k]).all());
  }
  CHECK(sd.field("bogus") == nullptr);

  // The container itself starts with its magic tag.
  const std::string raw = slurp(path);
  REQUIRE(raw.size() > 6);
  CHECK(raw.substr(0, 6) == "SDML1\n");
  CHECK_THROWS_AS(read_snapshot(kScratch + "/nowhere.bin"), IoError);
}
