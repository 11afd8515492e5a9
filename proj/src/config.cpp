#include "spindrift/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "spindrift/errors.hpp"

namespace spindrift {

namespace {

// ---------------------------------------------------------------------------
// Tolerant object-notation reader: objects, arrays, numbers, strings, bare
// identifiers (keys or word values), // comments, trailing commas.

struct JValue {
  enum Kind { Obj, Arr, Num, Str, Bool } kind = Obj;
  double num = 0.0;
  std::string str;
  bool flag = false;
  std::vector<std::pair<std::string, JValue>> obj;
  std::vector<JValue> arr;
  int line = 0, col = 0;
};

struct Token {
  enum Kind { LBrace, RBrace, LBracket, RBracket, Colon, Comma, Str, Num,
              Ident, End } kind = End;
  std::string text;
  double num = 0.0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= s_.size()) return t;
    char c = s_[pos_];
    switch (c) {
      case '{': t.kind = Token::LBrace; advance(); return t;
      case '}': t.kind = Token::RBrace; advance(); return t;
      case '[': t.kind = Token::LBracket; advance(); return t;
      case ']': t.kind = Token::RBracket; advance(); return t;
      case ':': t.kind = Token::Colon; advance(); return t;
      case ',': t.kind = Token::Comma; advance(); return t;
      case '"': return lex_string(t);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
        c == '.')
      return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return lex_ident(t);
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     col_);
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token lex_string(Token t) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= s_.size())
        throw ParseError("unterminated string", t.line, t.col);
      char c = s_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= s_.size())
          throw ParseError("unterminated escape", line_, col_);
        char e = s_[pos_];
        if (e == '"' || e == '\\')
          out.push_back(e);
        else if (e == 'n')
          out.push_back('\n');
        else
          throw ParseError(std::string("unsupported escape '\\") + e + "'",
                           line_, col_);
        advance();
      } else if (c == '\n') {
        throw ParseError("newline inside string", line_, col_);
      } else {
        out.push_back(c);
        advance();
      }
    }
    t.kind = Token::Str;
    t.text = std::move(out);
    return t;
  }

  Token lex_number(Token t) {
    std::string raw;
    char prev = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
                c == 'e' || c == 'E' ||
                ((c == '+' || c == '-') &&
                 (raw.empty() || prev == 'e' || prev == 'E'));
      if (!ok) break;
      raw.push_back(c);
      prev = c;
      advance();
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc{} || end != raw.data() + raw.size())
      throw ParseError("malformed number '" + raw + "'", t.line, t.col);
    t.kind = Token::Num;
    t.num = v;
    t.text = std::move(raw);
    return t;
  }

  Token lex_ident(Token t) {
    std::string raw;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      raw.push_back(c);
      advance();
    }
    t.kind = Token::Ident;
    t.text = std::move(raw);
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { bump(); }

  JValue document() {
    if (cur_.kind != Token::LBrace)
      throw ParseError("document must start with '{'", cur_.line, cur_.col);
    JValue v = value();
    if (cur_.kind != Token::End)
      throw ParseError("trailing content after document", cur_.line, cur_.col);
    return v;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  JValue value() {
    JValue v;
    v.line = cur_.line;
    v.col = cur_.col;
    switch (cur_.kind) {
      case Token::LBrace: return object(std::move(v));
      case Token::LBracket: return array(std::move(v));
      case Token::Num:
        v.kind = JValue::Num;
        v.num = cur_.num;
        bump();
        return v;
      case Token::Str:
        v.kind = JValue::Str;
        v.str = cur_.text;
        bump();
        return v;
      case Token::Ident:
        if (cur_.text == "true" || cur_.text == "false") {
          v.kind = JValue::Bool;
          v.flag = cur_.text == "true";
        } else if (cur_.text == "inf") {
          v.kind = JValue::Num;
          v.num = kInf;
        } else {
          v.kind = JValue::Str;  // bare word value
          v.str = cur_.text;
        }
        bump();
        return v;
      default:
        throw ParseError("expected a value", cur_.line, cur_.col);
    }
  }

  JValue object(JValue v) {
    v.kind = JValue::Obj;
    bump();  // '{'
    while (cur_.kind != Token::RBrace) {
      if (cur_.kind != Token::Ident && cur_.kind != Token::Str)
        throw ParseError("expected a key", cur_.line, cur_.col);
      std::string key = cur_.text;
      int kl = cur_.line, kc = cur_.col;
      for (const auto& kv : v.obj)
        if (kv.first == key)
          throw ParseError("duplicate key '" + key + "'", kl, kc);
      bump();
      if (cur_.kind != Token::Colon)
        throw ParseError("expected ':' after key '" + key + "'", cur_.line,
                         cur_.col);
      bump();
      v.obj.emplace_back(std::move(key), value());
      if (cur_.kind == Token::Comma) {
        bump();
      } else if (cur_.kind != Token::RBrace) {
        throw ParseError("expected ',' or '}'", cur_.line, cur_.col);
      }
    }
    bump();  // '}'
    return v;
  }

  JValue array(JValue v) {
    v.kind = JValue::Arr;
    bump();  // '['
    while (cur_.kind != Token::RBracket) {
      v.arr.push_back(value());
      if (cur_.kind == Token::Comma) {
        bump();
      } else if (cur_.kind != Token::RBracket) {
        throw ParseError("expected ',' or ']'", cur_.line, cur_.col);
      }
    }
    bump();  // ']'
    return v;
  }

  Lexer lex_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Schema walk with dotted-path errors.

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const JValue* find(const JValue& obj, const std::string& key) {
  for (const auto& kv : obj.obj)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

void expect_keys(const JValue& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  for (const auto& kv : obj.obj) {
    bool ok = false;
    for (const char* a : allowed)
      if (kv.first == a) ok = true;
    if (!ok) throw ConfigError(join(path, kv.first), "unknown key");
  }
}

const JValue& require_obj(const JValue& v, const std::string& path) {
  if (v.kind != JValue::Obj) throw ConfigError(path, "expected an object");
  return v;
}

Real num_at(const JValue& obj, const std::string& path, const char* key,
            Real fallback) {
  const JValue* v = find(obj, key);
  if (!v) return fallback;
  if (v->kind != JValue::Num)
    throw ConfigError(join(path, key), "expected a number");
  return v->num;
}

int int_at(const JValue& obj, const std::string& path, const char* key,
           int fallback) {
  const JValue* v = find(obj, key);
  if (!v) return fallback;
  if (v->kind != JValue::Num || v->num != std::floor(v->num) ||
      std::abs(v->num) > 2147483647.0)
    throw ConfigError(join(path, key), "expected an integer");
  return static_cast<int>(v->num);
}

bool bool_at(const JValue& obj, const std::string& path, const char* key,
             bool fallback) {
  const JValue* v = find(obj, key);
  if (!v) return fallback;
  if (v->kind != JValue::Bool)
    throw ConfigError(join(path, key), "expected true or false");
  return v->flag;
}

std::string str_at(const JValue& obj, const std::string& path, const char* key,
                   const std::string& fallback) {
  const JValue* v = find(obj, key);
  if (!v) return fallback;
  if (v->kind != JValue::Str)
    throw ConfigError(join(path, key), "expected a string");
  return v->str;
}

Rect rect_at(const JValue& v, const std::string& path) {
  if (v.kind != JValue::Arr || v.arr.size() != 4)
    throw ConfigError(path, "expected [x0, x1, y0, y1]");
  Real c[4];
  for (int k = 0; k < 4; ++k) {
    if (v.arr[k].kind != JValue::Num)
      throw ConfigError(path, "expected [x0, x1, y0, y1] of numbers");
    c[k] = v.arr[k].num;
  }
  return Rect{c[0], c[1], c[2], c[3]};
}

void check_layer(const Rect& r, Real Lx, Real Ly, const std::string& path) {
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
    throw ConfigError(path, "rectangle is empty or inverted");
  if (!(r.x0 > 0 && r.x1 < Lx && r.y0 > 0 && r.y1 < Ly))
    throw ConfigError(path, "rectangle must lie strictly inside the domain");
}

char label_at(const JValue& obj, const std::string& path, const char* key,
              char fallback) {
  std::string s = str_at(obj, path, key, std::string(1, fallback));
  if (s != "D" && s != "N")
    throw ConfigError(join(path, key), "expected D or N");
  return s[0];
}

void require_positive(Real v, const char* path) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be > 0");
}

void require_nonneg(Real v, const char* path) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be >= 0");
}

ProfileSpec profile_at(const JValue& obj, const std::string& path,
                       const char* key, const ProfileSpec& fallback) {
  const JValue* v = find(obj, key);
  if (!v) return fallback;
  std::string p = join(path, key);
  ProfileSpec out;
  if (v->kind == JValue::Num) {
    out.base = v->num;
  } else if (v->kind == JValue::Obj) {
    expect_keys(*v, p, {"kind", "base", "amplitude"});
    out.kind = str_at(*v, p, "kind", "constant");
    if (out.kind != "constant" && out.kind != "sine")
      throw ConfigError(join(p, "kind"), "expected constant or sine");
    out.base = num_at(*v, p, "base", 1.0);
    out.amplitude = num_at(*v, p, "amplitude", 0.0);
  } else {
    throw ConfigError(p, "expected a number or a profile object");
  }
  if (!std::isfinite(out.base) || !std::isfinite(out.amplitude) ||
      out.base - std::abs(out.amplitude) < 0.0)
    throw ConfigError(p, "profile must stay nonnegative");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  JValue doc = Parser(text).document();
  expect_keys(doc, "", {"grid", "domains", "physics", "bc", "time", "coupling",
                        "reg", "output", "init", "seed"});
  RunConfig rc;

  if (const JValue* v = find(doc, "grid")) {
    const JValue& b = require_obj(*v, "grid");
    expect_keys(b, "grid", {"nx", "ny", "Lx", "Ly"});
    rc.nx = int_at(b, "grid", "nx", rc.nx);
    rc.ny = int_at(b, "grid", "ny", rc.ny);
    rc.Lx = num_at(b, "grid", "Lx", rc.Lx);
    rc.Ly = num_at(b, "grid", "Ly", rc.Ly);
  }
  if (rc.nx < 3) throw ConfigError("grid.nx", "must be at least 3");
  if (rc.ny < 3) throw ConfigError("grid.ny", "must be at least 3");
  require_positive(rc.Lx, "grid.Lx");
  require_positive(rc.Ly, "grid.Ly");

  if (const JValue* v = find(doc, "domains")) {
    const JValue& b = require_obj(*v, "domains");
    expect_keys(b, "domains", {"omega1", "omega2"});
    if (const JValue* r = find(b, "omega1"))
      rc.omega1 = rect_at(*r, "domains.omega1");
    if (const JValue* r = find(b, "omega2"))
      rc.omega2 = rect_at(*r, "domains.omega2");
  }
  check_layer(rc.omega1, rc.Lx, rc.Ly, "domains.omega1");
  if (rc.omega2) {
    check_layer(*rc.omega2, rc.Lx, rc.Ly, "domains.omega2");
    const Rect& a = rc.omega1;
    const Rect& b = *rc.omega2;
    if (a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1)
      throw ConfigError("domains.omega2", "overlaps omega1");
  }

  if (const JValue* v = find(doc, "physics")) {
    const JValue& b = require_obj(*v, "physics");
    expect_keys(b, "physics",
                {"alpha", "beta", "gamma", "D", "tau", "rho_D", "C"});
    rc.alpha = num_at(b, "physics", "alpha", rc.alpha);
    rc.beta = num_at(b, "physics", "beta", rc.beta);
    rc.gamma = num_at(b, "physics", "gamma", rc.gamma);
    rc.D = num_at(b, "physics", "D", rc.D);
    rc.tau = num_at(b, "physics", "tau", rc.tau);
    rc.rho_D = num_at(b, "physics", "rho_D", rc.rho_D);
    rc.C = profile_at(b, "physics", "C", rc.C);
  }
  require_positive(rc.alpha, "physics.alpha");
  require_nonneg(rc.beta, "physics.beta");
  require_positive(rc.gamma, "physics.gamma");
  require_positive(rc.D, "physics.D");
  require_positive(rc.tau, "physics.tau");
  require_positive(rc.rho_D, "physics.rho_D");

  if (const JValue* v = find(doc, "bc")) {
    const JValue& b = require_obj(*v, "bc");
    expect_keys(b, "bc", {"left", "right", "bottom", "top", "periodic"});
    rc.periodic = bool_at(b, "bc", "periodic", rc.periodic);
    rc.bc[0] = label_at(b, "bc", "left", rc.bc[0]);
    rc.bc[1] = label_at(b, "bc", "right", rc.bc[1]);
    rc.bc[2] = label_at(b, "bc", "bottom", rc.bc[2]);
    rc.bc[3] = label_at(b, "bc", "top", rc.bc[3]);
  }
  if (!rc.periodic && rc.bc[0] == 'D' && rc.bc[1] == 'D' && rc.bc[2] == 'D' &&
      rc.bc[3] == 'D')
    throw ConfigError("bc", "at least one side must be N");

  if (const JValue* v = find(doc, "time")) {
    const JValue& b = require_obj(*v, "time");
    expect_keys(b, "time", {"dt", "cfl", "t_end", "output_every"});
    if (find(b, "dt")) rc.dt = num_at(b, "time", "dt", 0.0);
    if (find(b, "cfl")) rc.cfl = num_at(b, "time", "cfl", 0.0);
    rc.t_end = num_at(b, "time", "t_end", rc.t_end);
    rc.output_every = int_at(b, "time", "output_every", rc.output_every);
  }
  if (rc.dt.has_value() == rc.cfl.has_value())
    throw ConfigError("time.dt", "exactly one of dt and cfl is required");
  if (rc.dt) require_positive(*rc.dt, "time.dt");
  if (rc.cfl) require_positive(*rc.cfl, "time.cfl");
  require_nonneg(rc.t_end, "time.t_end");
  if (rc.output_every < 1)
    throw ConfigError("time.output_every", "must be at least 1");

  if (const JValue* v = find(doc, "coupling")) {
    const JValue& b = require_obj(*v, "coupling");
    expect_keys(b, "coupling", {"sigma", "picard_tol", "picard_max"});
    rc.sigma = num_at(b, "coupling", "sigma", rc.sigma);
    rc.picard_tol = num_at(b, "coupling", "picard_tol", rc.picard_tol);
    rc.picard_max = int_at(b, "coupling", "picard_max", rc.picard_max);
  }
  if (!(rc.sigma >= 0.0 && rc.sigma <= 1.0))
    throw ConfigError("coupling.sigma", "must lie in [0, 1]");
  require_positive(rc.picard_tol, "coupling.picard_tol");
  if (rc.picard_max < 1)
    throw ConfigError("coupling.picard_max", "must be at least 1");

  if (const JValue* v = find(doc, "reg")) {
    const JValue& b = require_obj(*v, "reg");
    expect_keys(b, "reg", {"eps_x", "eps_t", "M_trunc"});
    rc.eps_x = num_at(b, "reg", "eps_x", rc.eps_x);
    rc.eps_t = num_at(b, "reg", "eps_t", rc.eps_t);
    rc.M_trunc = num_at(b, "reg", "M_trunc", rc.M_trunc);
  }
  require_nonneg(rc.eps_x, "reg.eps_x");
  require_nonneg(rc.eps_t, "reg.eps_t");
  if (!(rc.M_trunc > 0.0)) throw ConfigError("reg.M_trunc", "must be > 0");

  if (const JValue* v = find(doc, "output")) {
    const JValue& b = require_obj(*v, "output");
    expect_keys(b, "output", {"directory", "snapshot"});
    rc.output.directory = str_at(b, "output", "directory", rc.output.directory);
    rc.output.snapshot = bool_at(b, "output", "snapshot", rc.output.snapshot);
  }
  if (rc.output.directory.empty())
    throw ConfigError("output.directory", "must not be empty");

  if (const JValue* v = find(doc, "init")) {
    const JValue& b = require_obj(*v, "init");
    expect_keys(b, "init", {"profile", "amplitude", "skip_validation"});
    rc.init_profile = str_at(b, "init", "profile", rc.init_profile);
    rc.init_amplitude = num_at(b, "init", "amplitude", rc.init_amplitude);
    rc.skip_validation =
        bool_at(b, "init", "skip_validation", rc.skip_validation);
  }
  {
    static const std::set<std::string> known{"uniform", "interlayer", "moser",
                                            "precession"};
    if (!known.count(rc.init_profile))
      throw ConfigError("init.profile", "unknown profile '" + rc.init_profile +
                                            "'");
  }
  require_nonneg(rc.init_amplitude, "init.amplitude");

  if (const JValue* v = find(doc, "seed")) {
    if (v->kind != JValue::Num || v->num != std::floor(v->num) || v->num < 0)
      throw ConfigError("seed", "expected a nonnegative integer");
    rc.seed = static_cast<std::uint64_t>(v->num);
  }

  return rc;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Presets.

namespace {

struct Preset {
  const char* name;
  const char* text;
};

const Preset kPresets[] = {
    {"equilibrium", R"(// stationary contact-level state: nothing moves
{
  grid: {nx: 32, ny: 32, Lx: 1, Ly: 1},
  domains: {omega1: [0.25, 0.75, 0.25, 0.75]},
  physics: {alpha: 1, beta: 0.1, gamma: 1, D: 1, tau: 1, rho_D: 1, C: 1},
  bc: {left: D, right: D, bottom: N, top: N},
  time: {dt: 5e-5, t_end: 1, output_every: 1000},
  coupling: {sigma: 1, picard_tol: 1e-8, picard_max: 50},
  init: {profile: uniform},
}
)"},
    {"precession", R"(// macrospin in a uniform axial field; the planar
// magnetization makes the magnetostatic residual large by construction,
// so initial-data validation is waived
{
  grid: {nx: 6, ny: 6, Lx: 1, Ly: 1},
  domains: {omega1: [0.25, 0.75, 0.25, 0.75]},
  physics: {alpha: 1, beta: 0.1, gamma: 1, D: 1, tau: 1, rho_D: 1, C: 1},
  time: {dt: 1e-3, t_end: 1.5707963267948966, output_every: 100},
  init: {profile: precession, skip_validation: true},
}
)"},
    {"interlayer", R"(// two magnetic strips with opposite magnetization and a
// doping bump pulling charge through the contacts
{
  grid: {nx: 64, ny: 64, Lx: 1, Ly: 1},
  domains: {
    omega1: [0.1, 0.9, 0.15, 0.4],
    omega2: [0.1, 0.9, 0.6, 0.85],
  },
  physics: {
    alpha: 1, beta: 0.1, gamma: 1, D: 1, tau: 1, rho_D: 1,
    C: {kind: sine, base: 1, amplitude: 0.5},
  },
  time: {dt: 1.2e-5, t_end: 0.012, output_every: 100},
  init: {profile: interlayer, amplitude: 0.1},
}
)"},
    {"regularized", R"(// mollified sources and truncated drift
{
  grid: {nx: 32, ny: 32, Lx: 1, Ly: 1},
  domains: {
    omega1: [0.1, 0.9, 0.15, 0.4],
    omega2: [0.1, 0.9, 0.6, 0.85],
  },
  physics: {
    alpha: 1, beta: 0.1, gamma: 1, D: 1, tau: 1, rho_D: 1,
    C: {kind: sine, base: 1, amplitude: 0.5},
  },
  time: {dt: 5e-5, t_end: 5e-3, output_every: 20},
  reg: {eps_x: 0.0625, eps_t: 2.5e-4, M_trunc: 3},
  init: {profile: interlayer, amplitude: 0.1},
}
)"},
    {"moser", R"(// slow spin relaxation and strong doping: spin growth test
{
  grid: {nx: 24, ny: 24, Lx: 1, Ly: 1},
  domains: {omega1: [0.25, 0.75, 0.25, 0.75]},
  physics: {alpha: 1, beta: 0, gamma: 1, D: 1, tau: 10, rho_D: 1, C: 2},
  time: {dt: 1e-4, t_end: 1, output_every: 500},
  init: {profile: moser, amplitude: 0.2},
}
)"},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const Preset& p : kPresets) out.push_back(p.name);
  return out;
}

std::string preset_text(const std::string& name) {
  for (const Preset& p : kPresets)
    if (name == p.name) return p.text;
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Materialization.

namespace {

Field make_profile(const ProfileSpec& ps, const Grid& g) {
  if (ps.kind == "constant" && ps.amplitude == 0.0)
    return Field::Constant(g.nx(), g.ny(), ps.base);
  Field f(g.nx(), g.ny());
  const Real pi = std::numbers::pi_v<Real>;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      f(i, j) = ps.base + ps.amplitude * std::sin(pi * g.xc(i) / g.spec.Lx) *
                              std::sin(pi * g.yc(j) / g.spec.Ly);
  return f;
}

SimState make_initial(const RunConfig& rc, const Grid& g,
                      const PhysParams& p) {
  const int nx = g.nx(), ny = g.ny();
  const Real pi = std::numbers::pi_v<Real>;
  SimState st = SimState::zero(nx, ny);
  st.rho = Field::Constant(nx, ny, p.rho_D);

  if (rc.init_profile == "uniform") {
    st.m.z = g.omega01;
  } else if (rc.init_profile == "interlayer") {
    st.m.z = g.mask.in1.cast<Real>() - g.mask.in2.cast<Real>();
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        st.s.x(i, j) = rc.init_amplitude * std::sin(pi * g.xc(i) / g.spec.Lx);
  } else if (rc.init_profile == "moser") {
    st.m.z = g.omega01;
    Field bump(nx, ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        bump(i, j) = rc.init_amplitude * std::sin(pi * g.xc(i) / g.spec.Lx) *
                     std::sin(pi * g.yc(j) / g.spec.Ly);
    st.s.x = 0.6 * bump;
    st.s.z = 0.8 * bump;
  } else {  // precession
    st.m.x = g.omega01;
    st.H.z = Field::Constant(nx, ny, 1.0);
  }

  if (!g.tags.periodic) st.E = init_electric_field(g, st.rho, p.C);
  return st;
}

}  // namespace

BuildResult build_run(const RunConfig& rc) {
  GridSpec spec{rc.nx, rc.ny, rc.Lx, rc.Ly};

  // A zero-area rectangle on a cell edge holds no cell centers: the legal
  // form of "no second layer".
  Rect omega2 = rc.omega2.value_or(
      Rect{spec.hx(), spec.hx(), spec.hy(), spec.hy()});

  Grid grid;
  if (rc.periodic) {
    grid = torus_grid(spec, rc.omega1, omega2);
  } else {
    BoundaryTag layout;
    auto lab = [](char c) {
      return c == 'D' ? EdgeLabel::Dirichlet : EdgeLabel::Neumann;
    };
    layout.side_label = {lab(rc.bc[0]), lab(rc.bc[1]), lab(rc.bc[2]),
                         lab(rc.bc[3])};
    grid = build_grid(spec, rc.omega1, omega2, layout);
  }

  PhysParams p;
  p.alpha = rc.alpha;
  p.beta = rc.beta;
  p.gamma = rc.gamma;
  p.D = rc.D;
  p.tau = rc.tau;
  p.M_trunc = rc.M_trunc;
  p.rho_D = rc.rho_D;
  p.C = make_profile(rc.C, grid);

  SimConfigs cfgs;
  cfgs.coupling.sigma = rc.sigma;
  cfgs.coupling.picard_tol = rc.picard_tol;
  cfgs.coupling.picard_max = rc.picard_max;
  cfgs.coupling.dt =
      rc.dt ? *rc.dt : *rc.cfl * std::min(spec.hx(), spec.hy());
  cfgs.coupling.t_end = rc.t_end;
  cfgs.coupling.output_every = rc.output_every;
  cfgs.reg.eps_x = rc.eps_x;
  cfgs.reg.eps_t = rc.eps_t;

  BuildResult out{std::move(grid), std::move(p), cfgs, SimState::zero(1, 1),
                  rc.output, rc.skip_validation, rc.seed};
  out.initial = make_initial(rc, out.grid, out.params);
  return out;
}

}  // namespace spindrift
