#include "plateau/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace plateau {

double ConfigValue::number() const {
  if (auto v = std::get_if<double>(&data)) return *v;
  throw ParseError("expected a number", line);
}

bool ConfigValue::boolean() const {
  if (auto v = std::get_if<bool>(&data)) return *v;
  throw ParseError("expected true or false", line);
}

const std::string& ConfigValue::string() const {
  if (auto v = std::get_if<std::string>(&data)) return *v;
  throw ParseError("expected a string", line);
}

const ConfigValue::Array& ConfigValue::array() const {
  if (auto v = std::get_if<Array>(&data)) return *v;
  throw ParseError("expected an array", line);
}

std::vector<double> ConfigValue::numbers() const {
  std::vector<double> out;
  for (const auto& v : array()) out.push_back(v.number());
  return out;
}

Point ConfigValue::point() const {
  const auto xs = numbers();
  Point p(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<Eigen::Index>(i)] = xs[i];
  return p;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, int line) : text_(text), line_(line) {}

  ConfigValue value() {
    skip();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    ConfigValue v;
    v.line = line_;
    if (c == '[') {
      ++pos_;
      ConfigValue::Array items;
      skip();
      if (peek() == ']') {
        ++pos_;
        v.data = items;
        return v;
      }
      for (;;) {
        items.push_back(value());
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
          if (peek() == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']'");
      }
      v.data = items;
      return v;
    }
    if (c == '"') {
      const auto end = text_.find('"', pos_ + 1);
      if (end == std::string::npos) fail("unterminated string");
      v.data = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return v;
    }
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      v.data = true;
      return v;
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      v.data = false;
      return v;
    }
    std::size_t used = 0;
    try {
      v.data = std::stod(text_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail("cannot read value");
    }
    pos_ += used;
    return v;
  }

  void finish() {
    skip();
    if (pos_ < text_.size()) fail("trailing characters");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

  const std::string& text_;
  int line_;
  std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int bracket_depth(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"domain", {"lo", "hi", "obstacles", "periodic"}},
      {"input", {"d", "terminals", "separate", "frame", "segments", "triangles"}},
      {"oracle", {"kind", "axis"}},
      {"density", {"kind", "value", "center", "profile", "origin", "stride", "cells", "fallback"}},
      {"schedule", {"r0", "levels", "patches", "patch_width", "patch_epsilon", "patch_aperture", "restarts",
                    "exhaustive_cap", "probe_trials"}},
      {"tolerances", {"j", "hausdorff"}},
      {"seed", {"value"}},
  };
  return keys;
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
  ConfigDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[' && s.find('=') == std::string::npos) {
      if (s.back() != ']') throw ParseError("malformed section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section)) throw ParseError("unknown section [" + section + "]", line);
      if (doc.count(section)) throw ParseError("duplicate section [" + section + "]", line);
      doc[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    if (section.empty()) throw ParseError("key outside of a section", line);
    const std::string key = trim(s.substr(0, eq));
    if (!schema().at(section).count(key)) throw ParseError("unknown key '" + key + "' in [" + section + "]", line);
    if (doc[section].count(key)) throw ParseError("duplicate key '" + key + "'", line);
    std::string body = trim(s.substr(eq + 1));
    const int start = line;
    // Arrays may span lines.
    while (bracket_depth(body) > 0) {
      if (!std::getline(in, raw)) throw ParseError("unterminated array", start);
      ++line;
      body += " " + trim(strip_comment(raw));
    }
    Parser p(body, start);
    ConfigValue v = p.value();
    p.finish();
    doc[section][key] = std::move(v);
  }
  return doc;
}

namespace {

const ConfigValue* find(const ConfigDocument& doc, const std::string& section, const std::string& key) {
  auto s = doc.find(section);
  if (s == doc.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

const ConfigValue& need(const ConfigDocument& doc, const std::string& section, const std::string& key) {
  if (auto v = find(doc, section, key)) return *v;
  throw ParseError("missing key '" + key + "' in [" + section + "]", 0);
}

std::vector<Point> points(const ConfigValue& v) {
  std::vector<Point> out;
  for (const auto& p : v.array()) out.push_back(p.point());
  return out;
}

}  // namespace

ProblemSpec problem_from_config(const ConfigDocument& doc) {
  ProblemSpec spec;
  spec.domain = Box{need(doc, "domain", "lo").point(), need(doc, "domain", "hi").point()};
  const int n = spec.domain.dim();
  if (spec.domain.hi.size() != n) throw DimensionMismatch("domain lo and hi differ in dimension");
  if (auto v = find(doc, "domain", "obstacles"))
    for (const auto& row : v->array()) {
      const auto xs = row.numbers();
      if (static_cast<int>(xs.size()) != 2 * n) throw ParseError("obstacle needs 2n numbers", row.line);
      Box b{Point(n), Point(n)};
      for (int i = 0; i < n; ++i) {
        b.lo[i] = xs[i];
        b.hi[i] = xs[n + i];
      }
      spec.obstacles.push_back(b);
    }
  if (auto v = find(doc, "domain", "periodic")) spec.periodic = v->boolean();

  spec.d = static_cast<int>(need(doc, "input", "d").number());
  if (auto v = find(doc, "input", "terminals")) spec.terminals = points(*v);
  if (auto v = find(doc, "input", "separate"))
    for (const auto& row : v->array()) {
      const auto xs = row.numbers();
      if (static_cast<int>(xs.size()) != 2 * n) throw ParseError("separate entry needs 2n numbers", row.line);
      Point a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = xs[i];
        b[i] = xs[n + i];
      }
      spec.separate.push_back({a, b});
    }
  if (auto v = find(doc, "input", "frame")) spec.frame = points(*v);
  spec.input = SimplicialSet(std::max(spec.d, 0), n);
  for (const char* key : {"segments", "triangles"}) {
    const auto v = find(doc, "input", key);
    if (!v) continue;
    const int k = std::string(key) == "segments" ? 2 : 3;
    if (spec.d != k - 1) throw DimensionMismatch(std::string(key) + " need d = " + std::to_string(k - 1));
    for (const auto& row : v->array()) {
      const auto xs = row.numbers();
      if (static_cast<int>(xs.size()) != k * n) throw ParseError("simplex has the wrong number of coordinates", row.line);
      std::vector<Point> pts;
      for (int j = 0; j < k; ++j) pts.push_back(Eigen::Map<const Eigen::VectorXd>(xs.data() + j * n, n));
      spec.input.add(pts);
    }
  }

  const std::string kind = need(doc, "oracle", "kind").string();
  if (kind == "connectivity") spec.oracle = OracleKind::Connectivity;
  else if (kind == "separation") spec.oracle = OracleKind::Separation;
  else if (kind == "periodic") spec.oracle = OracleKind::Periodic;
  else if (kind == "spanning") spec.oracle = OracleKind::Spanning;
  else throw ParseError("unknown oracle kind '" + kind + "'", need(doc, "oracle", "kind").line);
  if (auto v = find(doc, "oracle", "axis")) spec.axis = static_cast<int>(v->number());

  if (auto v = find(doc, "density", "kind")) spec.density.kind = v->string();
  if (auto v = find(doc, "density", "value")) spec.density.value = v->number();
  if (auto v = find(doc, "density", "center")) spec.density.center = v->point();
  if (auto v = find(doc, "density", "profile"))
    for (const auto& row : v->array()) {
      const auto xs = row.numbers();
      if (xs.size() != 2) throw ParseError("profile knots are [radius, value]", row.line);
      spec.density.profile.push_back({xs[0], xs[1]});
    }
  if (auto v = find(doc, "density", "origin")) spec.density.origin = v->point();
  if (auto v = find(doc, "density", "stride")) spec.density.stride = v->number();
  if (auto v = find(doc, "density", "cells"))
    for (const auto& row : v->array()) {
      const auto xs = row.numbers();
      if (static_cast<int>(xs.size()) != n + 1) throw ParseError("cell entries are [index..., value]", row.line);
      std::vector<int> z;
      for (int i = 0; i < n; ++i) z.push_back(static_cast<int>(xs[i]));
      spec.density.cells[z] = xs[n];
    }
  if (auto v = find(doc, "density", "fallback")) spec.density.fallback = v->number();

  if (auto v = find(doc, "schedule", "r0")) spec.r0 = v->number();
  if (auto v = find(doc, "schedule", "levels")) spec.levels = static_cast<int>(v->number());
  if (auto v = find(doc, "schedule", "patches")) spec.patches = v->boolean();
  if (auto v = find(doc, "schedule", "patch_width")) spec.patch_width = static_cast<int>(v->number());
  if (auto v = find(doc, "schedule", "patch_epsilon")) spec.patch_options.epsilon = v->number();
  if (auto v = find(doc, "schedule", "patch_aperture")) spec.patch_options.aperture = v->number();
  if (auto v = find(doc, "schedule", "restarts")) spec.optimizer.restarts = static_cast<int>(v->number());
  if (auto v = find(doc, "schedule", "exhaustive_cap")) spec.optimizer.exhaustive_cap = static_cast<int>(v->number());
  if (auto v = find(doc, "schedule", "probe_trials")) spec.probe_trials = static_cast<int>(v->number());
  if (auto v = find(doc, "tolerances", "j")) spec.tol_j = v->number();
  if (auto v = find(doc, "tolerances", "hausdorff")) spec.tol_d = v->number();
  if (auto v = find(doc, "seed", "value")) spec.seed = static_cast<std::uint64_t>(v->number());
  spec.validate();
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return problem_from_config(parse_config(buf.str()));
}

}  // namespace plateau
