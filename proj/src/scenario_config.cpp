// SPDX-License-Identifier: Apache-2.0

#include "qcm/scenario_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qcm {
namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class Reader {
 public:
  Reader(const std::string& text, std::string source) : source_(std::move(source)) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key.empty()) fail(line, "missing key before '='");
      if (value.empty()) fail(line, "missing value for '" + key + "'");
      auto [it, inserted] = entries_.emplace(key, Entry{value, line, false});
      if (!inserted) {
        fail(line, "duplicate key '" + key + "' (first set on line " +
                       std::to_string(it->second.line) + ")");
      }
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(source_ + ": " + msg);
    fail(it->second.line, msg);
  }

  const Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  void read(const std::string& key, double& out) {
    const Entry* e = find(key);
    if (!e) return;
    double v = 0.0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      fail(e->line, "'" + key + "' expects a finite number, got '" + e->value + "'");
    }
    out = v;
  }

  void read(const std::string& key, int& out) {
    const Entry* e = find(key);
    if (!e) return;
    int v = 0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
      fail(e->line, "'" + key + "' expects an integer, got '" + e->value + "'");
    }
    out = v;
  }

  void read(const std::string& key, bool& out) {
    const Entry* e = find(key);
    if (!e) return;
    if (e->value == "true" || e->value == "1" || e->value == "yes") {
      out = true;
    } else if (e->value == "false" || e->value == "0" || e->value == "no") {
      out = false;
    } else {
      fail(e->line, "'" + key + "' expects true or false, got '" + e->value + "'");
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const Entry* e = find(key)) out = e->value;
  }

  void require(bool ok, const std::string& key, const std::string& msg) const {
    if (!ok) fail_key(key, msg);
  }

  void reject_unused() const {
    const Entry* first = nullptr;
    std::string first_key;
    for (const auto& [key, e] : entries_) {
      if (!e.used && (!first || e.line < first->line)) {
        first = &e;
        first_key = key;
      }
    }
    if (first) fail(first->line, "unknown key '" + first_key + "'");
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

ScattererKind parse_scatterer(const std::string& s, Reader& r) {
  if (s == "none") return ScattererKind::none;
  if (s == "circle") return ScattererKind::circle;
  if (s == "ellipse") return ScattererKind::ellipse;
  if (s == "superellipse") return ScattererKind::superellipse;
  r.fail_key("scatterer", "unknown scatterer '" + s + "' (none, circle, ellipse, superellipse)");
}

const char* const kFig3 = R"(# Two single photons in Gaussian beams crossing at 45 degrees on a
# conducting cylinder of radius 5 wavelengths.
name = fig3
scatterer = circle
radius = 5
wavelength = 1
beams = 2
beam1.beta = 0.04
beam1.x0 = 0
beam1.theta_deg = 0
beam2.beta = 0.04
beam2.x0 = 0
beam2.theta_deg = 45
state = single_photon_pair
expansion = cubic
grid.x_min = -25
grid.x_max = 25
grid.y_min = -25
grid.y_max = 25
grid.nx = 251
grid.ny = 251
outputs = g1_map,g2_map
)";

const char* const kFig4 = R"(# Equal-x line cut behind the cylinder: g2(y1, y2) at x1 = x2 = 12.
name = fig4
scatterer = circle
radius = 5
wavelength = 1
beams = 2
beam1.beta = 0.04
beam1.x0 = 0
beam1.theta_deg = 0
beam2.beta = 0.04
beam2.x0 = 0
beam2.theta_deg = 45
state = single_photon_pair
expansion = cubic
line.x = 12
line.y_min = -25
line.y_max = 25
line.n = 201
outputs = g2_line
)";

const char* const kFig5 = R"(# Two-photon entangled state (|2,0> + |0,2>)/sqrt(2) in the fig3 geometry.
name = fig5
scatterer = circle
radius = 5
wavelength = 1
beams = 2
beam1.beta = 0.04
beam1.x0 = 0
beam1.theta_deg = 0
beam2.beta = 0.04
beam2.x0 = 0
beam2.theta_deg = 45
state = noon2
expansion = cubic
grid.x_min = -25
grid.x_max = 25
grid.y_min = -25
grid.y_max = 25
grid.nx = 251
grid.ny = 251
outputs = g1_map,g2_map
)";

}  // namespace

std::string scatterer_kind_name(ScattererKind kind) {
  switch (kind) {
    case ScattererKind::none: return "none";
    case ScattererKind::circle: return "circle";
    case ScattererKind::ellipse: return "ellipse";
    case ScattererKind::superellipse: return "superellipse";
  }
  return "none";
}

GaussianBeamSpec BeamConfig::spec() const {
  return {amplitude, beta, x0, theta_deg * kPi / 180.0};
}

void validate_config(const ScenarioConfig& c) {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(c.wavelength > 0.0, "wavelength must be positive");
  check(c.radius > 0.0 && c.semi_x > 0.0 && c.semi_y > 0.0, "scatterer sizes must be positive");
  check(c.exponent >= 2.0, "superellipse exponent must be >= 2");
  check(c.beams.size() == 1 || c.beams.size() == 2, "beams must be 1 or 2");
  for (const auto& b : c.beams) {
    check(b.beta > 0.0, "beam beta must be positive");
    check(b.beta * c.wavelength <= kWideBeamLimit, "beam beta*wavelength exceeds 0.2");
  }
  const bool two_mode = c.state == StateKind::single_photon_pair || c.state == StateKind::noon2;
  check(!two_mode || c.beams.size() == 2, "state '" + state_kind_name(c.state) + "' needs two beams");
  check(c.grid.nx >= 2 && c.grid.ny >= 2, "grid needs nx, ny >= 2");
  check(c.grid.x_min < c.grid.x_max && c.grid.y_min < c.grid.y_max, "grid extents are empty");
  check(c.line.n >= 2 && c.line.y_min < c.line.y_max, "line needs n >= 2 and y_min < y_max");
  check(c.n_max >= 0 && c.mom_segments >= 0 && c.mom_keep >= 0, "counts must be non-negative");
  check(c.mom_segments == 0 || c.mom_segments >= Contour::kMinSegments, "mom.segments must be >= 16");
  check(c.pattern_samples >= 8, "pattern.samples must be >= 8");
  check(c.threads >= 0, "threads must be >= 0");
  check(!c.transparent || c.scatterer == ScattererKind::circle,
        "scatterer.transparent applies to circles only");
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& source) {
  Reader r(text, source);
  ScenarioConfig c;

  r.read("name", c.name);
  std::string scatterer = "none";
  r.read("scatterer", scatterer);
  c.scatterer = parse_scatterer(scatterer, r);
  r.read("scatterer.transparent", c.transparent);
  r.read("radius", c.radius);
  r.read("semi_x", c.semi_x);
  r.read("semi_y", c.semi_y);
  r.read("exponent", c.exponent);
  r.read("wavelength", c.wavelength);
  r.require(c.wavelength > 0.0, "wavelength", "wavelength must be positive");
  r.require(c.radius > 0.0, "radius", "radius must be positive");
  r.require(c.semi_x > 0.0, "semi_x", "semi_x must be positive");
  r.require(c.semi_y > 0.0, "semi_y", "semi_y must be positive");
  r.require(c.exponent >= 2.0, "exponent", "exponent must be >= 2");

  int beam_count = static_cast<int>(c.beams.size());
  r.read("beams", beam_count);
  r.require(beam_count == 1 || beam_count == 2, "beams", "beams must be 1 or 2");
  c.beams.resize(static_cast<std::size_t>(beam_count));
  for (int b = 1; b <= 2; ++b) {
    const std::string prefix = "beam" + std::to_string(b) + ".";
    if (b > beam_count) {
      for (const char* field : {"amplitude", "beta", "x0", "theta_deg"}) {
        r.require(!r.has(prefix + field), prefix + field, "beam index exceeds 'beams'");
      }
      continue;
    }
    BeamConfig& beam = c.beams[static_cast<std::size_t>(b - 1)];
    r.read(prefix + "amplitude", beam.amplitude);
    r.read(prefix + "beta", beam.beta);
    r.read(prefix + "x0", beam.x0);
    r.read(prefix + "theta_deg", beam.theta_deg);
    r.require(beam.beta > 0.0, prefix + "beta", "beta must be positive");
    r.require(beam.beta * c.wavelength <= kWideBeamLimit, prefix + "beta",
              "beta*wavelength exceeds the wide-beam limit 0.2");
  }

  std::string state = state_kind_name(c.state);
  r.read("state", state);
  try {
    c.state = parse_state_kind(state);
  } catch (const DomainError&) {
    r.fail_key("state", "unknown state '" + state +
                            "' (single_photon_pair, noon2, single_mode_one_photon, vacuum)");
  }
  std::string expansion = "cubic";
  r.read("expansion", expansion);
  if (expansion == "leading") {
    c.expansion = ExpansionOrder::leading;
  } else if (expansion == "cubic") {
    c.expansion = ExpansionOrder::cubic;
  } else {
    r.fail_key("expansion", "expansion must be 'leading' or 'cubic'");
  }

  r.read("grid.x_min", c.grid.x_min);
  r.read("grid.x_max", c.grid.x_max);
  r.read("grid.y_min", c.grid.y_min);
  r.read("grid.y_max", c.grid.y_max);
  r.read("grid.nx", c.grid.nx);
  r.read("grid.ny", c.grid.ny);
  r.require(c.grid.nx >= 2, "grid.nx", "grid.nx must be >= 2");
  r.require(c.grid.ny >= 2, "grid.ny", "grid.ny must be >= 2");
  r.require(c.grid.x_min < c.grid.x_max, "grid.x_max", "grid.x_max must exceed grid.x_min");
  r.require(c.grid.y_min < c.grid.y_max, "grid.y_max", "grid.y_max must exceed grid.y_min");

  r.read("line.x", c.line.x);
  r.read("line.y_min", c.line.y_min);
  r.read("line.y_max", c.line.y_max);
  r.read("line.n", c.line.n);
  r.require(c.line.n >= 2, "line.n", "line.n must be >= 2");
  r.require(c.line.y_min < c.line.y_max, "line.y_max", "line.y_max must exceed line.y_min");

  std::string outputs;
  r.read("outputs", outputs);
  if (!outputs.empty()) {
    c.outputs = OutputSet{false, false, false, false};
    std::istringstream list(outputs);
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (item == "none") continue;
      if (item == "g1_map") c.outputs.g1_map = true;
      else if (item == "g2_map") c.outputs.g2_map = true;
      else if (item == "g2_line") c.outputs.g2_line = true;
      else if (item == "patterns") c.outputs.patterns = true;
      else r.fail_key("outputs", "unknown output '" + item + "' (g1_map, g2_map, g2_line, patterns)");
    }
  }

  r.read("n_max", c.n_max);
  r.read("mom.segments", c.mom_segments);
  r.read("mom.keep", c.mom_keep);
  r.read("pattern.samples", c.pattern_samples);
  r.read("threads", c.threads);
  r.require(c.n_max >= 0, "n_max", "n_max must be >= 0");
  r.require(c.mom_segments == 0 || c.mom_segments >= Contour::kMinSegments, "mom.segments",
            "mom.segments must be 0 (automatic) or >= 16");
  r.require(c.mom_keep >= 0, "mom.keep", "mom.keep must be >= 0");
  r.require(c.pattern_samples >= 8, "pattern.samples", "pattern.samples must be >= 8");
  r.require(c.threads >= 0, "threads", "threads must be >= 0");

  r.reject_unused();
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.string());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  auto kv = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](const std::string& key, double v) { kv(key, format_double(v)); };
  auto integer = [&](const std::string& key, int v) { kv(key, std::to_string(v)); };

  kv("name", c.name);
  kv("scatterer", scatterer_kind_name(c.scatterer));
  kv("scatterer.transparent", c.transparent ? "true" : "false");
  num("radius", c.radius);
  num("semi_x", c.semi_x);
  num("semi_y", c.semi_y);
  num("exponent", c.exponent);
  num("wavelength", c.wavelength);
  integer("beams", static_cast<int>(c.beams.size()));
  for (std::size_t b = 0; b < c.beams.size(); ++b) {
    const std::string prefix = "beam" + std::to_string(b + 1) + ".";
    num(prefix + "amplitude", c.beams[b].amplitude);
    num(prefix + "beta", c.beams[b].beta);
    num(prefix + "x0", c.beams[b].x0);
    num(prefix + "theta_deg", c.beams[b].theta_deg);
  }
  kv("state", state_kind_name(c.state));
  kv("expansion", c.expansion == ExpansionOrder::leading ? "leading" : "cubic");
  num("grid.x_min", c.grid.x_min);
  num("grid.x_max", c.grid.x_max);
  num("grid.y_min", c.grid.y_min);
  num("grid.y_max", c.grid.y_max);
  integer("grid.nx", c.grid.nx);
  integer("grid.ny", c.grid.ny);
  num("line.x", c.line.x);
  num("line.y_min", c.line.y_min);
  num("line.y_max", c.line.y_max);
  integer("line.n", c.line.n);
  std::vector<std::string> outs;
  if (c.outputs.g1_map) outs.emplace_back("g1_map");
  if (c.outputs.g2_map) outs.emplace_back("g2_map");
  if (c.outputs.g2_line) outs.emplace_back("g2_line");
  if (c.outputs.patterns) outs.emplace_back("patterns");
  if (outs.empty()) {
    kv("outputs", "none");
  } else {
    std::string joined;
    for (std::size_t i = 0; i < outs.size(); ++i) joined += (i ? "," : "") + outs[i];
    kv("outputs", joined);
  }
  integer("n_max", c.n_max);
  integer("mom.segments", c.mom_segments);
  integer("mom.keep", c.mom_keep);
  integer("pattern.samples", c.pattern_samples);
  integer("threads", c.threads);
  return out.str();
}

std::vector<std::string> preset_names() { return {"fig3", "fig4", "fig5"}; }

std::string preset_text(const std::string& name) {
  if (name == "fig3") return kFig3;
  if (name == "fig4") return kFig4;
  if (name == "fig5") return kFig5;
  throw ConfigError("unknown preset '" + name + "' (fig3, fig4, fig5)");
}

ScenarioConfig load_preset(const std::string& name) {
  return parse_config_text(preset_text(name), "preset:" + name);
}

}  // namespace qcm
