// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "qcm/scenario_config.hpp"

using namespace qcm;

namespace {

// Message of the ConfigError thrown by parsing text, or "" if it parses.
std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("presets parse to the documented geometry") {
  CHECK(preset_names() == std::vector<std::string>{"fig3", "fig4", "fig5"});
  const ScenarioConfig f3 = load_preset("fig3");
  CHECK(f3.scatterer == ScattererKind::circle);
  CHECK(f3.radius == 5.0);
  REQUIRE(f3.beams.size() == 2);
  CHECK(f3.beams[1].theta_deg == 45.0);
  CHECK(f3.beams[0].beta == 0.04);
  CHECK(f3.grid.nx == 251);
  CHECK(f3.grid.x_min == -25.0);
  CHECK(f3.state == StateKind::single_photon_pair);
  CHECK(f3.outputs.g1_map);
  CHECK_FALSE(f3.outputs.g2_line);

  const ScenarioConfig f4 = load_preset("fig4");
  CHECK(f4.outputs.g2_line);
  CHECK_FALSE(f4.outputs.g1_map);
  CHECK(f4.line.x == 12.0);
  CHECK(f4.line.n == 201);

  CHECK(load_preset("fig5").state == StateKind::noon2);
  CHECK_THROWS_AS(preset_text("fig9"), ConfigError);
}

TEST_CASE("serialization round-trips") {
  for (const auto& name : preset_names()) {
    const ScenarioConfig c = load_preset(name);
    const std::string text = serialize_config(c);
    CHECK(serialize_config(parse_config_text(text)) == text);
  }
  ScenarioConfig c;
  c.scatterer = ScattererKind::superellipse;
  c.semi_x = 0.37;
  c.exponent = 6.5;
  c.beams = {BeamConfig{0.5, 0.031, -1.25, 12.345678901234}};
  c.state = StateKind::single_mode_one_photon;
  c.expansion = ExpansionOrder::leading;
  c.outputs = OutputSet{false, false, false, true};
  c.mom_segments = 40;
  c.threads = 3;
  const std::string text = serialize_config(c);
  const ScenarioConfig back = parse_config_text(text);
  CHECK(back.beams.size() == 1);
  CHECK(back.beams[0].theta_deg == c.beams[0].theta_deg);
  CHECK(back.semi_x == c.semi_x);
  CHECK(back.outputs.patterns);
  CHECK_FALSE(back.outputs.g1_map);
  CHECK(serialize_config(back) == text);

  c.outputs = OutputSet{false, false, false, false};
  CHECK(contains(serialize_config(c), "outputs = none"));
  CHECK_FALSE(parse_config_text(serialize_config(c)).outputs.g2_map);
}

TEST_CASE("comments, blanks and defaults") {
  const ScenarioConfig c = parse_config_text("# header\n\n  scatterer = circle   # trailing\nradius=2.5\r\n");
  CHECK(c.scatterer == ScattererKind::circle);
  CHECK(c.radius == 2.5);
  CHECK(c.beams.size() == 2);
  CHECK(c.grid.ny == 251);
  CHECK(parse_config_text("").scatterer == ScattererKind::none);
}

TEST_CASE("errors name the offending line") {
  CHECK(contains(error_of("radius = 1\nbogus = 3\n"), "t.cfg:2: unknown key 'bogus'"));
  CHECK(contains(error_of("radius = 1\n\nradius = 2\n"), "t.cfg:3: duplicate key 'radius' (first set on line 1)"));
  CHECK(contains(error_of("just words\n"), "t.cfg:1: expected 'key = value'"));
  CHECK(contains(error_of("= 3\n"), "t.cfg:1: missing key"));
  CHECK(contains(error_of("radius =\n"), "t.cfg:1: missing value"));
  CHECK(contains(error_of("# c\nradius = five\n"), "t.cfg:2: 'radius' expects a finite number"));
  CHECK(contains(error_of("radius = 1e999\n"), "finite number"));
  CHECK(contains(error_of("grid.nx = 2.5\n"), "expects an integer"));
  CHECK(contains(error_of("scatterer.transparent = maybe\n"), "expects true or false"));
  CHECK(contains(error_of("\nscatterer = sphere\n"), "t.cfg:2: unknown scatterer 'sphere'"));
  CHECK(contains(error_of("state = coherent\n"), "unknown state 'coherent'"));
  CHECK(contains(error_of("expansion = quintic\n"), "expansion must be"));
  CHECK(contains(error_of("outputs = g1_map,movie\n"), "unknown output 'movie'"));
  CHECK(contains(error_of("radius = -1\n"), "t.cfg:1: radius must be positive"));
  CHECK(contains(error_of("\n\nbeam1.beta = 0.3\n"), "t.cfg:3: "));
  CHECK(contains(error_of("beams = 1\nbeam2.beta = 0.04\n"), "t.cfg:2: beam index exceeds"));
  CHECK(contains(error_of("beams = 3\n"), "beams must be 1 or 2"));
  CHECK(contains(error_of("grid.x_min = 5\ngrid.x_max = 5\n"), "t.cfg:2: grid.x_max must exceed"));
  CHECK(contains(error_of("mom.segments = 8\n"), "mom.segments"));
  CHECK(contains(error_of("exponent = 1.5\n"), "exponent"));
  CHECK(contains(error_of("threads = -2\n"), "threads"));
  // cross-field: a two-mode state with one beam
  CHECK(contains(error_of("beams = 1\n"), "needs two beams"));
  CHECK(error_of("beams = 1\nstate = single_mode_one_photon\n").empty());
  CHECK(contains(error_of("scatterer = ellipse\nscatterer.transparent = true\n"), "circles only"));
}

TEST_CASE("validate_config catches programmatic edits") {
  ScenarioConfig c = load_preset("fig3");
  CHECK_NOTHROW(validate_config(c));
  c.grid.nx = 1;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = load_preset("fig3");
  c.beams[0].beta = 0.5;
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c = load_preset("fig3");
  c.beams.clear();
  CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "qcm_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "s.cfg";
  {
    std::ofstream out(path, std::ios::binary);
    out << preset_text("fig5");
  }
  CHECK(parse_config(path).state == StateKind::noon2);
  {
    std::ofstream out(path, std::ios::binary);
    out << "radius = 1\nwhat = 2\n";
  }
  try {
    parse_config(path);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains(e.what(), path.string() + ":2:"));
  }
  CHECK_THROWS_AS(parse_config(dir / "missing.cfg"), ConfigError);
  std::filesystem::remove_all(dir);
}
