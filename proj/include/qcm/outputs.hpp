// SPDX-License-Identifier: Apache-2.0
//
// Output files of a scenario run:
//   g1.csv, g2.csv      header x,y,value,masked; row-major in y then x
//   g1.ppm, g2.ppm      binary P6, top row = largest y, linear gray min..max,
//                       masked pixels pure red (255, 0, 0)
//   g2_line.csv/.ppm    g2 over detector pairs on one line; x,y columns hold y1,y2
//   patterns.csv        phi,mode,re,im of the outgoing principal-mode patterns
//   manifest.txt        resolved config (re-runnable) plus run metadata comments

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/scenario.hpp"

namespace qcm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvRow {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  bool masked = false;
};

// %.17g values, LF line endings; masked rows carry value 0.
std::string format_map_csv(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& values, const std::vector<std::uint8_t>& mask);
std::vector<CsvRow> read_map_csv(const std::filesystem::path& path);

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
  double min_value = 0.0;
  double max_value = 0.0;
  std::size_t masked = 0;
};

// Row j of the map is image row height - 1 - j.
Raster render_map(int nx, int ny, const std::vector<double>& values,
                  const std::vector<std::uint8_t>& mask);
std::string encode_ppm(const Raster& raster);
Raster decode_ppm(const std::filesystem::path& path);

std::string format_manifest(const ScenarioResult& result);

// Returns the list of files written.
std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result,
                                                 const std::filesystem::path& out_dir);

}  // namespace qcm
