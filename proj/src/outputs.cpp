// SPDX-License-Identifier: Apache-2.0

#include "qcm/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qcm {
namespace {

constexpr const char* kVersion = "0.1.0";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string format_map_csv(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<double>& values, const std::vector<std::uint8_t>& mask) {
  if (values.size() != xs.size() * ys.size() || mask.size() != values.size()) {
    throw DomainError("map dimensions do not match its axes");
  }
  std::string out = "x,y,value,masked\n";
  out.reserve(values.size() * 64);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::size_t k = j * xs.size() + i;
      out += g17(xs[i]);
      out += ',';
      out += g17(ys[j]);
      out += ',';
      out += mask[k] ? "0" : g17(values[k]);
      out += mask[k] ? ",1\n" : ",0\n";
    }
  }
  return out;
}

std::vector<CsvRow> read_map_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "x,y,value,masked") {
    throw IoError(path.string() + ": unexpected CSV header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow r;
    char* p = line.data();
    char* end = nullptr;
    r.x = std::strtod(p, &end);
    r.y = std::strtod(end + 1, &end);
    r.value = std::strtod(end + 1, &end);
    r.masked = std::strtol(end + 1, &end, 10) != 0;
    rows.push_back(r);
  }
  return rows;
}

Raster render_map(int nx, int ny, const std::vector<double>& values,
                  const std::vector<std::uint8_t>& mask) {
  Raster r;
  r.width = nx;
  r.height = ny;
  r.rgb.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * 3, 0);
  bool any = false;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (mask[k]) continue;
    if (!any) {
      r.min_value = r.max_value = values[k];
      any = true;
    }
    r.min_value = std::min(r.min_value, values[k]);
    r.max_value = std::max(r.max_value, values[k]);
  }
  const double span = r.max_value - r.min_value;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                            static_cast<std::size_t>(i);
      const std::size_t px = (static_cast<std::size_t>(ny - 1 - j) * static_cast<std::size_t>(nx) +
                              static_cast<std::size_t>(i)) * 3;
      if (mask[k]) {
        r.rgb[px] = 255;
        ++r.masked;
        continue;
      }
      const double t = span > 0.0 ? (values[k] - r.min_value) / span : 0.0;
      const auto level = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
      r.rgb[px] = r.rgb[px + 1] = r.rgb[px + 2] = level;
    }
  }
  return r;
}

std::string encode_ppm(const Raster& raster) {
  std::string out = "P6\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.rgb.data()), raster.rgb.size());
  return out;
}

Raster decode_ppm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::istringstream in(bytes);
  std::string magic;
  Raster r;
  int maxval = 0;
  in >> magic >> r.width >> r.height >> maxval;
  if (magic != "P6" || maxval != 255 || r.width <= 0 || r.height <= 0) {
    throw IoError(path.string() + ": not an 8-bit P6 image");
  }
  const auto offset = static_cast<std::size_t>(in.tellg()) + 1;
  const std::size_t size = static_cast<std::size_t>(r.width) * static_cast<std::size_t>(r.height) * 3;
  if (bytes.size() < offset + size) throw IoError(path.string() + ": truncated image");
  r.rgb.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
               bytes.begin() + static_cast<std::ptrdiff_t>(offset + size));
  for (std::size_t p = 0; p < size; p += 3) {
    if (r.rgb[p] == 255 && r.rgb[p + 1] == 0 && r.rgb[p + 2] == 0) ++r.masked;
  }
  return r;
}

std::string format_manifest(const ScenarioResult& result) {
  const RunManifest& m = result.manifest;
  std::ostringstream out;
  out << "# qcm " << kVersion << " run manifest\n";
  out << "# Re-run with: qcm run --config manifest.txt --out <dir>\n";
  out << "# Fields are given up to one global real constant (natural units, "
         "field prefactor set to 1).\n";
  out << "# solver: " << m.solver << "\n";
  out << "# n_max used: " << m.n_max_used << "\n";
  for (std::size_t i = 0; i < m.tail_estimates.size(); ++i) {
    out << "# mode " << i + 1 << " truncated tail power: " << g17(m.tail_estimates[i]) << "\n";
  }
  if (m.mu12) {
    out << "# beam overlap mu12: " << g17(m.mu12->real()) << " " << g17(m.mu12->imag())
        << "i, |mu12| = " << g17(std::abs(*m.mu12)) << "\n";
    out << "# Gram norm sqrt(1 - |mu12|^2): " << g17(m.gram_norm) << "\n";
  }
  out << "# scattered modes retained (|P| >= 1e-8): " << m.scattered_modes << "\n";
  out << "# tolerances: Bessel rel 1e-10, rank threshold 1e-12, g2 intensity floor 1e-12 * max G1\n";
  if (result.grid) {
    out << "# G1 max: " << g17(m.g1_max) << "; masked pixels: G1 " << m.g1_masked << ", g2 "
        << m.g2_masked << "\n";
  }
  out << "# images: P6, top row = y_max, linear gray from map min to max, masked = red\n";
  for (const auto& w : m.warnings) out << "# warning: " << w << "\n";
  out << "# wall clock: " << g17(m.wall_clock_s) << " s\n";
  out << serialize_config(m.config);
  return out.str();
}

std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result,
                                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory " + out_dir.string());
  }
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& bytes) {
    const auto path = out_dir / name;
    write_file(path, bytes);
    written.push_back(path);
  };

  const ScenarioConfig& c = result.manifest.config;
  if (result.grid) {
    const FieldGrid& g = *result.grid;
    if (c.outputs.g1_map) {
      emit("g1.csv", format_map_csv(g.xs, g.ys, g.g1, g.g1_mask));
      emit("g1.ppm", encode_ppm(render_map(g.spec.nx, g.spec.ny, g.g1, g.g1_mask)));
    }
    if (c.outputs.g2_map) {
      emit("g2.csv", format_map_csv(g.xs, g.ys, g.g2, g.g2_mask));
      emit("g2.ppm", encode_ppm(render_map(g.spec.nx, g.spec.ny, g.g2, g.g2_mask)));
    }
  }
  if (result.line) {
    const LineMap& l = *result.line;
    emit("g2_line.csv", format_map_csv(l.ys, l.ys, l.g2, l.g2_mask));
    emit("g2_line.ppm", encode_ppm(render_map(l.spec.n, l.spec.n, l.g2, l.g2_mask)));
  }
  if (result.patterns) {
    const PatternTable& t = *result.patterns;
    std::string out = "phi,mode,re,im\n";
    for (std::size_t m = 0; m < t.modes.size(); ++m) {
      for (std::size_t i = 0; i < t.phi.size(); ++i) {
        out += g17(t.phi[i]) + "," + std::to_string(m + 1) + "," + g17(t.modes[m][i].real()) + "," +
               g17(t.modes[m][i].imag()) + "\n";
      }
    }
    emit("patterns.csv", out);
  }
  emit("manifest.txt", format_manifest(result));
  return written;
}

}  // namespace qcm
