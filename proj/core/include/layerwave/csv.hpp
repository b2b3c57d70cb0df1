#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "layerwave/coeffs.hpp"
#include "layerwave/directsolver.hpp"
#include "layerwave/dispersion.hpp"
#include "layerwave/fastfield.hpp"
#include "layerwave/wavefield.hpp"

namespace layerwave {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Headered comma-separated writer. Throws Error when the file cannot be
// opened or a row has the wrong width.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) {
    row(std::span<const double>(values.begin(), values.size()));
  }
  void row_text(std::span<const std::string> cells);
  void close();

 private:
  std::filesystem::path path_;
  std::size_t width_;
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  // Column by header name; throws ConfigError when absent.
  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Numeric CSV with a header line. A file whose first line parses as numbers
// is read headerless with columns named c0, c1, ...
CsvTable read_csv(const std::filesystem::path& path);

void write_coefficients_csv(const std::filesystem::path& path,
                            const HomogCoefficients& c);
void write_fastvars_csv(const std::filesystem::path& path, const FastVarTable& t);
void write_field_csv(const std::filesystem::path& path, const WaveField& f);
void write_profile_csv(const std::filesystem::path& path, const Profile& pr);
void write_dispersion_csv(const std::filesystem::path& path,
                          std::span<const DispersionSample> samples);
void write_polar_csv(const std::filesystem::path& path,
                     std::span<const PolarSample> samples);

// Line traces of a 2D field: along x at the row nearest y = at (axis x), or
// along y at the column nearest x = at (axis y). Columns: s, p, u, v.
void write_slice_csv(const std::filesystem::path& path, const WaveField& f,
                     char along, double at);

}  // namespace layerwave
