#include "layerwave/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "layerwave/error.hpp"

namespace layerwave {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), width_(header.size()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    out_ << (i ? "," : "") << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != width_) {
    throw Error("CSV row width mismatch in " + path_.string());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row_text(std::span<const std::string> cells) {
  if (cells.size() != width_) {
    throw Error("CSV row width mismatch in " + path_.string());
  }
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw Error("failed writing " + path_.string());
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw ConfigError("CSV has no column '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    std::size_t b = cell.find_first_not_of(' ');
    out.push_back(b == std::string::npos ? "" : cell.substr(b));
  }
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s == "nan") {
    v = std::nan("");
    return true;
  }
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV " + path.string());
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (first) {
      first = false;
      double probe;
      bool numeric = !cells.empty();
      for (const auto& c : cells) numeric = numeric && parse_number(c, probe);
      if (!numeric) {
        t.header = cells;
        t.columns.resize(cells.size());
        continue;
      }
      for (std::size_t i = 0; i < cells.size(); ++i) t.header.push_back("c" + std::to_string(i));
      t.columns.resize(cells.size());
    }
    if (cells.size() != t.header.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected " + std::to_string(t.header.size()) + " columns");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v;
      if (!parse_number(cells[i], v)) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": not a number: '" + cells[i] + "'");
      }
      t.columns[i].push_back(v);
    }
  }
  return t;
}

void write_coefficients_csv(const std::filesystem::path& path, const HomogCoefficients& c) {
  CsvWriter w(path, {"name", "value", "order", "provenance"});
  for (std::size_t k = 0; k < kCoefCount; ++k) {
    const auto id = static_cast<Coef>(k);
    const std::array<std::string, 4> cells{
        std::string(name(id)), c.has(id) ? format_double(c.get(id)) : "nan",
        std::to_string(order_of(id)), std::string(name(c.provenance()))};
    w.row_text(cells);
  }
  w.close();
}

void write_fastvars_csv(const std::filesystem::path& path, const FastVarTable& t) {
  std::vector<std::string> header{"y"};
  std::vector<FastVar> present;
  for (FastVar v : kAllFastVars) {
    if (t.has(v)) {
      present.push_back(v);
      header.emplace_back(name(v));
    }
  }
  const auto ys = t.output_grid();
  std::vector<std::vector<double>> cols;
  for (FastVar v : present) cols.push_back(t.sample(v, ys));
  CsvWriter w(path, header);
  std::vector<double> row(header.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    row[0] = ys[i];
    for (std::size_t c = 0; c < cols.size(); ++c) row[c + 1] = cols[c][i];
    w.row(row);
  }
  w.close();
}

void write_field_csv(const std::filesystem::path& path, const WaveField& f) {
  CsvWriter w(path, {"x", "y", "p", "u", "v"});
  const auto& g = f.grid;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      w.row({g.x(i), g.y(j), f.p[k], f.u[k], f.v[k]});
    }
  }
  w.close();
}

void write_profile_csv(const std::filesystem::path& path, const Profile& pr) {
  CsvWriter w(path, {"x", "p", "u"});
  for (std::size_t i = 0; i < pr.x.size(); ++i) w.row({pr.x[i], pr.p[i], pr.u[i]});
  w.close();
}

void write_dispersion_csv(const std::filesystem::path& path,
                          std::span<const DispersionSample> samples) {
  CsvWriter w(path, {"k", "theta", "k_x", "k_y", "omega2", "phase_speed", "valid"});
  for (const auto& s : samples) {
    w.row({s.k, s.theta, s.kx, s.ky, s.omega2, s.phase_speed, s.valid ? 1.0 : 0.0});
  }
  w.close();
}

void write_polar_csv(const std::filesystem::path& path,
                     std::span<const PolarSample> samples) {
  CsvWriter w(path, {"theta", "c_eff"});
  for (const auto& s : samples) w.row({s.theta, s.c_eff});
  w.close();
}

void write_slice_csv(const std::filesystem::path& path, const WaveField& f, char along,
                     double at) {
  const auto& g = f.grid;
  CsvWriter w(path, {along == 'x' ? "x" : "y", "p", "u", "v"});
  auto nearest = [](double target, std::size_t n, auto coord) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(coord(k) - target) < std::abs(coord(best) - target)) best = k;
    }
    return best;
  };
  if (along == 'x') {
    const std::size_t j = nearest(at, g.ny, [&](std::size_t k) { return g.y(k); });
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      w.row({g.x(i), f.p[k], f.u[k], f.v[k]});
    }
  } else if (along == 'y') {
    const std::size_t i = nearest(at, g.nx, [&](std::size_t k) { return g.x(k); });
    for (std::size_t j = 0; j < g.ny; ++j) {
      const std::size_t k = g.index(i, j);
      w.row({g.y(j), f.p[k], f.u[k], f.v[k]});
    }
  } else {
    throw InvalidParameter("slice direction must be 'x' or 'y'");
  }
  w.close();
}

}  // namespace layerwave
