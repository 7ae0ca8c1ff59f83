#include "fockconv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "fockconv/error.hpp"

namespace fockconv::io {

namespace {

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Io, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorKind::Io, "trailing characters in '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// "x:<min>:<max>:<step>" -> {min, max, step}
void parse_axis(const std::string& token, const char* name, double& lo, double& hi, double& step) {
  const auto parts = split(token, ':');
  if (parts.size() != 4 || parts[0] != name) {
    throw Error(ErrorKind::Io, std::string("malformed grid header axis '") + token + "'");
  }
  lo = parse_double(parts[1]);
  hi = parse_double(parts[2]);
  step = parse_double(parts[3]);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_waveform_csv(std::ostream& out, const Waveform& waveform) {
  out << "t_s,re_rad_per_s,im_rad_per_s\n";
  for (std::size_t k = 0; k < waveform.samples.size(); ++k) {
    const double t = static_cast<double>(k) / waveform.sample_rate;
    out << format_double(t) << ',' << format_double(waveform.samples[k].real()) << ','
        << format_double(waveform.samples[k].imag()) << '\n';
  }
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  const GridGeometry& g = grid.geometry;
  out << "# x:" << format_double(g.x_min) << ':' << format_double(g.x_max) << ':'
      << format_double(g.dx) << " p:" << format_double(g.p_min) << ':' << format_double(g.p_max)
      << ':' << format_double(g.dp) << " kind:"
      << (grid.kind == GridKind::Exact ? "Exact" : "Measured") << '\n';
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      out << format_double(g.x(static_cast<int>(i))) << ',' << format_double(g.p(static_cast<int>(j)))
          << ',' << format_double(grid.values(i, j)) << '\n';
    }
  }
}

WignerGrid read_wigner_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty Wigner grid file");
  strip_cr(line);
  std::istringstream header(line);
  std::string hash, xs, ps, ks;
  header >> hash >> xs >> ps >> ks;
  if (hash != "#" || ks.rfind("kind:", 0) != 0) {
    throw Error(ErrorKind::Io, "malformed Wigner grid header: " + line);
  }
  WignerGrid grid;
  GridGeometry& g = grid.geometry;
  parse_axis(xs, "x", g.x_min, g.x_max, g.dx);
  parse_axis(ps, "p", g.p_min, g.p_max, g.dp);
  const std::string kind = ks.substr(5);
  if (kind == "Exact") {
    grid.kind = GridKind::Exact;
  } else if (kind == "Measured") {
    grid.kind = GridKind::Measured;
  } else {
    throw Error(ErrorKind::Io, "unknown grid kind '" + kind + "'");
  }
  const int nx = g.nx();
  const int np = g.np();
  grid.values.resize(nx, np);
  long row = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 3) throw Error(ErrorKind::Io, "expected x,p,w in row: " + line);
    if (row >= static_cast<long>(nx) * np) throw Error(ErrorKind::Io, "too many grid rows");
    const int i = static_cast<int>(row / np);
    const int j = static_cast<int>(row % np);
    const double x = parse_double(f[0]);
    const double p = parse_double(f[1]);
    if (std::abs(x - g.x(i)) > 1e-9 * std::max(1.0, std::abs(x)) ||
        std::abs(p - g.p(j)) > 1e-9 * std::max(1.0, std::abs(p))) {
      throw Error(ErrorKind::Io, "grid row out of order: " + line);
    }
    grid.values(i, j) = parse_double(f[2]);
    ++row;
  }
  if (row != static_cast<long>(nx) * np) {
    throw Error(ErrorKind::Io, "grid has " + std::to_string(row) + " rows, header implies " +
                                   std::to_string(static_cast<long>(nx) * np));
  }
  return grid;
}

void write_density_csv(std::ostream& out, const DensityMatrix& rho) {
  const CMatrix& m = rho.entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << i << ',' << j << ',' << format_double(m(i, j).real()) << ','
          << format_double(m(i, j).imag()) << '\n';
    }
  }
}

DensityMatrix read_density_csv(std::istream& in) {
  std::map<std::pair<long, long>, complex> entries;
  long dim = 0;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw Error(ErrorKind::Io, "expected i,j,re,im in row: " + line);
    const auto i = static_cast<long>(parse_double(f[0]));
    const auto j = static_cast<long>(parse_double(f[1]));
    if (i < 0 || j < 0) throw Error(ErrorKind::Io, "negative index in row: " + line);
    entries[{i, j}] = complex(parse_double(f[2]), parse_double(f[3]));
    dim = std::max({dim, i + 1, j + 1});
  }
  if (dim == 0 || static_cast<long>(entries.size()) != dim * dim) {
    throw Error(ErrorKind::Io, "density matrix file is empty or incomplete");
  }
  CMatrix m(dim, dim);
  for (const auto& [ij, v] : entries) m(ij.first, ij.second) = v;
  return DensityMatrix(std::move(m));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace fockconv::io
