#pragma once

// CSV exchange formats. All numbers are written with 17 significant digits
// and LF line endings.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fockconv/pulse.hpp"
#include "fockconv/tomography.hpp"

namespace fockconv::io {

/// Header `t_s,re_rad_per_s,im_rad_per_s`, one row per sample.
void write_waveform_csv(std::ostream& out, const Waveform& waveform);

/// First line `# x:<min>:<max>:<step> p:<min>:<max>:<step> kind:<Exact|Measured>`,
/// then `x,p,w` per pixel with x as the outer loop.
void write_wigner_csv(std::ostream& out, const WignerGrid& grid);
WignerGrid read_wigner_csv(std::istream& in);

/// One `i,j,re,im` row per entry.
void write_density_csv(std::ostream& out, const DensityMatrix& rho);
DensityMatrix read_density_csv(std::istream& in);

std::string format_double(double value);

/// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace fockconv::io
