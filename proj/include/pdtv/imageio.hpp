#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdtv/field.hpp"

namespace pdtv {

/// Malformed image data; byte_offset points at the offending position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset(byte_offset) {}
  std::size_t byte_offset = 0;
};

/// Filesystem-level failure (missing file, short write, ...).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Synthetic test image description. Geometry must stay inside the grid.
struct PhantomSpec {
  enum class Kind { rectangle, disk, blob };

  Kind kind = Kind::rectangle;
  int rows = 0, cols = 0;
  double foreground = 255.0;
  double background = 0.0;

  // rectangle: half-open cell ranges [row0,row1) x [col0,col1)
  int row0 = 0, col0 = 0, row1 = 0, col1 = 0;

  // disk: center in cell coordinates + radius; a cell belongs to the disk
  // when its center lies strictly within the radius (radius 0 is empty)
  double center_row = 0.0, center_col = 0.0, radius = 0.0;

  // blob: union of disks {center_row, center_col, radius}
  std::vector<std::array<double, 3>> lobes;
};

/// Centered canonical geometries used by the CLI shortcuts and tests.
PhantomSpec centered_rectangle(int rows, int cols, double fg = 255.0,
                               double bg = 0.0);
PhantomSpec centered_disk(int rows, int cols, double radius, double fg = 255.0,
                          double bg = 0.0);
/// Three overlapping lobes, connected, scaled to the grid.
PhantomSpec default_blob(int rows, int cols, double fg = 255.0,
                         double bg = 0.0);

/// Deterministic rasterization of the spec. Throws std::domain_error when the
/// geometry leaves the grid (disks/lobes must fit entirely).
ScalarField make_phantom(const PhantomSpec& spec);

/// Adds i.i.d. N(0, sigma^2) noise. The generator is pinned for
/// reproducibility across platforms: mt19937_64 seeded with `seed`, uniforms
/// via (x >> 11 + 1) * 2^-53 in (0,1], normals via the Box-Muller transform,
/// one variate per cell in row-major order. sigma = 0 returns u unchanged.
ScalarField add_gaussian_noise(const ScalarField& u, double sigma,
                               std::uint64_t seed);

/// Edge-stopping weight g = eps + 1/(1 + beta*|grad(image)|^2), so
/// g in [eps, 1+eps]: low across strong edges, 1+eps on flat regions.
/// beta >= 0 and eps > 0 (the eps floor keeps g usable as a ball radius).
ScalarField edge_weight(const ScalarField& image, double beta, double eps);

/// 8-bit binary PGM (P5). Reading maps bytes to reals in [0,255]; writing
/// clamps to [0,255] and rounds half up. Malformed content throws ParseError
/// with the byte offset; filesystem trouble throws IoError.
ScalarField read_pgm(const std::filesystem::path& path);
void write_pgm(const ScalarField& u, const std::filesystem::path& path);

/// Parse an in-memory P5 payload (exposed for tests and fixtures).
ScalarField parse_pgm(const std::vector<unsigned char>& bytes);

}  // namespace pdtv
