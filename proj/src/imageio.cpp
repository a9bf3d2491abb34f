#include "pdtv/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>

#include "pdtv/operators.hpp"

namespace pdtv {

namespace {

void require_grid(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::domain_error("phantom: rows and cols must be >= 1");
}

void require_disk_inside(double cr, double cc, double r, int rows, int cols) {
  if (r < 0.0) throw std::domain_error("phantom: disk radius must be >= 0");
  if (cr - r < -0.5 || cr + r > rows - 0.5 || cc - r < -0.5 || cc + r > cols - 0.5)
    throw std::domain_error("phantom: disk leaves the grid");
}

/// mt19937_64 + Box-Muller, pinned independent of the standard library's
/// distribution internals so identical seeds give identical noise everywhere.
class GaussianSampler {
public:
  explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();  // (0,1], so the log is finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

private:
  double uniform01() {
    return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

PhantomSpec centered_rectangle(int rows, int cols, double fg, double bg) {
  require_grid(rows, cols);
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::rectangle;
  s.rows = rows;
  s.cols = cols;
  s.foreground = fg;
  s.background = bg;
  s.row0 = rows / 4;
  s.row1 = rows - rows / 4;
  s.col0 = cols / 4;
  s.col1 = cols - cols / 4;
  return s;
}

PhantomSpec centered_disk(int rows, int cols, double radius, double fg, double bg) {
  require_grid(rows, cols);
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::disk;
  s.rows = rows;
  s.cols = cols;
  s.foreground = fg;
  s.background = bg;
  s.center_row = (rows - 1) / 2.0;
  s.center_col = (cols - 1) / 2.0;
  s.radius = radius;
  return s;
}

PhantomSpec default_blob(int rows, int cols, double fg, double bg) {
  require_grid(rows, cols);
  PhantomSpec s;
  s.kind = PhantomSpec::Kind::blob;
  s.rows = rows;
  s.cols = cols;
  s.foreground = fg;
  s.background = bg;
  const double scale = std::min(rows, cols);
  s.lobes = {{{0.42 * rows, 0.40 * cols, 0.16 * scale}},
             {{0.58 * rows, 0.48 * cols, 0.18 * scale}},
             {{0.46 * rows, 0.62 * cols, 0.14 * scale}}};
  return s;
}

ScalarField make_phantom(const PhantomSpec& spec) {
  require_grid(spec.rows, spec.cols);
  ScalarField out(spec.rows, spec.cols, spec.background);
  switch (spec.kind) {
    case PhantomSpec::Kind::rectangle: {
      if (spec.row0 < 0 || spec.col0 < 0 || spec.row1 > spec.rows ||
          spec.col1 > spec.cols || spec.row0 > spec.row1 || spec.col0 > spec.col1)
        throw std::domain_error("phantom: rectangle leaves the grid");
      for (int i = spec.row0; i < spec.row1; ++i)
        for (int j = spec.col0; j < spec.col1; ++j)
          out(i, j) = spec.foreground;
      break;
    }
    case PhantomSpec::Kind::disk: {
      require_disk_inside(spec.center_row, spec.center_col, spec.radius,
                          spec.rows, spec.cols);
      const double r2 = spec.radius * spec.radius;
      for (int i = 0; i < spec.rows; ++i)
        for (int j = 0; j < spec.cols; ++j) {
          const double di = i - spec.center_row;
          const double dj = j - spec.center_col;
          // strict: a radius-0 disk is empty even when the center sits
          // exactly on a cell center
          if (di * di + dj * dj < r2) out(i, j) = spec.foreground;
        }
      break;
    }
    case PhantomSpec::Kind::blob: {
      if (spec.lobes.empty())
        throw std::domain_error("phantom: blob needs at least one lobe");
      for (const auto& lobe : spec.lobes)
        require_disk_inside(lobe[0], lobe[1], lobe[2], spec.rows, spec.cols);
      for (int i = 0; i < spec.rows; ++i)
        for (int j = 0; j < spec.cols; ++j) {
          for (const auto& lobe : spec.lobes) {
            const double di = i - lobe[0];
            const double dj = j - lobe[1];
            if (di * di + dj * dj < lobe[2] * lobe[2]) {
              out(i, j) = spec.foreground;
              break;
            }
          }
        }
      break;
    }
  }
  return out;
}

ScalarField add_gaussian_noise(const ScalarField& u, double sigma,
                               std::uint64_t seed) {
  if (sigma < 0.0) throw std::domain_error("add_gaussian_noise: sigma must be >= 0");
  if (sigma == 0.0) return u;
  ScalarField out = u;
  GaussianSampler gen(seed);
  double* o = out.data();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] += sigma * gen.next();
  return out;
}

ScalarField edge_weight(const ScalarField& image, double beta, double eps) {
  if (beta < 0.0 || !(eps > 0.0))
    throw std::domain_error("edge_weight: beta must be >= 0 and eps > 0");
  const VectorField g = grad(image, SchemeKind::standard);
  ScalarField out(image.rows(), image.cols());
  const double* gp = g.data();
  double* o = out.data();
  for (std::size_t c = 0; c < out.size(); ++c) {
    const double sq = gp[2 * c] * gp[2 * c] + gp[2 * c + 1] * gp[2 * c + 1];
    o[c] = eps + 1.0 / (1.0 + beta * sq);
  }
  return out;
}

namespace {

/// Whitespace-delimited PGM header tokenizer; '#' starts a comment running to
/// end of line. Keeps a byte cursor for error reporting.
struct Tokenizer {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      const unsigned char c = bytes[pos];
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        return;
      }
    }
  }

  std::string token() {
    skip_space_and_comments();
    if (pos >= bytes.size()) throw ParseError("pgm: unexpected end of header", pos);
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#')
      t += static_cast<char>(bytes[pos++]);
    return t;
  }

  long number(const char* what) {
    const std::size_t at = pos;
    const std::string t = token();
    for (char c : t)
      if (c < '0' || c > '9')
        throw ParseError(std::string("pgm: bad ") + what + " '" + t + "'", at);
    errno = 0;
    const long v = std::strtol(t.c_str(), nullptr, 10);
    if (errno != 0 || t.size() > 10)
      throw ParseError(std::string("pgm: ") + what + " out of range", at);
    return v;
  }
};

}  // namespace

ScalarField parse_pgm(const std::vector<unsigned char>& bytes) {
  Tokenizer tk{bytes};
  if (tk.token() != "P5") throw ParseError("pgm: expected magic P5", 0);
  const long width = tk.number("width");
  const long height = tk.number("height");
  const long maxval = tk.number("maxval");
  if (width < 1 || height < 1)
    throw ParseError("pgm: dimensions must be >= 1", tk.pos);
  if (maxval < 1 || maxval > 255)
    throw ParseError("pgm: only 8-bit maxval (1..255) supported", tk.pos);
  // exactly one whitespace byte separates the header from the raster
  if (tk.pos >= bytes.size() || !std::isspace(bytes[tk.pos]))
    throw ParseError("pgm: missing raster separator", tk.pos);
  ++tk.pos;
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - tk.pos < need)
    throw ParseError("pgm: raster truncated", bytes.size());

  ScalarField out(static_cast<int>(height), static_cast<int>(width));
  double* o = out.data();
  for (std::size_t i = 0; i < need; ++i)
    o[i] = static_cast<double>(bytes[tk.pos + i]);
  return out;
}

ScalarField read_pgm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open image: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read failed: " + path.string());
  return parse_pgm(bytes);
}

void write_pgm(const ScalarField& u, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  char header[64];
  const int len = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n",
                                u.cols(), u.rows());
  f.write(header, len);
  std::vector<unsigned char> raster(u.size());
  const double* up = u.data();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = std::floor(std::clamp(up[i], 0.0, 255.0) + 0.5);
    raster[i] = static_cast<unsigned char>(std::min(v, 255.0));
  }
  f.write(reinterpret_cast<const char*>(raster.data()),
          static_cast<std::streamsize>(raster.size()));
  if (!f) throw IoError("short write: " + path.string());
}

}  // namespace pdtv
