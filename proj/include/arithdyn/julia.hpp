#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

struct RenderSpec {
  double xmin = -2, xmax = 2, ymin = -2, ymax = 2;
  /// Pixels per axis.
  unsigned resolution = 256;
  unsigned max_iter = 256;
  double escape_radius = 2;

  /// Throws std::invalid_argument for degenerate windows or zero sizes.
  void validate() const;
};

/// Escape-time image, row-major with row 0 at ymax. Pixel (col, row) samples
/// the center of its cell.
struct JuliaImage {
  unsigned width = 0, height = 0, max_iter = 0;
  /// min(iterations to exceed the escape radius, max_iter).
  std::vector<std::uint32_t> iterations;
  /// Green function estimate (log|z_n| + log|a_d|/(d-1)) / d^n at escape,
  /// 0 for points that never escape.
  std::vector<double> green;
  std::vector<double> re, im;

  std::uint32_t at(unsigned col, unsigned row) const { return iterations[row * width + col]; }
};

/// Renders the filled Julia set of f under the embedding zeta_N ->
/// exp(2 pi i k / N). Rows are computed in parallel; output is deterministic.
JuliaImage julia_render(const Polynomial& f, std::uint64_t embedding, const RenderSpec& spec);

/// Binary PGM-style P5 image; maxval = max_iter when it fits in 16 bits,
/// otherwise values are scaled to 65535.
void write_ppm(std::ostream& out, const JuliaImage& image);
/// CSV with header `re,im,green`, one row per pixel in image order.
void write_green_csv(std::ostream& out, const JuliaImage& image);

}  // namespace arithdyn
