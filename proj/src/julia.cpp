#include "arithdyn/julia.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "arithdyn/serialize.hpp"

namespace arithdyn {

void RenderSpec::validate() const {
  if (!(xmin < xmax) || !(ymin < ymax)) throw std::invalid_argument("render window is degenerate");
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax)) {
    throw std::invalid_argument("render window must be finite");
  }
  if (resolution == 0) throw std::invalid_argument("resolution must be >= 1");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be >= 1");
  if (!(escape_radius > 0)) throw std::invalid_argument("escape radius must be positive");
}

JuliaImage julia_render(const Polynomial& f, std::uint64_t embedding, const RenderSpec& spec) {
  spec.validate();
  if (f.degree() < 2) throw std::invalid_argument("julia_render needs degree >= 2");
  const int d = f.degree();
  std::vector<std::complex<double>> c;
  for (const auto& a : f.coeffs()) c.push_back(a.embed(embedding));
  const double log_lead = std::log(std::abs(c.back())) / (d - 1);

  JuliaImage img;
  img.width = img.height = spec.resolution;
  img.max_iter = spec.max_iter;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.iterations.assign(n, 0);
  img.green.assign(n, 0.0);
  img.re.assign(n, 0.0);
  img.im.assign(n, 0.0);

  const double dx = (spec.xmax - spec.xmin) / img.width;
  const double dy = (spec.ymax - spec.ymin) / img.height;
  const double r2 = spec.escape_radius * spec.escape_radius;

  auto render_row = [&](unsigned row) {
    for (unsigned col = 0; col < img.width; ++col) {
      const std::size_t idx = static_cast<std::size_t>(row) * img.width + col;
      const double x = spec.xmin + (col + 0.5) * dx;
      const double y = spec.ymax - (row + 0.5) * dy;
      img.re[idx] = x;
      img.im[idx] = y;
      std::complex<double> z(x, y);
      unsigned k = 0;
      double scale = 1.0;
      while (k < spec.max_iter && std::norm(z) <= r2) {
        std::complex<double> acc = c.back();
        for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
        z = acc;
        scale /= d;
        ++k;
      }
      img.iterations[idx] = k;
      if (std::norm(z) > r2) img.green[idx] = std::max(0.0, (std::log(std::abs(z)) + log_lead) * scale);
    }
  };

  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), img.height));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (unsigned row = w; row < img.height; row += workers) render_row(row);
    });
  }
  for (auto& t : pool) t.join();
  return img;
}

void write_ppm(std::ostream& out, const JuliaImage& image) {
  const unsigned maxval = std::min(image.max_iter, 65535u);
  out << "P5\n" << image.width << " " << image.height << "\n" << maxval << "\n";
  for (std::uint32_t v : image.iterations) {
    const std::uint32_t scaled =
        image.max_iter <= 65535u ? v : static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * 65535u / image.max_iter);
    if (maxval < 256) {
      out.put(static_cast<char>(scaled));
    } else {
      out.put(static_cast<char>(scaled >> 8));
      out.put(static_cast<char>(scaled & 0xff));
    }
  }
}

void write_green_csv(std::ostream& out, const JuliaImage& image) {
  out << "re,im,green\n";
  for (std::size_t i = 0; i < image.iterations.size(); ++i) {
    out << format_double(image.re[i]) << "," << format_double(image.im[i]) << "," << format_double(image.green[i])
        << "\n";
  }
}

}  // namespace arithdyn
