#include "rk/svg.hpp"

#include <cstdio>
#include <optional>

#include "rk/spectral_regions.hpp"

namespace rk {
namespace {

constexpr double kSize = 800.0;
constexpr double kSpan = 1.05;

double px(double re) { return (re + kSpan) / (2.0 * kSpan) * kSize; }
double py(double im) { return (kSpan - im) / (2.0 * kSpan) * kSize; }

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string polygon_path(const BoundaryTrace& trace) {
  std::string d;
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    const Complex z = trace.points[i].z;
    d += i == 0 ? "M" : " L";
    d += fixed(px(z.real())) + "," + fixed(py(z.imag()));
  }
  d += " Z";
  return d;
}

}  // namespace

std::string render_region_svg(const RKParams& params, std::size_t points, unsigned threads) {
  if (points < 16) throw DomainError("region rendering needs at least 16 boundary points");
  const double alpha = params.alpha();
  const double beta = params.beta();

  RegionShape white = ClosedUnitDisk{};
  std::optional<RegionShape> border;
  if (beta < 1.0) {
    const RegionDescriptor region = region_for(params);
    white = region.shape;
    if (unit_sum_sign(alpha, beta) > 0) {
      const double cab = torus_constant(params);
      white = OmegaGap(1.0 / cab, alpha / (1.0 - beta));
      border = region.shape;
    }
  }

  const std::string cx = fixed(px(0.0));
  const std::string cy = fixed(py(0.0));
  const std::string r = fixed(kSize / (2.0 * kSpan));

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  svg += "<title>alpha=" + format_short(alpha) + " beta=" + format_short(beta) + " C=" + format_short(params.c()) +
         "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
  svg += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"" + r + "\" fill=\"#c6dbef\" stroke=\"none\"/>\n";
  svg += "<path d=\"" + polygon_path(boundary_trace(white, points, threads)) +
         "\" fill=\"#ffffff\" stroke=\"none\"/>\n";
  if (border)
    svg += "<path d=\"" + polygon_path(boundary_trace(*border, points, threads)) +
           "\" fill=\"none\" stroke=\"#00bcd4\" stroke-width=\"2.000\"/>\n";
  svg += "<line x1=\"" + fixed(px(-kSpan)) + "\" y1=\"" + cy + "\" x2=\"" + fixed(px(kSpan)) + "\" y2=\"" + cy +
         "\" stroke=\"#969696\" stroke-width=\"0.750\"/>\n";
  svg += "<line x1=\"" + cx + "\" y1=\"" + fixed(py(kSpan)) + "\" x2=\"" + cx + "\" y2=\"" + fixed(py(-kSpan)) +
         "\" stroke=\"#969696\" stroke-width=\"0.750\"/>\n";
  svg += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"" + r +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.500\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace rk
