#include "taukit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "taukit/errors.hpp"

namespace taukit {

namespace {

std::string num(Real v) {
  // Trim the noise snprintf leaves on short decimals; keeps files readable
  // and output deterministic.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string svg_document(const SampledContour& contour) {
  const int m = contour.samples();
  if (m < 3) throw InputError("svg output: contour must carry at least 3 samples");

  // SVG y grows downward; flip so the picture matches the plane.
  Real xmin = contour.z[0].real(), xmax = xmin;
  Real ymin = -contour.z[0].imag(), ymax = ymin;
  for (int k = 1; k < m; ++k) {
    xmin = std::min(xmin, contour.z[k].real());
    xmax = std::max(xmax, contour.z[k].real());
    ymin = std::min(ymin, -contour.z[k].imag());
    ymax = std::max(ymax, -contour.z[k].imag());
  }
  const Real extent = std::max({xmax - xmin, ymax - ymin, 1e-6});
  // Per-axis margins keep the viewBox aspect ratio equal to the contour's
  // bounding-box ratio.
  const Real mx = 0.1 * std::max(xmax - xmin, 1e-6);
  const Real my = 0.1 * std::max(ymax - ymin, 1e-6);
  const Real x0 = xmin - mx, y0 = ymin - my;
  const Real w = (xmax - xmin) + 2.0 * mx;
  const Real h = (ymax - ymin) + 2.0 * my;
  const Real stroke = extent / 200.0;
  const Real tick = 2.5 * stroke;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0)
      << " " << num(y0) << " " << num(w) << " " << num(h)
      << "\" width=\"640\" height=\"" << num(640.0 * h / w) << "\">\n";

  // Axes through the origin, clipped to the view.
  out << "<g stroke=\"#888\" stroke-width=\"" << num(0.5 * stroke)
      << "\" fill=\"none\">\n";
  out << "<line x1=\"" << num(x0) << "\" y1=\"0\" x2=\"" << num(x0 + w)
      << "\" y2=\"0\"/>\n";
  out << "<line x1=\"0\" y1=\"" << num(y0) << "\" x2=\"0\" y2=\""
      << num(y0 + h) << "\"/>\n";
  // Unit ticks; step up on huge spans so the file stays sane.
  const int step = std::max(1, static_cast<int>(std::ceil(extent / 20.0)));
  for (int k = static_cast<int>(std::ceil(x0)); k <= x0 + w; k += step) {
    if (k == 0) continue;
    out << "<line x1=\"" << k << "\" y1=\"" << num(-tick) << "\" x2=\"" << k
        << "\" y2=\"" << num(tick) << "\"/>\n";
  }
  for (int k = static_cast<int>(std::ceil(y0)); k <= y0 + h; k += step) {
    if (k == 0) continue;
    out << "<line x1=\"" << num(-tick) << "\" y1=\"" << k << "\" x2=\""
        << num(tick) << "\" y2=\"" << k << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g font-family=\"monospace\" font-size=\"" << num(8.0 * stroke)
      << "\" fill=\"#555\">\n";
  for (int k = static_cast<int>(std::ceil(x0)); k <= x0 + w; k += step) {
    if (k == 0) continue;
    out << "<text x=\"" << k << "\" y=\"" << num(5.0 * tick)
        << "\" text-anchor=\"middle\">" << k << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(y0)); k <= y0 + h; k += step) {
    if (k == 0) continue;
    out << "<text x=\"" << num(2.5 * tick) << "\" y=\"" << k << "\">" << -k
        << "</text>\n";
  }
  out << "</g>\n";

  out << "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"" << num(stroke)
      << "\" d=\"M";
  for (int k = 0; k < m; ++k) {
    out << (k == 0 ? "" : " L") << num(contour.z[k].real()) << " "
        << num(-contour.z[k].imag());
  }
  out << " Z\"/>\n</svg>\n";
  return out.str();
}

void emit_svg(const SampledContour& contour, const std::string& path) {
  const std::string doc = svg_document(contour);
  std::ofstream out(path);
  if (!out) throw InputError("svg output: cannot open " + path);
  out << doc;
  out.flush();
  if (!out) throw InputError("svg output: write failed for " + path);
}

}  // namespace taukit
