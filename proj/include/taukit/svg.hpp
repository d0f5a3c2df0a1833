#pragma once

#include <string>

#include "taukit/exterior_map.hpp"

namespace taukit {

// Renders the sampled contour as one closed <path>, axes through the origin
// with unit tick marks, viewBox fitted to the curve with a 10% margin.
std::string svg_document(const SampledContour& contour);

// Writes svg_document(contour) to path; failures raise InputError naming the
// path.
void emit_svg(const SampledContour& contour, const std::string& path);

}  // namespace taukit
