#pragma once

#include <optional>
#include <string>

#include "voidroute/simnet.h"

namespace voidroute {

struct RenderOptions {
  int size = 800;  // width and height in pixels
  int margin = 30;
};

// SVG 1.1 drawing of the graph and, with a trace, the segment (s, t), the
// anchors and the transmissions colored by routing mode. Deterministic.
std::string render_svg(const GeometricGraph& g, const RouteTrace* trace = nullptr,
                       const RenderOptions& options = {});

}  // namespace voidroute
