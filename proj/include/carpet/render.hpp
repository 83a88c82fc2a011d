#pragma once

#include <span>
#include <string>
#include <vector>

#include "carpet/chamber.hpp"
#include "carpet/projection.hpp"

namespace carpet {

struct Palette {
  std::string background = "#000000";
  std::string disc = "#ffffff";
  std::string hole = "#ffffff";
  std::string half_plane = "#ffffff";
  std::string outline = "#ff0000";
  std::string complement = "#3080ff";
};

enum class Paint {
  kFill,        // regions filled with their palette colour
  kOutline,     // boundary circles only
  kComplement,  // everything inside the unit disc except the regions
};

struct RenderSpec {
  std::vector<DiscRegion> regions;
  Palette palette;
  Paint paint = Paint::kFill;
  int canvas_px = 1024;
  double stroke_width = 0.004;  // plane units

  static RenderSpec FromBoundary(ChamberBoundary const& boundary,
                                 Paint paint = Paint::kFill);
};

// Standalone SVG 1.1 document, viewBox [−1.05, −1.05, 2.1, 2.1], clipped to
// the closed unit disc drawn in the background colour. The plane point
// (z₁, z₂) is drawn at (z₁, −z₂). Throws InvalidArgument for canvas_px < 64
// or an empty palette colour.
std::string render_svg(RenderSpec const& spec);

// Layers drawn in order; canvas and background come from the first layer.
// A single layer renders exactly like render_svg.
std::string render_overlay(std::span<RenderSpec const> layers);

// Element order inside a layer: radius descending (half-planes first), then
// centre, then source vector, lexicographically.
std::vector<DiscRegion> render_order(std::vector<DiscRegion> regions);

// Fixed 9-decimal notation with negative zero normalized.
std::string format_number(double x);

}  // namespace carpet
