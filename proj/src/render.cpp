#include "carpet/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace carpet {

namespace {

constexpr double kExtent = 1.05;

struct Point {
  double x, y;
};

double sort_radius(DiscRegion const& r) {
  return r.is_circle() ? r.radius : std::numeric_limits<double>::infinity();
}

Vec2 sort_center(DiscRegion const& r) {
  return r.is_circle() ? r.center : r.normal;
}

// Clip box ∩ {normal·z > offset}, in plane coordinates.
std::vector<Point> half_plane_polygon(DiscRegion const& h) {
  std::vector<Point> poly{{-kExtent, -kExtent},
                          {kExtent, -kExtent},
                          {kExtent, kExtent},
                          {-kExtent, kExtent}};
  auto value = [&](Point const& p) {
    return h.normal[0] * p.x + h.normal[1] * p.y - h.offset;
  };
  std::vector<Point> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point const& a = poly[i];
    Point const& b = poly[(i + 1) % poly.size()];
    double const va = value(a), vb = value(b);
    if (va > 0) out.push_back(a);
    if ((va > 0) != (vb > 0)) {
      double const t = va / (va - vb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

class SvgWriter {
 public:
  explicit SvgWriter(std::ostringstream& os) : os_(os) {}

  void circle(Vec2 c, double r, std::string const& attrs) {
    os_ << "<circle cx=\"" << format_number(c[0]) << "\" cy=\""
        << format_number(-c[1]) << "\" r=\"" << format_number(r) << "\" "
        << attrs << "/>\n";
  }

  void hole(Vec2 c, double r, std::string const& attrs) {
    std::string const e = format_number(kExtent);
    std::string const m = format_number(-kExtent);
    std::string const rr = format_number(r);
    os_ << "<path d=\"M" << m << ' ' << m << " H" << e << " V" << e << " H"
        << m << " Z M" << format_number(c[0] + r) << ' ' << format_number(-c[1])
        << " A" << rr << ' ' << rr << " 0 1 0 " << format_number(c[0] - r)
        << ' ' << format_number(-c[1]) << " A" << rr << ' ' << rr
        << " 0 1 0 " << format_number(c[0] + r) << ' ' << format_number(-c[1])
        << " Z\" fill-rule=\"evenodd\" " << attrs << "/>\n";
  }

  void polygon(std::vector<Point> const& pts, std::string const& attrs) {
    os_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) os_ << ' ';
      os_ << format_number(pts[i].x) << ',' << format_number(-pts[i].y);
    }
    os_ << "\" " << attrs << "/>\n";
  }

  void region_fill(DiscRegion const& r, std::string const& colour) {
    std::string const attrs = "fill=\"" + colour + "\"";
    switch (r.kind) {
      case RegionKind::kInteriorDisc: circle(r.center, r.radius, attrs); break;
      case RegionKind::kExteriorHole: hole(r.center, r.radius, attrs); break;
      case RegionKind::kHalfPlane: polygon(half_plane_polygon(r), attrs); break;
    }
  }

  void region_outline(DiscRegion const& r, std::string const& colour,
                      double width) {
    std::string const attrs = "fill=\"none\" stroke=\"" + colour +
                              "\" stroke-width=\"" + format_number(width) + "\"";
    if (r.is_circle()) {
      circle(r.center, r.radius, attrs);
    } else {
      // The box edges lie outside the unit-disc clip, so only the boundary
      // line shows.
      polygon(half_plane_polygon(r), attrs);
    }
  }

 private:
  std::ostringstream& os_;
};

void validate(RenderSpec const& spec) {
  if (spec.canvas_px < 64) {
    throw InvalidArgument("canvas_px must be at least 64");
  }
  Palette const& p = spec.palette;
  for (auto const* c : {&p.background, &p.disc, &p.hole, &p.half_plane,
                        &p.outline, &p.complement}) {
    if (c->empty()) throw InvalidArgument("palette colour is empty");
  }
}

std::string const& fill_colour(Palette const& p, RegionKind kind) {
  switch (kind) {
    case RegionKind::kInteriorDisc: return p.disc;
    case RegionKind::kExteriorHole: return p.hole;
    case RegionKind::kHalfPlane: return p.half_plane;
  }
  return p.disc;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
    s.erase(0, 1);
  }
  return s;
}

RenderSpec RenderSpec::FromBoundary(ChamberBoundary const& boundary,
                                    Paint paint) {
  RenderSpec spec;
  spec.regions = boundary.maximal_discs;
  spec.paint = paint;
  return spec;
}

std::vector<DiscRegion> render_order(std::vector<DiscRegion> regions) {
  std::stable_sort(regions.begin(), regions.end(),
                   [](DiscRegion const& a, DiscRegion const& b) {
                     double const ra = sort_radius(a), rb = sort_radius(b);
                     if (ra != rb) return ra > rb;
                     Vec2 const ca = sort_center(a), cb = sort_center(b);
                     if (ca != cb) return ca < cb;
                     if (a.source && b.source) return *a.source < *b.source;
                     return static_cast<bool>(b.source) && !a.source;
                   });
  return regions;
}

std::string render_svg(RenderSpec const& spec) {
  return render_overlay(std::span<RenderSpec const>(&spec, 1));
}

std::string render_overlay(std::span<RenderSpec const> layers) {
  if (layers.empty()) throw InvalidArgument("nothing to render");
  for (auto const& layer : layers) validate(layer);
  RenderSpec const& base = layers.front();

  std::ostringstream os;
  SvgWriter svg(os);
  std::string const lo = format_number(-kExtent);
  std::string const span = format_number(2 * kExtent);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << base.canvas_px << "\" height=\"" << base.canvas_px << "\" viewBox=\""
     << lo << ' ' << lo << ' ' << span << ' ' << span << "\">\n"
     << "<defs>\n<clipPath id=\"unit-disc\">\n";
  svg.circle({0, 0}, 1, "fill=\"#ffffff\"");
  os << "</clipPath>\n";

  std::vector<std::vector<DiscRegion>> ordered;
  for (auto const& layer : layers) ordered.push_back(render_order(layer.regions));

  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (layers[k].paint != Paint::kComplement) continue;
    os << "<mask id=\"layer-" << k << "-mask\" maskUnits=\"userSpaceOnUse\" x=\""
       << lo << "\" y=\"" << lo << "\" width=\"" << span << "\" height=\""
       << span << "\">\n"
       << "<rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << span
       << "\" height=\"" << span << "\" fill=\"#ffffff\"/>\n";
    for (auto const& r : ordered[k]) svg.region_fill(r, "#000000");
    os << "</mask>\n";
  }
  os << "</defs>\n";
  svg.circle({0, 0}, 1, "fill=\"" + base.palette.background + "\"");

  for (std::size_t k = 0; k < layers.size(); ++k) {
    RenderSpec const& layer = layers[k];
    if (ordered[k].empty() && layer.paint != Paint::kComplement) continue;
    os << "<g id=\"layer-" << k << "\" clip-path=\"url(#unit-disc)\">\n";
    switch (layer.paint) {
      case Paint::kFill:
        for (auto const& r : ordered[k]) {
          svg.region_fill(r, fill_colour(layer.palette, r.kind));
        }
        break;
      case Paint::kOutline:
        for (auto const& r : ordered[k]) {
          svg.region_outline(r, layer.palette.outline, layer.stroke_width);
        }
        break;
      case Paint::kComplement:
        os << "<rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << span
           << "\" height=\"" << span << "\" fill=\"" << layer.palette.complement
           << "\" mask=\"url(#layer-" << k << "-mask)\"/>\n";
        break;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace carpet
