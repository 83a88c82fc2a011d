#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "carpet/render.hpp"
#include "support.hpp"

namespace carpet {
namespace {

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count(std::string const& hay, std::string const& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

TEST(FormatNumber, FixedNineDecimals) {
  EXPECT_EQ(format_number(1.0), "1.000000000");
  EXPECT_EQ(format_number(-0.0), "0.000000000");
  EXPECT_EQ(format_number(-1e-12), "0.000000000");
  EXPECT_EQ(format_number(-0.5), "-0.500000000");
}

TEST(RenderSvg, EmptyBoundaryIsBlackDisc) {
  RenderSpec spec;
  std::string const svg = render_svg(spec);
  EXPECT_NE(svg.find("viewBox=\"-1.050000000 -1.050000000 2.100000000 2.100000000\""),
            std::string::npos);
  EXPECT_NE(svg.find("width=\"1024\" height=\"1024\""), std::string::npos);
  EXPECT_NE(svg.find("<circle cx=\"0.000000000\" cy=\"0.000000000\" r=\"1.000000000\" "
                     "fill=\"#000000\"/>"),
            std::string::npos);
  EXPECT_EQ(svg.find("<g "), std::string::npos);
  testing::SvgRaster const raster(svg);
  EXPECT_EQ(raster.shape_count(), 0u);
}

TEST(RenderSvg, UnitHolePaintsNothingInside) {
  RenderSpec spec;
  spec.regions.push_back(DiscRegion::Hole({0, 0}, 1));
  testing::SvgRaster const raster(render_svg(spec));
  ASSERT_EQ(raster.shape_count(), 1u);
  testing::Gen gen(1);
  for (int k = 0; k < 5000; ++k) {
    Vec2 const z{gen.real(-1, 1), gen.real(-1, 1)};
    if (z[0] * z[0] + z[1] * z[1] < 0.999) EXPECT_FALSE(raster.covered(z));
  }
}

TEST(RenderSvg, Validation) {
  RenderSpec spec;
  spec.canvas_px = 63;
  EXPECT_THROW(render_svg(spec), InvalidArgument);
  spec.canvas_px = 64;
  spec.palette.hole.clear();
  EXPECT_THROW(render_svg(spec), InvalidArgument);
  EXPECT_THROW(render_overlay({}), InvalidArgument);
}

TEST(RenderSvg, OrderIsRadiusThenCentre) {
  std::vector<DiscRegion> regions{DiscRegion::Disc({0.1, 0}, 0.2), DiscRegion::Disc({-0.1, 0}, 0.2),
                                  DiscRegion::HalfPlane({0, 1}, 0.5), DiscRegion::Disc({0, 0}, 0.5)};
  auto const ordered = render_order(regions);
  EXPECT_EQ(ordered[0].kind, RegionKind::kHalfPlane);
  EXPECT_EQ(ordered[1].radius, 0.5);
  EXPECT_EQ(ordered[2].center[0], -0.1);
  EXPECT_EQ(ordered[3].center[0], 0.1);
}

TEST(RenderSvg, InputOrderDoesNotMatter) {
  auto const fx = testing::make_fixture(testing::example1(), -1, 5);
  auto spec = RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame));
  std::string const a = render_svg(spec);
  std::reverse(spec.regions.begin(), spec.regions.end());
  EXPECT_EQ(render_svg(spec), a);
}

TEST(RenderOverlay, SingleLayerEqualsRenderSvg) {
  auto const fx = testing::make_fixture(testing::example0(), -1, 4);
  auto const spec = RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame));
  std::vector<RenderSpec> const layers{spec};
  EXPECT_EQ(render_overlay(layers), render_svg(spec));
}

TEST(RenderOverlay, TwoChambers) {
  auto const fx = testing::make_fixture(testing::example1(), -1, 6);
  std::vector<RenderSpec> layers{
      RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame)),
      RenderSpec::FromBoundary(adjacent_chamber(fx.walls, fx.frame, {0}), Paint::kComplement)};
  std::string const svg = render_overlay(layers);
  EXPECT_NE(svg.find("<mask id=\"layer-1-mask\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"#3080ff\" mask=\"url(#layer-1-mask)\""), std::string::npos);
  EXPECT_EQ(count(svg, "clip-path=\"url(#unit-disc)\""), 2u);
}

TEST(RenderOverlay, HighlightedIntersectCircles) {
  auto const L = GramLattice::Diagonal({5, -1, -5, -5});
  auto const frame = build_frame(L);
  auto const w = disc_region(frame, L.vector({1, 2, 1, 0}));
  auto const eta = disc_region(frame, L.vector({1, 2, 0, 1}));
  EXPECT_EQ(classify_circles(w, eta), PairClass::kTransversal);
  auto const fx = testing::make_fixture(L, -1, 6);
  RenderSpec highlight;
  highlight.paint = Paint::kOutline;
  highlight.regions = {w, eta};
  std::vector<RenderSpec> const layers{RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame)),
                                       highlight};
  std::string const svg = render_overlay(layers);
  auto const layer = svg.substr(svg.find("<g id=\"layer-1\""));
  EXPECT_EQ(count(layer, "stroke=\"#ff0000\""), 2u);
}

// Covered/uncovered agreement between the rasterized document and direct
// region membership, skipping pixels near any boundary.
double pixel_agreement(std::vector<DiscRegion> const& regions, std::string const& svg,
                       std::size_t n) {
  testing::SvgRaster const raster(svg);
  testing::PixelOracle const grid(n, -1.05, 1.05, true);
  double const pixel = 2.1 / static_cast<double>(n);
  std::size_t agree = 0, total = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!grid.in_scope(k)) continue;
    Vec2 const z = grid.point(k);
    bool near = false, covered = false;
    for (auto const& r : regions) {
      covered = covered || r.contains(z);
      double const edge = r.contains(z) ? r.complement().distance(z) : r.distance(z);
      near = near || edge < 1.5 * pixel;
    }
    if (near) continue;
    ++total;
    agree += raster.covered(z) == covered;
  }
  return static_cast<double>(agree) / static_cast<double>(total);
}

TEST(RenderSvg, GeometryFidelityOnGoldenLattices) {
  for (auto const& g : testing::golden_lattices()) {
    auto const fx = testing::make_fixture(g.lattice, g.d, std::min<std::int64_t>(g.bound, 6));
    std::vector<DiscRegion> all;
    for (auto const& v : fx.walls.vectors) all.push_back(disc_region(fx.frame, v));
    auto const spec = RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame));
    EXPECT_GE(pixel_agreement(all, render_svg(spec), 256), 0.99) << g.name;
  }
}

TEST(RenderSvg, Example0GoldenFixture) {
  auto const fx = testing::make_fixture(testing::example0(), -1, 8);
  std::string const svg = render_svg(RenderSpec::FromBoundary(maximal_discs(fx.walls, fx.frame)));
  std::string const golden = read_file(std::string(CARPET_GOLDEN_DIR) + "/example-0.svg");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(svg, golden);
  auto const again = testing::make_fixture(testing::example0(), -1, 8, 3);
  EXPECT_EQ(render_svg(RenderSpec::FromBoundary(maximal_discs(again.walls, again.frame, 3))), svg);
}

}  // namespace
}  // namespace carpet
