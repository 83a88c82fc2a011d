#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carpet/lattice.hpp"
#include "carpet/render.hpp"

namespace carpet {

// Malformed or invalid job configuration. `field()` names the offending key.
class ConfigError : public CarpetError {
 public:
  ConfigError(std::string field, std::string const& message)
      : CarpetError(field + ": " + message), field_(std::move(field)) {}
  std::string const& field() const { return field_; }

 private:
  std::string field_;
};

struct DensityConfig {
  std::size_t samples = 20000;
  double eps = 0.01;
};

struct DiagnosticsConfig {
  bool signature = true;
  bool discriminant = true;
  // fp-dimension and the rank-two discriminant criterion.
  std::optional<std::int64_t> prime;
  std::optional<std::int64_t> isotropy_prime;
  int isotropy_depth = 2;
  std::optional<std::int64_t> isotropic_search_bound;
  std::optional<DensityConfig> density;
};

struct RenderConfig {
  int canvas_px = 1024;
  Palette palette;
  // Walls of these norms are drawn as outlined circles on top.
  std::vector<Integer> highlight_norms;
};

// One job, read from a single JSON document:
//
// {
//   "name": "example-0",
//   "gram": [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]],
//   "d": -1,
//   "coord_bound": 8,
//   "min_disc_radius": 0.01,            (optional)
//   "mbm_squares": [-1],
//   "classify_norms": [-4],             (optional, defaults to [d])
//   "chamber_word": [0],                (optional)
//   "render": {"canvas_px": 1024, "palette": {"disc": "#ffffff"},
//              "highlight_norms": [-4]},
//   "diagnostics": {"prime": 5, "isotropy_prime": 7, "isotropy_depth": 2,
//                   "isotropic_search_bound": 50,
//                   "density": {"samples": 20000, "eps": 0.01}}
// }
//
// Matrix entries and norms may be JSON integers or decimal strings.
struct JobConfig {
  std::string name;
  GramLattice gram = GramLattice::Diagonal({1});
  Integer d = -1;
  std::int64_t coord_bound = 8;
  std::optional<double> min_disc_radius;
  std::set<Integer> mbm_squares;
  std::vector<Integer> classify_norms;
  std::vector<std::size_t> chamber_word;
  RenderConfig render;
  DiagnosticsConfig diagnostics;
};

JobConfig parse_job_config(std::string const& json_text);
// Throws ConfigError("config", ...) when the file cannot be read.
JobConfig load_job_config(std::string const& path);

}  // namespace carpet
