#include "carpet/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace carpet {

namespace {

using nlohmann::json;

Integer to_integer(json const& j, std::string const& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    std::string const s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() ||
        s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw ConfigError(field, "'" + s + "' is not an integer");
    }
    return Integer(s);
  }
  throw ConfigError(field, "expected an integer");
}

std::int64_t to_int64(json const& j, std::string const& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<Integer> integer_list(json const& j, std::string const& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  std::vector<Integer> out;
  for (auto const& x : j) out.push_back(to_integer(x, field));
  return out;
}

std::string colour(json const& j, std::string const& field) {
  if (!j.is_string() || j.get<std::string>().empty()) {
    throw ConfigError(field, "expected a non-empty colour string");
  }
  return j.get<std::string>();
}

void check_keys(json const& obj, std::string const& where,
                std::set<std::string> const& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError(where.empty() ? it.key() : where + "." + it.key(),
                        "unknown key");
    }
  }
}

GramLattice parse_gram(json const& j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("gram", "expected a non-empty array of rows");
  }
  std::vector<std::vector<Integer>> rows;
  for (auto const& row : j) rows.push_back(integer_list(row, "gram"));
  try {
    return GramLattice(std::move(rows));
  } catch (InvalidArgument const& e) {
    throw ConfigError("gram", e.what());
  }
}

void parse_palette(json const& j, Palette& p) {
  if (!j.is_object()) throw ConfigError("render.palette", "expected an object");
  check_keys(j, "render.palette",
             {"background", "disc", "hole", "half_plane", "outline", "complement"});
  if (j.contains("background")) p.background = colour(j["background"], "render.palette.background");
  if (j.contains("disc")) p.disc = colour(j["disc"], "render.palette.disc");
  if (j.contains("hole")) p.hole = colour(j["hole"], "render.palette.hole");
  if (j.contains("half_plane")) p.half_plane = colour(j["half_plane"], "render.palette.half_plane");
  if (j.contains("outline")) p.outline = colour(j["outline"], "render.palette.outline");
  if (j.contains("complement")) p.complement = colour(j["complement"], "render.palette.complement");
}

}  // namespace

JobConfig parse_job_config(std::string const& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config", "expected a JSON object");
  check_keys(root, "",
             {"name", "gram", "d", "coord_bound", "min_disc_radius",
              "mbm_squares", "classify_norms", "chamber_word", "render",
              "diagnostics", "comment"});

  JobConfig cfg;
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw ConfigError("name", "expected a string");
    cfg.name = root["name"].get<std::string>();
  }
  if (!root.contains("gram")) throw ConfigError("gram", "missing");
  cfg.gram = parse_gram(root["gram"]);

  if (!root.contains("d")) throw ConfigError("d", "missing");
  cfg.d = to_integer(root["d"], "d");
  if (!(cfg.d < 0)) throw ConfigError("d", "must be negative");

  if (root.contains("coord_bound")) {
    cfg.coord_bound = to_int64(root["coord_bound"], "coord_bound");
  }
  if (cfg.coord_bound < 1) throw ConfigError("coord_bound", "must be >= 1");

  if (root.contains("min_disc_radius")) {
    auto const& r = root["min_disc_radius"];
    if (!r.is_number() || r.get<double>() < 0) {
      throw ConfigError("min_disc_radius", "expected a non-negative number");
    }
    cfg.min_disc_radius = r.get<double>();
  }

  if (root.contains("mbm_squares")) {
    for (auto& m : integer_list(root["mbm_squares"], "mbm_squares")) {
      if (!(m < 0)) throw ConfigError("mbm_squares", "entries must be negative");
      cfg.mbm_squares.insert(std::move(m));
    }
  }
  if (root.contains("classify_norms")) {
    cfg.classify_norms = integer_list(root["classify_norms"], "classify_norms");
    for (auto const& n : cfg.classify_norms) {
      if (!(n < 0)) throw ConfigError("classify_norms", "entries must be negative");
    }
  } else {
    cfg.classify_norms = {cfg.d};
  }
  if (root.contains("chamber_word")) {
    auto const& w = root["chamber_word"];
    if (!w.is_array()) throw ConfigError("chamber_word", "expected an array");
    for (auto const& i : w) {
      if (!i.is_number_unsigned()) {
        throw ConfigError("chamber_word", "entries must be non-negative integers");
      }
      cfg.chamber_word.push_back(i.get<std::size_t>());
    }
  }

  if (root.contains("render")) {
    auto const& r = root["render"];
    if (!r.is_object()) throw ConfigError("render", "expected an object");
    check_keys(r, "render", {"canvas_px", "palette", "highlight_norms"});
    if (r.contains("canvas_px")) {
      cfg.render.canvas_px =
          static_cast<int>(to_int64(r["canvas_px"], "render.canvas_px"));
    }
    if (cfg.render.canvas_px < 64) {
      throw ConfigError("render.canvas_px", "must be at least 64");
    }
    if (r.contains("palette")) parse_palette(r["palette"], cfg.render.palette);
    if (r.contains("highlight_norms")) {
      cfg.render.highlight_norms =
          integer_list(r["highlight_norms"], "render.highlight_norms");
      for (auto const& n : cfg.render.highlight_norms) {
        if (!(n < 0)) {
          throw ConfigError("render.highlight_norms", "entries must be negative");
        }
      }
    }
  }

  if (root.contains("diagnostics")) {
    auto const& dj = root["diagnostics"];
    if (!dj.is_object()) throw ConfigError("diagnostics", "expected an object");
    check_keys(dj, "diagnostics",
               {"signature", "discriminant", "prime", "isotropy_prime",
                "isotropy_depth", "isotropic_search_bound", "density"});
    auto& diag = cfg.diagnostics;
    if (dj.contains("signature")) diag.signature = dj["signature"].get<bool>();
    if (dj.contains("discriminant")) diag.discriminant = dj["discriminant"].get<bool>();
    auto prime = [&](char const* key) -> std::optional<std::int64_t> {
      if (!dj.contains(key)) return std::nullopt;
      std::string const field = std::string("diagnostics.") + key;
      std::int64_t const p = to_int64(dj[key], field);
      if (!is_prime(p)) throw ConfigError(field, std::to_string(p) + " is not prime");
      return p;
    };
    diag.prime = prime("prime");
    diag.isotropy_prime = prime("isotropy_prime");
    if (dj.contains("isotropy_depth")) {
      diag.isotropy_depth = static_cast<int>(
          to_int64(dj["isotropy_depth"], "diagnostics.isotropy_depth"));
      if (diag.isotropy_depth < 1) {
        throw ConfigError("diagnostics.isotropy_depth", "must be >= 1");
      }
    }
    if (dj.contains("isotropic_search_bound")) {
      diag.isotropic_search_bound = to_int64(
          dj["isotropic_search_bound"], "diagnostics.isotropic_search_bound");
      if (*diag.isotropic_search_bound < 1) {
        throw ConfigError("diagnostics.isotropic_search_bound", "must be >= 1");
      }
    }
    if (dj.contains("density")) {
      auto const& den = dj["density"];
      if (!den.is_object()) throw ConfigError("diagnostics.density", "expected an object");
      check_keys(den, "diagnostics.density", {"samples", "eps"});
      DensityConfig dc;
      if (den.contains("samples")) {
        auto const s = to_int64(den["samples"], "diagnostics.density.samples");
        if (s < 1) throw ConfigError("diagnostics.density.samples", "must be >= 1");
        dc.samples = static_cast<std::size_t>(s);
      }
      if (den.contains("eps")) {
        if (!den["eps"].is_number() || den["eps"].get<double>() < 0) {
          throw ConfigError("diagnostics.density.eps", "expected a non-negative number");
        }
        dc.eps = den["eps"].get<double>();
      }
      diag.density = dc;
    }
  }
  return cfg;
}

JobConfig load_job_config(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_config(buf.str());
}

}  // namespace carpet
