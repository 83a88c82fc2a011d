#include "carpet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carpet/chamber.hpp"
#include "carpet/config.hpp"
#include "carpet/enumerate.hpp"
#include "carpet/render.hpp"

namespace carpet {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<unsigned> threads;
  std::optional<std::int64_t> bound;
  std::uint64_t seed = 1;
};

unsigned thread_count(Options const& opt) {
  if (opt.threads) return *opt.threads;
  if (char const* env = std::getenv("CARPET_THREADS")) {
    try {
      long const n = std::stol(env);
      if (n >= 0) return static_cast<unsigned>(n);
    } catch (std::exception const&) {
    }
    throw ConfigError("CARPET_THREADS", std::string("invalid value '") + env + "'");
  }
  return 0;
}

JobConfig load(Options const& opt) {
  JobConfig cfg = load_job_config(opt.config);
  if (opt.bound) {
    if (*opt.bound < 1) throw ConfigError("--bound", "must be >= 1");
    cfg.coord_bound = *opt.bound;
  }
  return cfg;
}

WallSet walls_of_norm(JobConfig const& cfg, MinkowskiFrame const& frame,
                      Integer const& n, unsigned threads) {
  EnumRequest req{cfg.gram, n, cfg.coord_bound, cfg.min_disc_radius, threads};
  return enumerate(req, frame);
}

int cmd_render(Options const& opt, std::ostream& out) {
  JobConfig const cfg = load(opt);
  unsigned const threads = thread_count(opt);
  MinkowskiFrame const frame = build_frame(cfg.gram);
  WallSet const walls = walls_of_norm(cfg, frame, cfg.d, threads);
  ChamberBoundary const boundary = maximal_discs(walls, frame, threads);

  std::vector<RenderSpec> layers;
  RenderSpec base = RenderSpec::FromBoundary(boundary);
  base.palette = cfg.render.palette;
  base.canvas_px = cfg.render.canvas_px;
  layers.push_back(base);

  if (!cfg.chamber_word.empty()) {
    ChamberBoundary const next =
        adjacent_chamber(walls, frame, cfg.chamber_word, threads);
    RenderSpec layer = RenderSpec::FromBoundary(next, Paint::kComplement);
    layer.palette = cfg.render.palette;
    layer.canvas_px = cfg.render.canvas_px;
    layers.push_back(layer);
  }

  if (!walls.through_origin.empty()) {
    // No side of these walls faces the centre; only their circles are drawn.
    RenderSpec layer;
    layer.paint = Paint::kOutline;
    layer.palette = cfg.render.palette;
    layer.canvas_px = cfg.render.canvas_px;
    for (auto const& v : walls.through_origin) {
      layer.regions.push_back(disc_region(frame, v));
    }
    layers.push_back(std::move(layer));
  }

  std::size_t highlighted = 0;
  for (auto const& n : cfg.render.highlight_norms) {
    WallSet const extra = walls_of_norm(cfg, frame, n, threads);
    RenderSpec layer;
    layer.paint = Paint::kOutline;
    layer.palette = cfg.render.palette;
    layer.canvas_px = cfg.render.canvas_px;
    for (auto const& v : extra.vectors) {
      DiscRegion r = disc_region(frame, v);
      if (meets_unit_disc(r)) layer.regions.push_back(std::move(r));
    }
    highlighted += layer.regions.size();
    layers.push_back(std::move(layer));
  }

  std::string const svg = render_overlay(layers);
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + opt.out);
  file << svg;
  file.close();
  if (!file) throw InvalidArgument("failed writing " + opt.out);

  out << "vectors=" << walls.vectors.size()
      << " maximal=" << boundary.maximal_discs.size()
      << " pruned=" << (walls.pruned ? "true" : "false");
  if (!walls.through_origin.empty()) {
    out << " through_origin=" << walls.through_origin.size();
  }
  if (!cfg.render.highlight_norms.empty()) out << " highlighted=" << highlighted;
  out << '\n';
  return kExitOk;
}

int cmd_diagnose(Options const& opt, std::ostream& out) {
  JobConfig const cfg = load(opt);
  auto const& diag = cfg.diagnostics;
  GramLattice const& L = cfg.gram;
  Signature const sig = signature(L);
  Integer const det = L.determinant();

  if (!cfg.name.empty()) out << "name=" << cfg.name << '\n';
  out << "rank=" << L.rank() << '\n';
  if (diag.signature) out << "signature=" << sig.to_string() << '\n';
  if (diag.discriminant) {
    out << "det=" << det << '\n';
    if (det == 0) {
      out << "divisors=degenerate\n";
    } else {
      DiscriminantData const disc = discriminant(L);
      out << "divisors=" << disc.to_string() << '\n';
      out << "disc_order=" << disc.order() << '\n';
    }
  }
  if (diag.prime) {
    std::int64_t const p = *diag.prime;
    out << "prime=" << p << '\n';
    if (det == 0) {
      out << "fp_dim=degenerate\n";
    } else {
      out << "fp_dim=" << disc_fp_dimension(L, p) << '\n';
    }
    std::set<Integer> norms(cfg.mbm_squares.begin(), cfg.mbm_squares.end());
    norms.insert(cfg.d);
    norms.insert(cfg.classify_norms.begin(), cfg.classify_norms.end());
    bool pass = det != 0;
    for (auto const& a : norms) {
      for (auto const& b : norms) {
        pass = pass && discriminant_excludes_transversal(L, p, a, b);
      }
    }
    out << "rk2_hypothesis=" << (pass ? "pass" : "fail") << '\n';
  }
  if (diag.isotropy_prime) {
    out << "isotropy_prime=" << *diag.isotropy_prime << '\n';
    out << "isotropy_depth=" << diag.isotropy_depth << '\n';
    out << "isotropic="
        << to_string(isotropic_mod_p_certificate(L, *diag.isotropy_prime,
                                                 diag.isotropy_depth))
        << '\n';
  }
  if (diag.isotropic_search_bound) {
    auto const found = isotropic_search(L, *diag.isotropic_search_bound);
    out << "isotropic_search_bound=" << *diag.isotropic_search_bound << '\n';
    out << "isotropic_found=" << found.size() << '\n';
    if (!found.empty()) out << "isotropic_example=" << found.front().to_string() << '\n';
  }
  if (diag.density) {
    unsigned const threads = thread_count(opt);
    MinkowskiFrame const frame = build_frame(L);
    WallSet const walls = walls_of_norm(cfg, frame, cfg.d, threads);
    ChamberBoundary const boundary = maximal_discs(walls, frame, threads);
    double const density = density_probe(boundary, diag.density->samples,
                                         diag.density->eps, opt.seed);
    out << "density_bound=" << cfg.coord_bound << '\n';
    out << "density_eps=" << diag.density->eps << '\n';
    out << "density_samples=" << diag.density->samples << '\n';
    out << "density_maximal=" << boundary.maximal_discs.size() << '\n';
    out << "density=" << density << '\n';
  }
  return kExitOk;
}

int cmd_classify(Options const& opt, std::ostream& out) {
  JobConfig const cfg = load(opt);
  if (cfg.mbm_squares.empty()) throw ConfigError("mbm_squares", "missing or empty");
  unsigned const threads = thread_count(opt);
  MinkowskiFrame const frame = build_frame(cfg.gram);

  ComponentSearch search;
  search.bound = cfg.coord_bound;
  search.frame = &frame;
  search.min_disc_radius = cfg.min_disc_radius;
  search.threads = threads;
  MbmCandidates const candidates = mbm_candidates(cfg.gram, cfg.mbm_squares, search);

  std::set<Integer> seen;
  for (auto const& n : cfg.classify_norms) {
    if (!seen.insert(n).second) continue;
    WallSet const walls = walls_of_norm(cfg, frame, n, threads);
    std::map<ComponentVerdict, std::size_t> verdicts;
    for (auto const& w : walls.vectors) {
      ComponentClass const c = classify_component(cfg.gram, w, candidates);
      ++verdicts[c.verdict];
      out << "wall vector=" << w.to_string() << " norm=" << w.norm()
          << " verdict=" << to_string(c.verdict)
          << " justification=" << to_string(c.justification);
      if (c.prime) out << " prime=" << *c.prime;
      out << " witnesses=" << c.witnesses.size();
      if (!c.witnesses.empty()) out << " witness=" << c.witnesses.front().to_string();
      out << '\n';
    }

    std::map<PairClass, std::size_t> pairs;
    for (std::size_t i = 0; i < walls.vectors.size(); ++i) {
      for (std::size_t j = i + 1; j < walls.vectors.size(); ++j) {
        ++pairs[classify_pair(cfg.gram, walls.vectors[i], walls.vectors[j])];
      }
    }
    out << "pair_counts norm=" << n << " walls=" << walls.vectors.size()
        << " disjoint=" << pairs[PairClass::kDisjoint]
        << " tangent=" << pairs[PairClass::kTangent]
        << " transversal=" << pairs[PairClass::kTransversal]
        << " nested=" << pairs[PairClass::kNestedOrEqual] << '\n';
    out << "verdict_counts norm=" << n
        << " baragar=" << verdicts[ComponentVerdict::kBaragar]
        << " carpet-non-baragar=" << verdicts[ComponentVerdict::kCarpetNonBaragar]
        << " not-component=" << verdicts[ComponentVerdict::kNotComponent]
        << " inconclusive-at-bound=" << verdicts[ComponentVerdict::kInconclusiveAtBound]
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Apollonian carpet chambers of hyperbolic lattices", "carpet"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Job configuration (JSON)")
        ->required();
    sub->add_option("--threads", opt.threads, "Worker threads, 0 = all cores");
    sub->add_option("--bound", opt.bound, "Override coord_bound");
    sub->add_option("--seed", opt.seed, "Seed of the density probe");
  };
  CLI::App* render = app.add_subcommand("render", "Draw the chamber as SVG");
  add_common(render);
  render->add_option("--out", opt.out, "Output SVG path")->required();
  CLI::App* diagnose = app.add_subcommand("diagnose", "Lattice diagnostics");
  add_common(diagnose);
  CLI::App* classify = app.add_subcommand("classify", "Classify walls as carpet components");
  add_common(classify);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitOk;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }

  try {
    if (render->parsed()) return cmd_render(opt, out);
    if (diagnose->parsed()) return cmd_diagnose(opt, out);
    return cmd_classify(opt, out);
  } catch (ConfigError const& e) {
    err << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (WrongSignature const& e) {
    err << "wrong signature: " << e.what() << '\n';
    return kExitWrongSignature;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace carpet
