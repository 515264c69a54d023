#include <algorithm>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"
#include "cvk/io.hpp"
#include "cvk/orbit.hpp"
#include "cvk/truncate.hpp"

namespace {

using namespace cvk;

struct Options {
  RunConfig config;
  std::string input;
  std::string out;
  std::string format;
  int count = 200;
};

MirrorPolytope load(const Options& o) { return polytope_from_json(read_json_file(o.input), o.config.tol); }

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else write_text_file(o.out, text);
}

void run_classify(const Options& o) { emit(o, classification_report(load(o), o.config).dump(2) + "\n"); }

void run_truncate(const Options& o) {
  const TruncationResult r = truncate_all(load(o), o.config.tol);
  emit(o, polytope_to_json(r.polytope).dump(2) + "\n");
}

void run_tile(const Options& o) {
  const MirrorPolytope p = load(o);
  const TilingSnapshot snap = orbit_tiles(p, o.config.max_word_length, o.config.tol, o.config.seed);
  const std::string fmt = o.format.empty() ? (p.dim() == 2 ? "svg" : p.dim() == 3 ? "ply" : "json") : o.format;
  if (fmt == "svg") {
    std::vector<Vec> limit;
    try {
      limit = limit_set_approx(p, o.count, 4, 16, o.config.seed, o.config.tol).points;
    } catch (const Error& e) {
      if (exit_status(e.code()) == 4) throw;
    }
    emit(o, tiling_svg(snap, limit));
  } else if (fmt == "ply") {
    const DisplayProjection proj(snap);
    std::vector<std::vector<double>> pts;
    for (const Tile& t : snap.tiles)
      for (const Vec& v : t.vertices) pts.push_back(proj(v));
    emit(o, point_cloud_ply(pts));
  } else if (fmt != "json") {
    throw Error(ErrorCode::InvalidConfig, "tile writes svg, ply or json");
  }
  const std::string stats = tiling_stats(snap).dump(2) + "\n";
  if (fmt == "json") emit(o, stats);
  else std::cout << stats;
}

void run_limit_set(const Options& o) {
  const MirrorPolytope p = load(o);
  const int max_len = std::max(o.config.max_word_length, 2);
  const LimitSetSample s = limit_set_approx(p, o.count, max_len / 2, max_len, o.config.seed, o.config.tol);
  std::vector<double> residuals;
  Json stats = {{"schema", kSchema}, {"points", s.points.size()}, {"attempts", s.attempts}};
  try {
    const ZariskiReport z = zariski_closure(p, o.config.tol, o.config.seed);
    if (z.form) {
      double worst = 0.0;
      for (const Vec& x : s.points) {
        residuals.push_back(quadric_residual(*z.form, x));
        worst = std::max(worst, residuals.back());
      }
      stats["max_quadric_residual"] = worst;
    }
  } catch (const Error& e) {
    if (exit_status(e.code()) == 4) throw;
  }
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "csv") {
    emit(o, points_csv(s.points, residuals));
    std::cout << stats.dump(2) << "\n";
  } else if (fmt == "json") {
    Json pts = Json::array();
    for (const Vec& x : s.points) pts.push_back(std::vector<double>(x.data(), x.data() + x.size()));
    stats["coordinates"] = pts;
    emit(o, stats.dump(2) + "\n");
  } else {
    throw Error(ErrorCode::InvalidConfig, "limit-set writes csv or json");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter polytopes in convex projective geometry"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--eps", o.config.tol.eps, "numerical zero")->capture_default_str();
  app.add_option("--delta", o.config.tol.delta, "dihedral angle tolerance")->capture_default_str();
  app.add_option("--grid", o.config.tol.grid, "orbit deduplication grid")->capture_default_str();
  app.add_option("--seed", o.config.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--out", o.out, "output file (stdout if omitted)");
  app.add_option("--format", o.format, "json, svg, ply or csv")->check(CLI::IsMember({"json", "svg", "ply", "csv"}));
  app.fallthrough();

  std::string fixture;
  auto* classify = app.add_subcommand("classify", "full classification report");
  auto* truncate = app.add_subcommand("truncate", "truncate every loxodromic vertex");
  auto* tile = app.add_subcommand("tile", "orbit tiling with overlap check");
  auto* limit = app.add_subcommand("limit-set", "sample the limit set");
  auto* fixture_cmd = app.add_subcommand("fixture", "print a built-in fixture as polytope JSON");
  auto* list = app.add_subcommand("fixtures", "list built-in fixtures");
  for (auto* sub : {classify, truncate, tile, limit}) sub->add_option("--input", o.input, "polytope or Coxeter JSON")->required();
  tile->add_option("--depth", o.config.max_word_length, "maximal word length")->capture_default_str();
  limit->add_option("--depth", o.config.max_word_length, "maximal word length of sampled elements")->capture_default_str();
  limit->add_option("--count", o.count, "number of points")->capture_default_str();
  tile->add_option("--count", o.count, "limit-set points overlaid on the SVG")->capture_default_str();
  fixture_cmd->add_option("name", fixture, "fixture name")->required();
  bool as_system = false;
  fixture_cmd->add_flag("--system", as_system, "print the Coxeter system W_P instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    validate(o.config);
    if (*classify) run_classify(o);
    else if (*truncate) run_truncate(o);
    else if (*tile) run_tile(o);
    else if (*limit) run_limit_set(o);
    else if (*fixture_cmd) {
      const MirrorPolytope p = named_fixture(fixture);
      const Json j = as_system ? Json{{"schema", kSchema}, {"coxeter", coxeter_to_json(coxeter_system_of(p, o.config.tol))}}
                               : polytope_to_json(p);
      emit(o, j.dump(2) + "\n");
    }
    else if (*list)
      for (const auto& n : fixture_names()) std::cout << n << "\n";
  } catch (const Error& e) {
    std::cerr << Json({{"error", to_string(e.code())}, {"message", e.what()}}).dump() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << Json({{"error", "Internal"}, {"message", e.what()}}).dump() << "\n";
    return 4;
  }
  return 0;
}
