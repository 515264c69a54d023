#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvk/config.hpp"
#include "cvk/coxsys.hpp"
#include "cvk/hilbert.hpp"
#include "cvk/orbit.hpp"
#include "cvk/polytope.hpp"

namespace cvk {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "cvk/1";

// Malformed text or structure raises Parse.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
// Writes through a temporary file and a rename.
void write_text_file(const std::string& path, const std::string& text);

// { "generators": [names], "labels": [[int or "inf"]] }
CoxeterSystem coxeter_from_json(const Json& j);
Json coxeter_to_json(const CoxeterSystem& sys);

// Accepts { "dim", "facets": [{ "alpha", "v", "name" }] }, { "coxeter": system }
// (the Tits simplex), a bare Coxeter system, or { "fixture": name }.
MirrorPolytope polytope_from_json(const Json& j, const Tolerances& tol = {});
Json polytope_to_json(const MirrorPolytope& p);

// Full report. Only quantities invariant under rescaling the facet pairs
// appear: ridge products, Cartan eigenvalues and type, rank, unit rays.
Json classification_report(const MirrorPolytope& p, const RunConfig& config);

Json tiling_stats(const TilingSnapshot& snapshot);
// Drawing coordinates: the affine chart of the snapshot when there is one,
// otherwise stereographic projection of unit rays from the antipode of the
// base tile.
class DisplayProjection {
 public:
  explicit DisplayProjection(const TilingSnapshot& snapshot);
  std::vector<double> operator()(const Vec& x) const;
  bool uses_chart() const { return chart_.has_value(); }

 private:
  std::optional<AffineChart> chart_;
  Vec center_;
  Mat basis_;
};

std::string tiling_svg(const TilingSnapshot& snapshot, const std::vector<Vec>& limit_points = {});
std::string point_cloud_ply(const std::vector<std::vector<double>>& points);
// One row per point: coordinates x0..xd, plus a residual column when given.
std::string points_csv(const std::vector<Vec>& points, const std::vector<double>& residuals = {});

}  // namespace cvk
