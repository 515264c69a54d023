#include "cvk/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <thread>

#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/hilbert.hpp"

namespace cvk {

namespace {

// Nearby matrices are found through a random linear functional: anything
// within the dedup grid of m has a key within the window computed below.
class DedupStore {
 public:
  DedupStore(Eigen::Index n, const Tolerances& tol) : tol_(tol), weights_(n, n) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) weights_(i, j) = (rng() & 1u ? 1.0 : -1.0) * u(rng);
    weight_sum_ = weights_.cwiseAbs().sum();
  }

  std::optional<std::size_t> find(const Mat& m, const std::vector<GroupElement>& elements) const {
    const double scale = std::max(1.0, max_abs(m));
    const double k = key(m);
    const double window = tol_.grid * scale * weight_sum_;
    for (auto it = index_.lower_bound(k - window); it != index_.end() && it->first <= k + window; ++it) {
      const double dist = max_abs(m - elements[it->second].matrix) / scale;
      if (dist <= tol_.audit) return it->second;
      if (dist < tol_.grid)
        throw Error(ErrorCode::DedupAmbiguity,
                    "two products differ by " + std::to_string(dist) + ", inside the audit band");
    }
    return std::nullopt;
  }

  void insert(const Mat& m, std::size_t idx) { index_.emplace(key(m), idx); }

 private:
  double key(const Mat& m) const { return weights_.cwiseProduct(m).sum(); }

  Tolerances tol_;
  Mat weights_;
  double weight_sum_ = 0.0;
  std::multimap<double, std::size_t> index_;
};

template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
  if (n < 512 || workers == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) f(i);
    });
}

std::optional<Vec> chart_covector(const MirrorPolytope& p, const Tolerances& tol) {
  try {
    return containing_affine_chart(p, tol.eps);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool strictly_inside(const Mat& unit_alpha, const Vec& z, double tol) {
  return (unit_alpha * z.normalized()).maxCoeff() < -tol;
}

struct Spectrum {
  std::vector<std::complex<double>> values;  // by decreasing modulus
  Mat vectors;                                // matching columns, real parts
};

Spectrum sorted_spectrum(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b)); });
  Spectrum s;
  s.vectors.resize(m.rows(), m.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    s.values.push_back(es.eigenvalues()(order[i]));
    s.vectors.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(order[i]).real();
  }
  return s;
}

// Dominant eigenvector when the top eigenvalue is real and separated.
std::optional<Vec> attracting_direction(const Mat& m, double gap) {
  const Spectrum s = sorted_spectrum(m);
  const double top = std::abs(s.values[0]);
  if (s.values.size() < 2 || std::abs(s.values[0].imag()) > 1e-12 * top) return std::nullopt;
  if (!(top > (1.0 + gap) * std::abs(s.values[1]))) return std::nullopt;
  Vec x = s.vectors.col(0).normalized();
  for (int i = 0; i < 4; ++i) x = (m * x).normalized();
  return x;
}

}  // namespace

Enumeration enumerate_group(const std::vector<Mat>& generators, int max_length, const Tolerances& tol,
                            std::size_t max_elements) {
  if (max_length > kMaxWordLength)
    throw Error(ErrorCode::CapExceeded, "word length is capped at " + std::to_string(kMaxWordLength));
  if (max_length < 0) throw Error(ErrorCode::InvalidConfig, "negative word length");
  if (generators.empty()) throw Error(ErrorCode::PreconditionUnmet, "no generators");
  const Eigen::Index n = generators.front().rows();

  Enumeration out;
  DedupStore store(n, tol);
  out.elements.push_back({{}, Mat::Identity(n, n)});
  store.insert(out.elements.back().matrix, 0);
  out.count_by_length.push_back(1);

  std::size_t level_begin = 0, level_end = 1;
  for (int len = 1; len <= max_length; ++len) {
    struct Candidate {
      std::size_t parent;
      int letter;
      Mat matrix;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (int s = 0; s < static_cast<int>(generators.size()); ++s)
        if (out.elements[i].word.empty() || out.elements[i].word.back() != s) cands.push_back({i, s, {}});
    parallel_for(cands.size(), [&](std::size_t c) {
      cands[c].matrix = out.elements[cands[c].parent].matrix * generators[cands[c].letter];
    });
    // Parents are sorted by word, so the first hit of each element is its least word.
    for (Candidate& c : cands) {
      if (store.find(c.matrix, out.elements)) continue;
      std::vector<int> word = out.elements[c.parent].word;
      word.push_back(c.letter);
      store.insert(c.matrix, out.elements.size());
      out.elements.push_back({std::move(word), std::move(c.matrix)});
      if (out.elements.size() > max_elements)
        throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(max_elements) + " elements");
    }
    level_begin = level_end;
    level_end = out.elements.size();
    out.count_by_length.push_back(level_end - level_begin);
    if (level_end == level_begin) {
      out.exhausted = true;
      out.count_by_length.pop_back();
      break;
    }
  }
  return out;
}

Enumeration enumerate_group(const MirrorPolytope& p, int max_length, const Tolerances& tol, std::size_t max_elements) {
  std::vector<Mat> gens;
  for (int s = 0; s < p.facet_count(); ++s) gens.push_back(p.reflection(s));
  return enumerate_group(gens, max_length, tol, max_elements);
}

std::vector<Vec> interior_samples(const MirrorPolytope& p, int count, std::uint64_t seed) {
  const auto& verts = p.face_lattice().vertices;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    Vec x = Vec::Zero(p.dim() + 1);
    for (const Vec& v : verts) x += (expo(rng) + 1e-3) * v;
    out.push_back(x.normalized());
  }
  return out;
}

TilingSnapshot orbit_tiles(const MirrorPolytope& p, int max_length, const Tolerances& tol, std::uint64_t seed,
                           int samples_per_tile) {
  constexpr double kOverlapTol = 1e-7;
  const Enumeration e = enumerate_group(p, max_length, tol);
  TilingSnapshot snap;
  snap.count_by_length = e.count_by_length;
  snap.closed = e.exhausted;
  snap.chart = chart_covector(p, tol);

  const std::vector<Vec> base_samples = interior_samples(p, samples_per_tile, seed);
  std::vector<std::vector<Vec>> samples;
  std::vector<Mat> inverses;
  for (const GroupElement& g : e.elements) {
    Tile t{g.word, g.matrix, {}};
    for (const Vec& v : p.face_lattice().vertices) t.vertices.push_back(g.matrix * v);
    std::vector<Vec> s;
    for (const Vec& x : base_samples) s.push_back(g.matrix * x);
    snap.hull_sample.insert(snap.hull_sample.end(), s.begin(), s.end());
    samples.push_back(std::move(s));
    inverses.push_back(g.matrix.inverse());
    snap.tiles.push_back(std::move(t));
  }
  if (snap.chart)
    for (const Tile& t : snap.tiles)
      for (const Vec& v : t.vertices)
        if (!(snap.chart->dot(v) < 0)) snap.chart.reset();

  Mat unit = p.alphas();
  for (Eigen::Index i = 0; i < unit.rows(); ++i) unit.row(i).normalize();

  const std::size_t n = snap.tiles.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (snap.chart) {
    // sweep and prune on chart bounding boxes
    const AffineChart chart(*snap.chart);
    std::vector<Vec> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = hi[i] = chart.to_chart(snap.tiles[i].vertices.front());
      for (const Vec& v : snap.tiles[i].vertices) {
        const Vec y = chart.to_chart(v);
        lo[i] = lo[i].cwiseMin(y);
        hi[i] = hi[i].cwiseMax(y);
      }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lo[a](0) < lo[b](0); });
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n && lo[order[b]](0) <= hi[order[a]](0); ++b) {
        const std::size_t i = order[a], j = order[b];
        if (((lo[i].array() <= hi[j].array()) && (lo[j].array() <= hi[i].array())).all()) pairs.emplace_back(i, j);
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  snap.pairs_checked = pairs.size();
  for (auto [i, j] : pairs)
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}})
      for (const Vec& y : samples[a])
        if (strictly_inside(unit, inverses[b] * y, kOverlapTol))
          throw Error(ErrorCode::OverlapDetected, "tiles of words of length " + std::to_string(snap.tiles[a].word.size()) +
                                                      " and " + std::to_string(snap.tiles[b].word.size()) + " overlap");
  return snap;
}

bool orbit_covers(const MirrorPolytope& p, const Enumeration& e, const Vec& x, double tol) {
  Mat unit = p.alphas();
  for (Eigen::Index i = 0; i < unit.rows(); ++i) unit.row(i).normalize();
  for (const GroupElement& g : e.elements) {
    const Vec z = g.matrix.inverse() * x;
    if ((unit * z.normalized()).maxCoeff() <= tol) return true;
  }
  return false;
}

Mat word_matrix(const MirrorPolytope& p, const std::vector<int>& word) {
  Mat m = Mat::Identity(p.dim() + 1, p.dim() + 1);
  for (int s : word) m = m * p.reflection(s);
  return m;
}

LimitSetSample limit_set_approx(const MirrorPolytope& p, int count, int min_length, int max_length,
                                std::uint64_t seed, const Tolerances& tol, double gap) {
  if (min_length < 1 || max_length < min_length) throw Error(ErrorCode::InvalidConfig, "bad word length range");
  const PolytopeClass pc = polytope_class(p, tol);
  if (pc.kind != PolytopeKind::Loxodromic && pc.kind != PolytopeKind::Elliptic)
    throw Error(ErrorCode::PreconditionUnmet, std::string("polytope is ") + to_string(pc.kind));
  const std::optional<Vec> chart = chart_covector(p, tol);
  const int letters = p.facet_count();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(min_length, max_length);
  LimitSetSample out;
  const std::size_t max_attempts = 50 * static_cast<std::size_t>(std::max(count, 1));
  while (static_cast<int>(out.points.size()) < count && out.attempts < max_attempts) {
    ++out.attempts;
    std::vector<int> word;
    const int len = length(rng);
    while (static_cast<int>(word.size()) < len) {
      const int s = static_cast<int>(rng() % static_cast<std::uint64_t>(letters));
      if (word.empty() || word.back() != s) word.push_back(s);
    }
    const Mat g = word_matrix(p, word);
    auto x = attracting_direction(g, gap);
    if (!x || !attracting_direction(g.inverse(), gap)) continue;
    if (chart) {
      const double c = chart->dot(*x);
      if (std::abs(c) < 1e-12) continue;
      *x = *x / (-c);
    } else if (x->dot(p.interior_point()) < 0) {
      *x = -*x;
    }
    out.points.push_back(*x);
    out.words.push_back(std::move(word));
  }
  if (out.points.empty()) throw Error(ErrorCode::NoProximalFound, "no bi-proximal element among the sampled words");
  return out;
}

std::vector<Vec> omega_max_approx(const MirrorPolytope& p, const LimitSetSample& sample) {
  std::vector<Vec> out;
  const Vec& inside = p.interior_point();
  for (const auto& word : sample.words) {
    const Mat g = word_matrix(p, word);
    for (const Mat& dual : {Mat(g.transpose()), Mat(g.inverse().transpose())}) {
      auto ell = attracting_direction(dual, 1e-6);
      if (!ell) continue;
      if (ell->dot(inside) > 0) *ell = -*ell;
      out.push_back(*ell);
    }
  }
  return out;
}

bool inside_halfspaces(const std::vector<Vec>& covectors, const Vec& x, double tol) {
  return std::all_of(covectors.begin(), covectors.end(), [&](const Vec& c) { return c.dot(x) < tol * c.norm() * x.norm(); });
}

double quadric_residual(const Mat& form, const Vec& x) {
  return std::abs(x.dot(form * x)) / (max_abs(form) * x.squaredNorm());
}

}  // namespace cvk
