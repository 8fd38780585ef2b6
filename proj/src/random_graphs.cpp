#include "radolab/random_graphs.hpp"

#include "radolab/error.hpp"
#include "radolab/parallel.hpp"
#include "radolab/rng.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace radolab {

namespace {

constexpr std::int64_t kIntegerLimit = std::int64_t{1} << 60;

std::optional<IntegerForm> integer_form(const std::vector<Vec>& points) {
  Integer common = 1;
  for (const auto& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      common = lcm(common, denominator(p(i)));
      if (common >= kIntegerLimit) return std::nullopt;
    }
  }
  IntegerForm form;
  form.denominator = common.convert_to<std::int64_t>();
  for (const auto& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const Integer n = numerator(p(i)) * (common / denominator(p(i)));
      if (abs(Rational(n)) >= kIntegerLimit) return std::nullopt;
      form.numerators.push_back(n.convert_to<std::int64_t>());
    }
  }
  return form;
}

}  // namespace

PointSample make_sample(PolytopeBall ball, std::vector<Vec> points, Rational window, std::uint64_t seed,
                        Typicality typicality) {
  std::set<Vec, LexLess> seen;
  for (const auto& p : points) {
    require_same_dim(ball.dim(), p.size(), "sample point");
    if (!seen.insert(p).second) throw Error(Errc::duplicate_point, to_string(p) + " appears twice");
  }
  PointSample s{std::move(ball), std::move(points), std::move(window), seed, typicality, std::nullopt};
  s.integer_form = integer_form(s.points);
  return s;
}

namespace {

// Incremental typicality bookkeeping shared by the sampler and the audit.
class TypicalityTracker {
 public:
  TypicalityTracker(const LinfDecomposition& dec, Typicality t)
      : dec_(dec), t_(t), fracs_(static_cast<std::size_t>(dec.d_inf())) {}

  bool admit(const Vec& x) {
    if (points_.count(x)) return false;
    std::vector<Rational> fr;
    Vec u;
    if (t_.linf || t_.fibre) {
      auto parts = dec_.split(x);
      for (Eigen::Index j = 0; t_.linf && j < parts.linf.size(); ++j) {
        fr.push_back(frac(parts.linf(j)));
        if (fracs_[static_cast<std::size_t>(j)].count(fr.back())) return false;
      }
      if (t_.fibre && parts.u.size() > 0) {
        if (us_.count(parts.u)) return false;
        u = std::move(parts.u);
      }
    }
    points_.insert(x);
    for (std::size_t j = 0; j < fr.size(); ++j) fracs_[j].insert(fr[j]);
    if (u.size() > 0) us_.insert(std::move(u));
    return true;
  }

 private:
  const LinfDecomposition& dec_;
  Typicality t_;
  std::set<Vec, LexLess> points_;
  std::vector<std::set<Rational>> fracs_;
  std::set<Vec, LexLess> us_;
};

}  // namespace

PointSample sample_typical_points(const PolytopeBall& ball, const LinfDecomposition& decomposition,
                                  const Rational& window, std::size_t n, std::uint64_t seed,
                                  Typicality constraints) {
  if (n < 1) throw Error(Errc::invalid_argument, "sample size must be positive");
  if (window <= 0) throw Error(Errc::invalid_argument, "window must be positive");
  require_same_dim(ball.dim(), decomposition.ambient_dim(), "decomposition");

  const Eigen::Index d = ball.dim();
  const Rational grid = Rational(Integer(1) << 32);
  const Rational jitter_unit = Rational(1) / (Rational(denominator(window)) * Rational(Integer(1) << 40));
  Rng rng(seed);
  TypicalityTracker tracker(decomposition, constraints);
  std::vector<Vec> points;
  std::size_t attempts = 0;
  while (points.size() < n) {
    if (++attempts > 100 * n) {
      throw Error(Errc::window_too_small, "could not place " + std::to_string(n) + " typical points in window " +
                                              to_string(window));
    }
    const auto odd = static_cast<std::int64_t>(2 * uniform_below(rng, 256)) - 255;
    const Rational jitter = Rational(odd) * jitter_unit;
    Vec x(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto m = static_cast<std::int64_t>(1 + uniform_below(rng, (std::uint64_t{1} << 32) - 1));
      x(i) = window * (Rational(2 * m) - grid) / grid + jitter;
    }
    if (tracker.admit(x)) points.push_back(std::move(x));
  }
  return make_sample(ball, std::move(points), window, seed, constraints);
}

bool is_typical(const PointSample& sample, const LinfDecomposition& decomposition) {
  TypicalityTracker tracker(decomposition, sample.typicality);
  return std::all_of(sample.points.begin(), sample.points.end(), [&](const Vec& x) { return tracker.admit(x); });
}

PairNorms::PairNorms(const PointSample& sample)
    : sample_(&sample), gauge_(sample.ball), diff_(static_cast<std::size_t>(sample.ball.dim())) {}

std::int64_t PairNorms::floor_norm(std::size_t i, std::size_t j) {
  if (!sample_->integer_form) {
    return floor(gauge_(Vec(sample_->points[i] - sample_->points[j]))).convert_to<std::int64_t>();
  }
  const auto& form = *sample_->integer_form;
  const std::size_t d = diff_.size();
  for (std::size_t c = 0; c < d; ++c) diff_[c] = form.numerators[i * d + c] - form.numerators[j * d + c];
  return gauge_.floor_norm(diff_, form.denominator);
}

std::size_t GeomGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& nb : adjacency) total += nb.size();
  return total / 2;
}

bool GeomGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& nb = adjacency.at(i);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> GeomGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < adjacency.size(); ++i) {
    for (auto j : adjacency[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

GeomGraph unit_graph(const PointSample& sample) {
  const std::size_t n = sample.size();
  std::vector<std::vector<std::uint32_t>> upper(n);
  const std::size_t workers = std::min(thread_limit(), std::max<std::size_t>(1, n / 64));
  std::vector<std::optional<PairNorms>> norms(workers);
  parallel_for(
      n,
      [&](std::size_t i, std::size_t w) {
        if (!norms[w]) norms[w].emplace(sample);
        for (std::size_t j = i + 1; j < n; ++j) {
          if (norms[w]->floor_norm(i, j) == 0) upper[i].push_back(static_cast<std::uint32_t>(j));
        }
      },
      workers);
  GeomGraph g{sample, std::vector<std::vector<std::uint32_t>>(n), 1, 0};
  for (std::uint32_t i = 0; i < n; ++i) {
    for (auto j : upper[i]) {
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(i);
    }
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

GeomGraph bernoulli_subgraph(const GeomGraph& g0, const Rational& p, std::uint64_t seed) {
  if (g0.p != 1) throw Error(Errc::invalid_argument, "bernoulli_subgraph expects G0 (p = 1)");
  const BernoulliThreshold coin(p);
  GeomGraph g{g0.sample, std::vector<std::vector<std::uint32_t>>(g0.vertex_count()), p, seed};
  for (std::uint32_t i = 0; i < g0.vertex_count(); ++i) {
    for (auto j : g0.adjacency[i]) {
      if (coin.accepts(pair_hash(seed, i, j))) g.adjacency[i].push_back(j);
    }
  }
  return g;
}

std::optional<std::size_t> graph_distance(const GeomGraph& g, std::size_t i, std::size_t j) {
  const std::size_t n = g.vertex_count();
  if (i >= n || j >= n) {
    throw Error(Errc::index_out_of_range, "vertex index " + std::to_string(std::max(i, j)) + " >= " + std::to_string(n));
  }
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::vector<std::size_t> queue = {i};
  dist[i] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    if (v == j) return dist[v];
    for (auto w : g.adjacency[v]) {
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

double BjReport::overall_fraction() const {
  std::uint64_t pairs = 0, satisfied = 0;
  for (const auto& r : rows) {
    pairs += r.pairs;
    satisfied += r.satisfied;
  }
  return pairs ? static_cast<double>(satisfied) / static_cast<double>(pairs) : 1.0;
}

BjReport bj_audit(const GeomGraph& g, int k_max) {
  if (k_max < 2) throw Error(Errc::invalid_argument, "k_max must be at least 2");
  const std::size_t n = g.vertex_count();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> rows(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : g.adjacency[i]) rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
  }

  struct Tally {
    std::vector<std::uint64_t> satisfied;
    std::uint64_t violations = 0;
    std::uint64_t connected = 0;
    std::optional<PairNorms> norms;
  };
  const std::size_t workers = std::min(thread_limit(), std::max<std::size_t>(1, n / 64));
  std::vector<Tally> tallies(workers);
  constexpr std::size_t kUnreached = SIZE_MAX;

  parallel_for(
      n,
      [&](std::size_t i, std::size_t w) {
        Tally& t = tallies[w];
        if (!t.norms) {
          t.norms.emplace(g.sample);
          t.satisfied.assign(static_cast<std::size_t>(k_max + 1), 0);
        }
        // Level-synchronous BFS over adjacency bitsets.
        std::vector<std::size_t> dist(n, kUnreached);
        std::vector<std::uint64_t> seen(words, 0), frontier(words, 0), next(words);
        dist[i] = 0;
        seen[i / 64] |= std::uint64_t{1} << (i % 64);
        frontier = seen;
        for (std::size_t level = 1;; ++level) {
          std::fill(next.begin(), next.end(), 0);
          for (std::size_t wd = 0; wd < words; ++wd) {
            for (std::uint64_t bits = frontier[wd]; bits; bits &= bits - 1) {
              const std::size_t v = wd * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
              const std::uint64_t* row = &rows[v * words];
              for (std::size_t x = 0; x < words; ++x) next[x] |= row[x];
            }
          }
          bool any = false;
          for (std::size_t wd = 0; wd < words; ++wd) {
            next[wd] &= ~seen[wd];
            seen[wd] |= next[wd];
            for (std::uint64_t bits = next[wd]; bits; bits &= bits - 1) {
              dist[wd * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))] = level;
              any = true;
            }
          }
          if (!any) break;
          frontier.swap(next);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
          const std::int64_t fl = t.norms->floor_norm(i, j);
          const std::size_t dj = dist[j];
          if (dj != kUnreached) {
            ++t.connected;
            if (fl >= static_cast<std::int64_t>(dj)) ++t.violations;
          }
          for (int k = 2; k <= k_max; ++k) {
            const bool close = fl < k;
            const bool near = dj != kUnreached && dj <= static_cast<std::size_t>(k);
            if (close == near) ++t.satisfied[static_cast<std::size_t>(k)];
          }
        }
      },
      workers);

  BjReport report;
  const std::uint64_t pairs = n * (n - 1) / 2;
  for (int k = 2; k <= k_max; ++k) {
    BjRow row{k, pairs, 0};
    for (const auto& t : tallies) {
      if (t.norms) row.satisfied += t.satisfied[static_cast<std::size_t>(k)];
    }
    report.rows.push_back(row);
  }
  for (const auto& t : tallies) {
    report.one_sided_violations += t.violations;
    report.connected_pairs += t.connected;
  }
  return report;
}

AgreementEstimate edge_agreement_probability(const Rational& p, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be positive");
  const BernoulliThreshold coin(p);
  AgreementEstimate est{trials, 0};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t h = derive_seed(seed, t);
    const bool first = coin.accepts(splitmix64(h));
    const bool second = coin.accepts(splitmix64(h ^ 0x5bd1e9955bd1e995ULL));
    if (first == second) ++est.agreements;
  }
  return est;
}

}  // namespace radolab
