#include "rggmst/mst.hpp"

#include <algorithm>
#include <limits>
#include <span>

#include "rggmst/errors.hpp"
#include "rggmst/union_find.hpp"

namespace rggmst {

namespace {

struct Key {
  double weight;
  std::uint32_t i;
  std::uint32_t j;
};

inline bool key_less(const Key& a, const Key& b) noexcept {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

std::vector<Key> keys_of(const Rgg& g) {
  std::vector<Key> keys;
  keys.reserve(g.edges().size());
  for (const Edge& e : g.edges()) keys.push_back({e.weight, e.i, e.j});
  return keys;
}

struct ForestBuilder {
  explicit ForestBuilder(std::size_t n) : sets(n), degrees(n, 0) {}

  void take(const Key& k) {
    if (!sets.unite(k.i, k.j)) return;
    edges.push_back({k.i, k.j, k.weight});
    total += k.weight;
    ++degrees[k.i];
    ++degrees[k.j];
  }

  [[nodiscard]] bool done() const noexcept { return sets.set_count() <= 1; }

  MstResult finish() {
    MstResult out;
    out.total_weight = total;
    out.edges = std::move(edges);
    out.degrees = std::move(degrees);
    out.components = sets.set_count();
    out.forest = out.components > 1;
    return out;
  }

  DisjointSets sets;
  std::vector<std::uint32_t> degrees;
  std::vector<MstEdge> edges;
  double total = 0.0;
};

constexpr std::size_t kSortThreshold = 4096;

void filter_kruskal(std::span<Key> keys, ForestBuilder& fb) {
  while (!keys.empty() && !fb.done()) {
    if (keys.size() <= kSortThreshold) {
      std::sort(keys.begin(), keys.end(), key_less);
      for (const Key& k : keys) {
        fb.take(k);
        if (fb.done()) return;
      }
      return;
    }
    // Median of three distinct keys: both partitions end up non-empty.
    const Key a = keys.front();
    const Key b = keys[keys.size() / 2];
    const Key c = keys.back();
    Key pivot = b;
    if (key_less(a, b) != key_less(a, c)) {
      pivot = a;
    } else if (key_less(b, a) != key_less(b, c)) {
      pivot = b;
    } else {
      pivot = c;
    }
    auto mid = std::partition(keys.begin(), keys.end(),
                              [&](const Key& k) { return key_less(k, pivot); });
    const auto light = static_cast<std::size_t>(mid - keys.begin());
    filter_kruskal(keys.first(light), fb);
    if (fb.done()) return;

    std::span<Key> heavy = keys.subspan(light);
    auto kept = std::partition(heavy.begin(), heavy.end(),
                               [&](const Key& k) { return fb.sets.find(k.i) != fb.sets.find(k.j); });
    keys = heavy.first(static_cast<std::size_t>(kept - heavy.begin()));
  }
}

}  // namespace

MstResult minimum_spanning_forest(const Rgg& g) {
  std::vector<Key> keys = keys_of(g);
  ForestBuilder fb(g.node_count());
  filter_kruskal(keys, fb);
  return fb.finish();
}

MstResult reference::kruskal_full_sort(const Rgg& g) {
  std::vector<Key> keys = keys_of(g);
  std::sort(keys.begin(), keys.end(), key_less);
  ForestBuilder fb(g.node_count());
  for (const Key& k : keys) {
    fb.take(k);
    if (fb.done()) break;
  }
  return fb.finish();
}

MstResult make_forest_result(std::size_t n, std::vector<MstEdge> edges) {
  std::vector<Key> keys;
  keys.reserve(edges.size());
  for (const MstEdge& e : edges) {
    keys.push_back({e.weight, std::min(e.i, e.j), std::max(e.i, e.j)});
  }
  std::sort(keys.begin(), keys.end(), key_less);
  ForestBuilder fb(n);
  for (const Key& k : keys) {
    if (!fb.sets.unite(k.i, k.j)) throw ConstructionError("edge set contains a cycle");
    fb.edges.push_back({k.i, k.j, k.weight});
    fb.total += k.weight;
    ++fb.degrees[k.i];
    ++fb.degrees[k.j];
  }
  return fb.finish();
}

namespace {

struct BruteForce {
  const std::vector<Edge>& edges;
  std::size_t needed;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best;
  double best_total = std::numeric_limits<double>::infinity();

  static double ascending_sum(std::vector<double> w) {
    std::sort(w.begin(), w.end());
    double s = 0.0;
    for (double v : w) s += v;
    return s;
  }

  void search(std::size_t next, std::vector<std::uint8_t> comp, double partial) {
    if (chosen.size() == needed) {
      std::vector<double> w;
      for (std::size_t idx : chosen) w.push_back(edges[idx].weight);
      const double total = ascending_sum(std::move(w));
      if (total < best_total) {
        best_total = total;
        best = chosen;
      }
      return;
    }
    if (edges.size() - next < needed - chosen.size()) return;
    // Loose bound so summation order can never prune an optimal forest.
    if (partial > best_total * (1.0 + 1e-9)) return;

    const Edge& e = edges[next];
    if (comp[e.i] != comp[e.j]) {
      std::vector<std::uint8_t> merged = comp;
      const std::uint8_t from = comp[e.j];
      for (auto& c : merged) {
        if (c == from) c = comp[e.i];
      }
      chosen.push_back(next);
      search(next + 1, std::move(merged), partial + e.weight);
      chosen.pop_back();
    }
    search(next + 1, std::move(comp), partial);
  }
};

}  // namespace

MstResult brute_force_mst(const Rgg& g) {
  const std::size_t n = g.node_count();
  if (n > 10) throw ParameterError("brute_force_mst refuses n > 10 (combinatorial blowup)");

  BruteForce bf{g.edges(), n - component_count(g), {}, {}};
  std::vector<std::uint8_t> comp(n);
  for (std::size_t v = 0; v < n; ++v) comp[v] = static_cast<std::uint8_t>(v);
  bf.search(0, std::move(comp), 0.0);

  std::vector<MstEdge> chosen;
  for (std::size_t idx : bf.best) {
    const Edge& e = g.edges()[idx];
    chosen.push_back({e.i, e.j, e.weight});
  }
  return make_forest_result(n, std::move(chosen));
}

DegreeStats mst_degree_stats(const MstResult& m) {
  DegreeStats s;
  for (std::uint32_t d : m.degrees) s.max_degree = std::max(s.max_degree, d);
  s.histogram.assign(static_cast<std::size_t>(s.max_degree) + 1, 0);
  for (std::uint32_t d : m.degrees) ++s.histogram[d];
  return s;
}

}  // namespace rggmst
