#include "conflab/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "conflab/error.hpp"

namespace conflab {

namespace {

using Alpha = std::array<std::int8_t, kMaxJetVars>;

void enumerate(int nvars, int var, int remaining, Alpha& cur, std::vector<Alpha>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = static_cast<std::int8_t>(e);
    enumerate(nvars, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

int total(const Alpha& a) {
  int s = 0;
  for (auto v : a) s += v;
  return s;
}

std::unique_ptr<JetLayout> build(int nvars, int order) {
  auto lay = std::make_unique<JetLayout>();
  lay->nvars = nvars;
  lay->order = order;
  Alpha zero{};
  std::vector<Alpha> all;
  enumerate(nvars, 0, order, zero, all);
  std::stable_sort(all.begin(), all.end(), [](const Alpha& a, const Alpha& b) {
    int da = total(a), db = total(b);
    if (da != db) return da < db;
    return a > b;
  });
  lay->alpha = all;
  lay->size = static_cast<int>(all.size());
  for (const auto& a : all) lay->degree.push_back(total(a));

  lay->unit.assign(nvars, -1);
  lay->up.assign(nvars, std::vector<int>(lay->size, -1));
  for (int v = 0; v < nvars; ++v) {
    Alpha e{};
    e[v] = 1;
    lay->unit[v] = lay->index_of(e);
    for (int i = 0; i < lay->size; ++i) {
      if (lay->degree[i] == order) continue;
      Alpha b = all[i];
      b[v] += 1;
      lay->up[v][i] = lay->index_of(b);
    }
  }
  for (int i = 0; i < lay->size; ++i) {
    for (int j = 0; j < lay->size; ++j) {
      if (lay->degree[i] + lay->degree[j] > order) continue;
      Alpha s{};
      for (int v = 0; v < kMaxJetVars; ++v) s[v] = all[i][v] + all[j][v];
      lay->triples.push_back({i, j, lay->index_of(s)});
    }
  }
  return lay;
}

}  // namespace

int JetLayout::index_of(const Alpha& a) const {
  auto it = std::lower_bound(alpha.begin(), alpha.end(), a, [](const Alpha& x, const Alpha& y) {
    int dx = total(x), dy = total(y);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  if (it == alpha.end() || *it != a) return -1;
  return static_cast<int>(it - alpha.begin());
}

const JetLayout& JetLayout::get(int nvars, int order) {
  constexpr int kMaxOrder = 6;
  if (nvars < 1 || nvars > kMaxJetVars || order < 0 || order > kMaxOrder)
    throw LabError(ErrorCode::UnsupportedDimension, "jet layout out of range");
  thread_local std::array<std::array<const JetLayout*, kMaxOrder + 1>, kMaxJetVars + 1> local{};
  if (const JetLayout* hit = local[nvars][order]) return *hit;

  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = build(nvars, order);
  local[nvars][order] = slot.get();
  return *slot;
}

}  // namespace conflab
