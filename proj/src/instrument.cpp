#include "gridreach/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace gridreach {

namespace {
thread_local Workspace* g_current = nullptr;
}

void Workspace::track(std::int64_t delta_words, Channel ch) {
  auto& live = live_[idx(ch)];
  if (live + delta_words < 0)
    throw AccountingError("workspace balance would go negative (" + std::to_string(live) + " " +
                          std::to_string(delta_words) + ")");
  live += delta_words;
  peak_[idx(ch)] = std::max(peak_[idx(ch)], live);
}

Workspace* current_workspace() { return g_current; }

WorkspaceScope::WorkspaceScope(Workspace* ws) : prev_(g_current) { g_current = ws; }
WorkspaceScope::~WorkspaceScope() { g_current = prev_; }

std::string metrics_json(const RunInfo& info, const Metrics& mt) {
  nlohmann::ordered_json j;
  j["n"] = info.n;
  j["m"] = info.m;
  j["alpha"] = info.alpha;
  j["beta"] = info.beta;
  j["mode"] = info.mode;
  j["peak_core"] = mt.peak_core;
  j["peak_conn"] = mt.peak_conn;
  j["queries"] = mt.oracle_queries;
  j["depth"] = mt.recursion_depth;
  j["ms"] = mt.wall_ms;
  return j.dump();
}

ScalingFit fit_scaling(std::vector<std::pair<double, double>> series) {
  std::set<double> distinct;
  for (const auto& [n, peak] : series) {
    if (!(n > 0) || !(peak > 0)) throw std::invalid_argument("scaling series needs positive values");
    distinct.insert(n);
  }
  if (distinct.size() < 2) throw std::invalid_argument("scaling fit needs at least two distinct sizes");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double k = double(series.size());
  for (const auto& [n, peak] : series) {
    const double x = std::log(n), y = std::log(peak);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  ScalingFit fit;
  const double vx = sxx - sx * sx / k;
  const double vy = syy - sy * sy / k;
  const double cxy = sxy - sx * sy / k;
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.r2 = vy > 0 ? (cxy * cxy) / (vx * vy) : 1.0;
  const double span = std::log10(*distinct.rbegin()) - std::log10(*distinct.begin());
  fit.valid = series.size() >= 4 && span >= 2.0 - 1e-9;
  fit.points = std::move(series);
  return fit;
}

}  // namespace gridreach
