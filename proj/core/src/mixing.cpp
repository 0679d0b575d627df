#include "crnmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crnmix {

namespace {

// Per-coordinate Poisson pmf tables over [0, N]; returns the in-box mass of
// the product measure.
struct PoissonTables {
  std::vector<std::vector<double>> pmf;
  double box_mass = 1.0;

  PoissonTables(const std::vector<double>& means, long long box) {
    pmf.resize(means.size());
    for (size_t i = 0; i < means.size(); ++i) {
      auto& t = pmf[i];
      t.resize(box + 1);
      t[0] = std::exp(-means[i]);
      double cdf = t[0];
      for (long long k = 1; k <= box; ++k) {
        t[k] = t[k - 1] * means[i] / static_cast<double>(k);
        cdf += t[k];
      }
      box_mass *= cdf;
    }
  }

  double at(const State& z) const {
    double v = 1.0;
    for (size_t i = 0; i < pmf.size(); ++i) v *= pmf[i][z[i]];
    return v;
  }
};

}  // namespace

TvResult tv_distance(const TransientDistribution& p, const StationaryDistribution& q,
                     long long box_radius) {
  if (p.box_radius != box_radius)
    throw std::invalid_argument("transient distribution box mismatch");

  TvResult out;
  out.out_p = p.out_of_box_mass();

  if (q.kind == StationaryDistribution::Kind::ProductPoisson) {
    if (static_cast<size_t>(p.origin.size()) != q.means.size())
      throw std::invalid_argument("dimension mismatch");
    PoissonTables tab(q.means, box_radius);
    // l1 over the box = sum over the empirical support of |p - q| plus the
    // q-mass of in-box states not in the support.
    double l1 = 0.0, q_on_support = 0.0;
    for (size_t i = 0; i < p.counts.size(); ++i) {
      double qi = tab.at(p.counts[i].first);
      l1 += std::abs(p.frequency(i) - qi);
      q_on_support += qi;
    }
    l1 += tab.box_mass - q_on_support;
    out.out_q = 1.0 - tab.box_mass;
    out.tv = 0.5 * l1;
  } else {
    if (q.box_radius != box_radius)
      throw std::invalid_argument("stationary distribution box mismatch");
    std::vector<std::pair<State, double>> pt;
    pt.reserve(p.counts.size());
    for (size_t i = 0; i < p.counts.size(); ++i)
      pt.push_back({p.counts[i].first, p.frequency(i)});
    TvResult r = tv_tables(pt, out.out_p, q.table, q.out_of_box_mass);
    return r;
  }
  out.tv_conservative = out.tv + 0.5 * (out.out_p + out.out_q);
  return out;
}

TvResult tv_tables(const std::vector<std::pair<State, double>>& p, double out_p,
                   const std::vector<std::pair<State, double>>& q, double out_q) {
  // Merge walk over two state-sorted tables.
  TvResult out;
  out.out_p = out_p;
  out.out_q = out_q;
  double l1 = 0.0;
  size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j >= q.size() || (i < p.size() && p[i].first < q[j].first)) {
      l1 += std::abs(p[i].second);
      ++i;
    } else if (i >= p.size() || q[j].first < p[i].first) {
      l1 += std::abs(q[j].second);
      ++j;
    } else {
      l1 += std::abs(p[i].second - q[j].second);
      ++i;
      ++j;
    }
  }
  out.tv = 0.5 * l1;
  out.tv_conservative = out.tv + 0.5 * (out_p + out_q);
  return out;
}

std::vector<std::pair<State, double>> enumerate_product_poisson(
    const std::vector<double>& means, long long box_radius, double* out_mass) {
  const int d = static_cast<int>(means.size());
  PoissonTables tab(means, box_radius);
  std::vector<std::pair<State, double>> table;
  State z(d, 0);
  // Odometer enumeration in lexicographic order (already sorted).
  while (true) {
    table.push_back({z, tab.at(z)});
    int i = d - 1;
    while (i >= 0 && z[i] == box_radius) {
      z[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++z[i];
  }
  if (out_mass) *out_mass = 1.0 - tab.box_mass;
  return table;
}

MixingTimeEstimate estimate_mixing_time(const ReactionNetwork& net, const State& x0,
                                        const StationaryDistribution& pi, double epsilon,
                                        const std::vector<double>& t_grid,
                                        const SimulationConfig& config,
                                        long long box_radius) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");

  MixingTimeEstimate est;
  est.origin = x0;
  est.m = x0.empty() ? 0 : *std::max_element(x0.begin(), x0.end());
  est.epsilon = epsilon;
  est.t_grid = t_grid;
  est.replicates = config.replicates;

  auto dists = transient_distribution_grid(net, x0, t_grid, config, box_radius);
  est.not_reached = true;
  for (size_t k = 0; k < dists.size(); ++k) {
    est.tv_curve.push_back(tv_distance(dists[k], pi, box_radius));
    if (est.not_reached && est.tv_curve.back().tv <= epsilon) {
      est.tau = t_grid[k];
      est.not_reached = false;
    }
  }
  return est;
}

std::string curves_csv(const std::vector<MixingTimeEstimate>& estimates) {
  std::string out = "t,tv,tv_conservative,m,replicates\n";
  char buf[160];
  for (const auto& est : estimates)
    for (size_t k = 0; k < est.t_grid.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.6g,%.9f,%.9f,%lld,%lld\n", est.t_grid[k],
                    est.tv_curve[k].tv, est.tv_curve[k].tv_conservative, est.m,
                    est.replicates);
      out += buf;
    }
  return out;
}

std::string summary_csv(const std::vector<MixingTimeEstimate>& estimates) {
  std::string out = "m,tau,epsilon,not_reached\n";
  char buf[96];
  for (const auto& est : estimates) {
    if (est.not_reached)
      std::snprintf(buf, sizeof(buf), "%lld,,%g,1\n", est.m, est.epsilon);
    else
      std::snprintf(buf, sizeof(buf), "%lld,%.6g,%g,0\n", est.m, est.tau, est.epsilon);
    out += buf;
  }
  return out;
}

}  // namespace crnmix
