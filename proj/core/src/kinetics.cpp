#include "crnmix/kinetics.hpp"

#include "compiled.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace crnmix {

double intensity(const Reaction& reaction, const State& x) {
  double v = reaction.rate_constant;
  const auto& y = reaction.source.coefficients;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (x[i] < y[i]) return 0.0;
    for (int k = 0; k < y[i]; ++k) v *= static_cast<double>(x[i] - k);
  }
  return v;
}

double total_intensity(const ReactionNetwork& net, const State& x) {
  double t = 0.0;
  for (const Reaction& r : net.reactions) t += intensity(r, x);
  return t;
}

double apply_generator(const ReactionNetwork& net,
                       const std::function<double(const State&)>& f,
                       const State& x) {
  double fx = f(x);
  double out = 0.0;
  State z = x;
  for (const Reaction& r : net.reactions) {
    double lam = intensity(r, x);
    if (lam == 0.0) continue;
    std::vector<int> net_change = r.net_change();
    for (size_t i = 0; i < z.size(); ++i) z[i] = x[i] + net_change[i];
    out += lam * (f(z) - fx);
  }
  return out;
}

double lyapunov_V(const State& x) {
  double v = 0.0;
  for (long long xi : x) {
    if (xi == 0)
      v += 1.0;  // 0(ln 0 - 1) is taken to be zero
    else {
      double d = static_cast<double>(xi);
      v += d * (std::log(d) - 1.0) + 1.0;
    }
  }
  return v;
}

double lyapunov_W(const std::vector<double>& w, const State& x) {
  double v = 0.0;
  for (size_t i = 0; i < w.size(); ++i) v += w[i] * static_cast<double>(x[i]);
  return v;
}

namespace {

struct ScanCell {
  double g = -std::numeric_limits<double>::infinity();
  State argmax;
  bool shell_negative = true;
  double shell_max_AV = -std::numeric_limits<double>::infinity();

  // Total order on (value, state) so that parallel merges are
  // partition-independent: larger g wins, ties go to the smaller state.
  void take(double g2, const State& x2) {
    if (g2 > g || (g2 == g && (argmax.empty() || x2 < argmax))) {
      g = g2;
      argmax = x2;
    }
  }
  void merge(const ScanCell& o) {
    if (!o.argmax.empty()) take(o.g, o.argmax);
    shell_negative = shell_negative && o.shell_negative;
    shell_max_AV = std::max(shell_max_AV, o.shell_max_AV);
  }
};

}  // namespace

DriftReport drift_scan(const ReactionNetwork& net, const DriftScanConfig& cfg) {
  const int d = net.species_count();
  if (d == 0) throw std::invalid_argument("drift_scan needs at least one species");
  if (!(cfg.a > 0.0)) throw std::invalid_argument("drift parameter a must be positive");
  if (cfg.delta != 0.0 && cfg.delta != 0.5)
    throw std::invalid_argument("delta must be 0 or 0.5");
  if (cfg.box_radius < 2) throw std::invalid_argument("box radius must be >= 2");
  if (cfg.kind == LyapunovKind::LinearW &&
      static_cast<int>(cfg.weights.size()) != d)
    throw std::invalid_argument("LinearW scan needs one weight per species");

  const long long n1 = cfg.box_radius + 1;
  double states_d = std::pow(static_cast<double>(n1), d);
  if (states_d > static_cast<double>(cfg.state_cap))
    throw ResourceError("drift box [0," + std::to_string(cfg.box_radius) + "]^" +
                        std::to_string(d) + " exceeds the state cap of " +
                        std::to_string(cfg.state_cap) + " states");
  const long long total = static_cast<long long>(states_d + 0.5);

  // Per-coordinate V table covering every reachable neighbor of the box.
  int max_jump = 0;
  for (const Reaction& r : net.reactions)
    for (int dj : r.net_change()) max_jump = std::max(max_jump, std::abs(dj));
  std::vector<double> vtab(n1 + max_jump + 1);
  for (long long k = 0; k < static_cast<long long>(vtab.size()); ++k)
    vtab[k] = k == 0 ? 1.0 : k * (std::log(static_cast<double>(k)) - 1.0) + 1.0;

  auto reactions = detail::compile(net);
  // Linear-W drift increments are state-independent.
  std::vector<double> delta_W(reactions.size(), 0.0);
  if (cfg.kind == LyapunovKind::LinearW)
    for (size_t r = 0; r < reactions.size(); ++r)
      for (auto [i, dj] : reactions[r].jump) delta_W[r] += cfg.weights[i] * dj;

  auto scan_range = [&](long long begin, long long end) {
    ScanCell cell;
    State x(d, 0);
    for (long long idx = begin; idx < end; ++idx) {
      long long rem = idx;
      bool shell = false;
      for (int i = 0; i < d; ++i) {
        x[i] = rem % n1;
        rem /= n1;
        shell = shell || (x[i] == cfg.box_radius);
      }

      double av = 0.0;
      double vx = 0.0;
      if (cfg.kind == LyapunovKind::LogV) {
        for (int i = 0; i < d; ++i) vx += vtab[x[i]];
        for (const detail::CompiledReaction& r : reactions) {
          double lam = detail::propensity(r, x);
          if (lam == 0.0) continue;
          double dv = 0.0;
          for (auto [i, dj] : r.jump) dv += vtab[x[i] + dj] - vtab[x[i]];
          av += lam * dv;
        }
      } else {
        for (int i = 0; i < d; ++i) vx += cfg.weights[i] * static_cast<double>(x[i]);
        for (size_t r = 0; r < reactions.size(); ++r) {
          double lam = detail::propensity(reactions[r], x);
          if (lam == 0.0) continue;
          av += lam * delta_W[r];
        }
      }

      double penalty = cfg.delta == 0.0 ? vx : vx * std::sqrt(vx);
      cell.take(av + cfg.a * penalty, x);
      if (shell) {
        cell.shell_negative = cell.shell_negative && (av < 0.0);
        cell.shell_max_AV = std::max(cell.shell_max_AV, av);
      }
    }
    return cell;
  };

  int threads = std::max(1, cfg.threads);
  ScanCell result;
  if (threads == 1 || total < 4096) {
    result = scan_range(0, total);
  } else {
    std::vector<ScanCell> cells(threads);
    std::vector<std::thread> pool;
    long long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long b = t * chunk, e = std::min(total, b + chunk);
      pool.emplace_back([&, t, b, e] { cells[t] = scan_range(b, e); });
    }
    for (auto& th : pool) th.join();
    for (const ScanCell& c : cells) result.merge(c);
  }

  DriftReport rep;
  rep.kind = cfg.kind;
  rep.a = cfg.a;
  rep.delta = cfg.delta;
  rep.b = result.g;
  rep.argmax = result.argmax;
  rep.negative_on_shell = result.shell_negative;
  rep.shell_max_AV = result.shell_max_AV;
  rep.box_radius = cfg.box_radius;
  rep.states_scanned = total;
  return rep;
}

std::string drift_report_to_json(const ReactionNetwork& net,
                                 const DriftReport& rep, int indent) {
  nlohmann::ordered_json j;
  j["lyapunov_kind"] = rep.kind == LyapunovKind::LogV ? "log-V" : "linear-W";
  j["exponent"] = 1.0 + rep.delta;
  j["a"] = rep.a;
  j["b"] = rep.b;
  nlohmann::ordered_json am = nlohmann::ordered_json::array();
  for (size_t i = 0; i < rep.argmax.size(); ++i)
    am.push_back({{"species", net.species[i].name}, {"count", rep.argmax[i]}});
  j["argmax_state"] = am;
  j["negative_on_shell"] = rep.negative_on_shell;
  j["shell_max_AV"] = rep.shell_max_AV;
  j["box_radius"] = rep.box_radius;
  j["states_scanned"] = rep.states_scanned;
  return j.dump(indent);
}

std::string drift_slice_csv(const ReactionNetwork& net,
                            const DriftScanConfig& cfg,
                            const DriftReport& rep) {
  const int d = net.species_count();
  std::string out = "x0,x1,g,AV\n";
  if (d < 1) return out;
  std::vector<double> w = cfg.kind == LyapunovKind::LinearW ? cfg.weights
                                                            : std::vector<double>();
  State x = rep.argmax;
  auto g_of = [&](const State& s) {
    auto f = [&](const State& z) {
      return cfg.kind == LyapunovKind::LogV ? lyapunov_V(z) : lyapunov_W(w, z);
    };
    double av = apply_generator(net, f, s);
    double v = f(s);
    double penalty = cfg.delta == 0.0 ? v : v * std::sqrt(v);
    return std::pair<double, double>(av + cfg.a * penalty, av);
  };
  char buf[128];
  for (long long i = 0; i <= cfg.box_radius; ++i) {
    for (long long j = 0; j <= (d >= 2 ? cfg.box_radius : 0); ++j) {
      x[0] = i;
      if (d >= 2) x[1] = j;
      auto [g, av] = g_of(x);
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.9g,%.9g\n", i, d >= 2 ? j : 0LL, g, av);
      out += buf;
    }
  }
  return out;
}

}  // namespace crnmix
