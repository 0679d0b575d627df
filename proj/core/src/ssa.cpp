#include "crnmix/ssa.hpp"

#include "compiled.hpp"
#include "crnmix/errors.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace crnmix {

namespace {

struct StateHash {
  size_t operator()(const State& s) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (long long v : s) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

using CountMap = std::unordered_map<State, long long, StateHash>;

// One trajectory advanced through an increasing time grid; snapshots X(t_k).
// Throws ExplosionError past max_events.
void run_trajectory(const std::vector<detail::CompiledReaction>& reactions,
                    const State& x0, const std::vector<double>& grid,
                    RngStream& rng, long long max_events,
                    std::vector<State>& snapshots) {
  State x = x0;
  double t = 0.0;
  long long events = 0;
  snapshots.clear();
  std::vector<double> lam(reactions.size());

  for (double tk : grid) {
    while (true) {
      double total = 0.0;
      for (size_t r = 0; r < reactions.size(); ++r) {
        lam[r] = detail::propensity(reactions[r], x);
        total += lam[r];
      }
      if (total == 0.0) {
        // Absorbing state: the trajectory is frozen from here on.
        while (snapshots.size() < grid.size()) snapshots.push_back(x);
        return;
      }
      double dt = rng.exponential(total);
      if (t + dt >= tk) {
        snapshots.push_back(x);
        t = tk;  // memoryless: the residual clock restarts next segment
        break;
      }
      t += dt;
      double u = rng.uniform() * total;
      size_t pick = reactions.size() - 1;
      double cum = 0.0;
      for (size_t r = 0; r < reactions.size(); ++r) {
        cum += lam[r];
        if (u < cum) {
          pick = r;
          break;
        }
      }
      for (auto [i, dj] : reactions[pick].jump) x[i] += dj;
      if (++events > max_events)
        throw ExplosionError("event cap " + std::to_string(max_events) +
                             " exceeded (possible explosion) at t=" + std::to_string(t));
    }
  }
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  double prev = -1.0;
  for (double t : grid) {
    if (t < 0.0) throw std::invalid_argument("grid times must be non-negative");
    if (t <= prev && prev >= 0.0)
      throw std::invalid_argument("grid times must be strictly increasing");
    prev = t;
  }
}

}  // namespace

State simulate_until(const ReactionNetwork& net, const State& x0, double t,
                     RngStream& rng, long long max_events) {
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  if (static_cast<int>(x0.size()) != net.species_count())
    throw std::invalid_argument("state dimension mismatch");
  auto reactions = detail::compile(net);
  std::vector<State> snaps;
  run_trajectory(reactions, x0, {t}, rng, max_events, snaps);
  return snaps.front();
}

std::vector<TransientDistribution> transient_distribution_grid(
    const ReactionNetwork& net, const State& x0, const std::vector<double>& t_grid,
    const SimulationConfig& cfg, long long box_radius) {
  validate_grid(t_grid);
  if (cfg.replicates < 1) throw std::invalid_argument("need at least one replicate");
  if (cfg.max_events < 1) throw std::invalid_argument("max_events must be positive");
  if (static_cast<int>(x0.size()) != net.species_count())
    throw std::invalid_argument("state dimension mismatch");
  for (long long v : x0)
    if (v < 0) throw std::invalid_argument("negative initial count");

  const size_t K = t_grid.size();
  const int d = net.species_count();
  auto reactions = detail::compile(net);

  struct Partial {
    std::vector<CountMap> in_box;
    std::vector<long long> out_of_box;
    std::vector<std::vector<long long>> coord_sums;
    long long exploded = 0;
  };

  int threads = std::max(1, cfg.threads);
  threads = static_cast<int>(std::min<long long>(threads, cfg.replicates));
  std::vector<Partial> parts(threads);

  auto worker = [&](int tid, long long begin, long long end) {
    Partial& p = parts[tid];
    p.in_box.resize(K);
    p.out_of_box.assign(K, 0);
    p.coord_sums.assign(K, std::vector<long long>(d, 0));
    std::vector<State> snaps;
    for (long long rep = begin; rep < end; ++rep) {
      RngStream rng = RngStream::for_replicate(cfg.seed, static_cast<std::uint64_t>(rep));
      try {
        run_trajectory(reactions, x0, t_grid, rng, cfg.max_events, snaps);
      } catch (const ExplosionError&) {
        ++p.exploded;
        continue;
      }
      for (size_t k = 0; k < K; ++k) {
        const State& s = snaps[k];
        bool in_box = true;
        for (int i = 0; i < d; ++i) {
          p.coord_sums[k][i] += s[i];
          in_box = in_box && s[i] <= box_radius;
        }
        if (in_box)
          ++p.in_box[k][s];
        else
          ++p.out_of_box[k];
      }
    }
  };

  if (threads == 1) {
    worker(0, 0, cfg.replicates);
  } else {
    std::vector<std::thread> pool;
    long long chunk = (cfg.replicates + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long b = t * chunk, e = std::min<long long>(cfg.replicates, b + chunk);
      pool.emplace_back(worker, t, b, e);
    }
    for (auto& th : pool) th.join();
  }

  long long exploded = 0;
  for (const Partial& p : parts) exploded += p.exploded;
  if (static_cast<double>(exploded) >
      cfg.explosion_tolerance * static_cast<double>(cfg.replicates))
    throw ExplosionError(std::to_string(exploded) + " of " +
                         std::to_string(cfg.replicates) +
                         " replicates exceeded the event cap");
  const long long tabulated = cfg.replicates - exploded;
  if (tabulated == 0) throw ExplosionError("every replicate exploded");

  std::vector<TransientDistribution> out(K);
  for (size_t k = 0; k < K; ++k) {
    TransientDistribution& td = out[k];
    td.origin = x0;
    td.time = t_grid[k];
    td.box_radius = box_radius;
    td.replicates = cfg.replicates;
    td.tabulated = tabulated;
    td.exploded = exploded;

    // Commutative integer merge, then canonical sort: the result is
    // independent of the thread partition.
    std::map<State, long long> merged;
    std::vector<long long> sums(d, 0);
    for (const Partial& p : parts) {
      if (p.in_box.empty()) continue;
      for (const auto& [s, c] : p.in_box[k]) merged[s] += c;
      td.out_of_box += p.out_of_box[k];
      for (int i = 0; i < d; ++i) sums[i] += p.coord_sums[k][i];
    }
    td.counts.assign(merged.begin(), merged.end());
    td.coordinate_sums = sums;
  }
  return out;
}

TransientDistribution transient_distribution(const ReactionNetwork& net,
                                             const State& x0, double t,
                                             const SimulationConfig& cfg,
                                             long long box_radius) {
  return transient_distribution_grid(net, x0, {t}, cfg, box_radius).front();
}

std::vector<double> TransientDistribution::mean() const {
  std::vector<double> m(coordinate_sums.size(), 0.0);
  for (size_t i = 0; i < m.size(); ++i)
    m[i] = static_cast<double>(coordinate_sums[i]) / static_cast<double>(tabulated);
  return m;
}

bool irreducibility_probe(const ReactionNetwork& net, const State& x0,
                          long long box_radius) {
  const int d = net.species_count();
  if (static_cast<int>(x0.size()) != d)
    throw std::invalid_argument("state dimension mismatch");
  for (long long v : x0)
    if (v < 0 || v > box_radius)
      throw std::invalid_argument("probe state must lie inside the box");

  double states_d = std::pow(static_cast<double>(box_radius + 1), d);
  if (states_d > 5e7)
    throw ResourceError("irreducibility probe box too large");
  const long long n1 = box_radius + 1;
  const long long total = static_cast<long long>(states_d + 0.5);

  auto reactions = detail::compile(net);
  auto encode = [&](const State& s) {
    long long idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * n1 + s[i];
    return idx;
  };

  auto reaches = [&](const State& from, const State& target) {
    std::vector<char> seen(total, 0);
    std::queue<State> q;
    q.push(from);
    seen[encode(from)] = 1;
    const long long goal = encode(target);
    if (encode(from) == goal) return true;
    while (!q.empty()) {
      State x = q.front();
      q.pop();
      for (const auto& r : reactions) {
        if (detail::propensity(r, x) == 0.0) continue;
        State z = x;
        bool ok = true;
        for (auto [i, dj] : r.jump) {
          z[i] += dj;
          ok = ok && z[i] >= 0 && z[i] <= box_radius;
        }
        if (!ok) continue;
        long long idx = encode(z);
        if (seen[idx]) continue;
        if (idx == goal) return true;
        seen[idx] = 1;
        q.push(std::move(z));
      }
    }
    return false;
  };

  State origin(d, 0);
  return reaches(x0, origin) && reaches(origin, x0);
}

std::string transient_to_csv(const ReactionNetwork& net,
                             const TransientDistribution& dist) {
  std::string out;
  for (int i = 0; i < net.species_count(); ++i) {
    out += net.species[i].name;
    out += ",";
  }
  out += "frequency\n";
  char buf[64];
  for (size_t i = 0; i < dist.counts.size(); ++i) {
    for (long long v : dist.counts[i].first) {
      std::snprintf(buf, sizeof(buf), "%lld,", v);
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%.12g\n", dist.frequency(i));
    out += buf;
  }
  return out;
}

std::string transient_summary_json(const ReactionNetwork& net,
                                   const TransientDistribution& dist, int indent) {
  nlohmann::ordered_json j;
  j["time"] = dist.time;
  nlohmann::ordered_json origin;
  for (int i = 0; i < net.species_count(); ++i)
    origin[net.species[i].name] = dist.origin[i];
  j["origin"] = origin;
  nlohmann::ordered_json mean;
  std::vector<double> m = dist.mean();
  for (int i = 0; i < net.species_count(); ++i) mean[net.species[i].name] = m[i];
  j["mean"] = mean;
  j["box_radius"] = dist.box_radius;
  j["replicates"] = dist.replicates;
  j["exploded"] = dist.exploded;
  j["out_of_box_mass"] = dist.out_of_box_mass();
  j["distinct_states"] = dist.counts.size();
  return j.dump(indent);
}

}  // namespace crnmix
