#include "crnmix/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace crnmix {

namespace {

// Directed adjacency over complex indices, successor lists deduplicated and
// sorted by the complexes' lexicographic order for deterministic traversal.
std::vector<std::vector<int>> adjacency(const ReactionNetwork& net) {
  std::vector<std::set<int>> succ(net.complex_count());
  for (const Reaction& r : net.reactions) {
    int s = net.complex_index(r.source);
    int p = net.complex_index(r.product);
    succ[s].insert(p);
  }
  std::vector<std::vector<int>> out(net.complex_count());
  for (int v = 0; v < net.complex_count(); ++v) {
    out[v].assign(succ[v].begin(), succ[v].end());
    std::sort(out[v].begin(), out[v].end(), [&](int a, int b) {
      return net.complexes[a] < net.complexes[b];
    });
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net) {
  const int n = net.complex_count();
  std::vector<int> comp(n, -1);
  auto adj = adjacency(net);
  std::vector<std::vector<int>> und(n);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      und[v].push_back(w);
      und[w].push_back(v);
    }
  int classes = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    std::queue<int> q;
    q.push(v);
    comp[v] = classes;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : und[u])
        if (comp[w] < 0) {
          comp[w] = classes;
          q.push(w);
        }
    }
    ++classes;
  }

  std::vector<std::vector<int>> out(classes);
  for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
  auto complex_less = [&](int a, int b) {
    return net.complexes[a] < net.complexes[b];
  };
  for (auto& cls : out) std::sort(cls.begin(), cls.end(), complex_less);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return net.complexes[a.front()] < net.complexes[b.front()];
  });
  return out;
}

std::vector<int> strongly_connected_components(const ReactionNetwork& net) {
  // Tarjan, iteratively.
  const int n = net.complex_count();
  auto adj = adjacency(net);
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, components = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back(Frame{w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = components;
            if (w == f.v) break;
          }
          ++components;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comp;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  auto scc = strongly_connected_components(net);
  for (const auto& cls : linkage_classes(net)) {
    for (size_t i = 1; i < cls.size(); ++i)
      if (scc[cls[i]] != scc[cls[0]]) return false;
  }
  return true;
}

bool is_double_full(const ReactionNetwork& net) {
  for (int i = 0; i < net.species_count(); ++i) {
    Complex dbl = unary_complex(i, net.species_count());
    dbl.coefficients[i] = 2;
    if (net.complex_index(dbl) < 0) return false;
  }
  return true;
}

std::optional<std::vector<int>> path_to_low_order(const ReactionNetwork& net,
                                                  int start_complex) {
  const int n = net.complex_count();
  auto adj = adjacency(net);

  // Distance-to-target via reverse BFS from every low-order complex, then a
  // greedy forward walk that always picks the smallest complex among the
  // successors on a shortest path. This yields the lexicographically smallest
  // shortest path.
  std::vector<std::vector<int>> radj(n);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) radj[w].push_back(v);

  constexpr int kInf = 1 << 29;
  std::vector<int> dist(n, kInf);
  std::queue<int> q;
  for (int v = 0; v < n; ++v)
    if (net.complexes[v].order() <= 1) {
      dist[v] = 0;
      q.push(v);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : radj[u])
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }

  if (dist[start_complex] >= kInf) return std::nullopt;
  std::vector<int> path{start_complex};
  int cur = start_complex;
  while (dist[cur] > 0) {
    int best = -1;
    for (int w : adj[cur])  // adj is sorted by complex order
      if (dist[w] == dist[cur] - 1) {
        best = w;
        break;
      }
    cur = best;
    path.push_back(cur);
  }
  return path;
}

std::optional<std::vector<int>> unary_chain(const ReactionNetwork& net,
                                            int from_species,
                                            const std::set<int>& targets) {
  if (targets.count(from_species)) return std::vector<int>{from_species};

  const int d = net.species_count();
  // Unary-to-unary edges as a species graph, successors sorted.
  std::vector<std::set<int>> succ(d);
  for (const Reaction& r : net.reactions) {
    int s = r.source.unary_species();
    int p = r.product.unary_species();
    if (s >= 0 && p >= 0) succ[s].insert(p);
  }

  constexpr int kInf = 1 << 29;
  std::vector<int> dist(d, kInf);
  std::queue<int> q;
  // Reverse BFS from the targets over the unary edge graph.
  std::vector<std::vector<int>> rsucc(d);
  for (int v = 0; v < d; ++v)
    for (int w : succ[v]) rsucc[w].push_back(v);
  for (int t : targets)
    if (t >= 0 && t < d) {
      dist[t] = 0;
      q.push(t);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : rsucc[u])
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  if (from_species < 0 || from_species >= d || dist[from_species] >= kInf)
    return std::nullopt;

  std::vector<int> path{from_species};
  int cur = from_species;
  while (dist[cur] > 0) {
    int best = -1;
    for (int w : succ[cur])
      if (dist[w] == dist[cur] - 1) {
        best = w;
        break;
      }
    cur = best;
    path.push_back(cur);
  }
  return path;
}

FlowDecomposition flow_decomposition(const ReactionNetwork& net) {
  FlowDecomposition out;
  for (int i = 0; i < net.reaction_count(); ++i) {
    const Reaction& r = net.reactions[i];
    if (r.source.is_zero() && r.product.is_unary()) {
      out.inflow_reactions.push_back(i);
      out.inflow_species.insert(r.product.unary_species());
    } else if (r.product.is_zero() && r.source.is_unary()) {
      out.outflow_reactions.push_back(i);
      out.outflow_species.insert(r.source.unary_species());
    } else {
      out.core_reactions.push_back(i);
    }
  }
  return out;
}

ReactionNetwork subnetwork(const ReactionNetwork& net,
                           const std::vector<int>& reaction_indices) {
  ReactionNetwork sub;
  sub.species = net.species;
  for (int i : reaction_indices) sub.reactions.push_back(net.reactions[i]);
  finalize_network(sub);
  return sub;
}

}  // namespace crnmix
