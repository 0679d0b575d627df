#include "doctest.h"

#include "crnmix/conservation.hpp"
#include "crnmix/graph.hpp"
#include "crnmix/parser.hpp"
#include "test_common.hpp"

#include <set>

using namespace crnmix;
using testutil::cx;
using testutil::load_network;

namespace {

// Brute-force reachability oracle: adjacency closure by repeated squaring of
// the boolean matrix. Independent of the library's BFS/SCC code.
struct Reach {
  int n;
  std::vector<std::vector<bool>> direct, closed;

  explicit Reach(const ReactionNetwork& net) : n(net.complex_count()) {
    direct.assign(n, std::vector<bool>(n, false));
    for (const Reaction& r : net.reactions)
      direct[net.complex_index(r.source)][net.complex_index(r.product)] = true;
    closed = direct;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (closed[i][k] && closed[k][j]) closed[i][j] = true;
  }

  bool same_undirected_component(int a, int b) const {
    // Undirected closure computed separately.
    std::vector<std::vector<bool>> u(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (direct[i][j]) u[i][j] = u[j][i] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (u[i][k] && u[k][j]) u[i][j] = true;
    return a == b || u[a][b];
  }
};

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("linkage classes") {
  CHECK(linkage_classes(load_network("ex23.crn")).size() == 3);
  CHECK(linkage_classes(load_network("network5.crn")).size() == 1);
  CHECK(linkage_classes(parse_network("A -> B")).size() == 1);
}

TEST_CASE("weak reversibility") {
  CHECK_FALSE(is_weakly_reversible(load_network("ex23.crn")));
  CHECK(is_weakly_reversible(parse_network("A -> B\nB -> 2C\n2C -> A")));
  CHECK_FALSE(is_weakly_reversible(parse_network("A -> B")));
}

TEST_CASE("double-full") {
  CHECK(is_double_full(load_network("network6.crn")));
  CHECK_FALSE(is_double_full(load_network("network5.crn")));  // 2A, 2B absent
  ReactionNetwork empty;  // no species at all
  CHECK(is_double_full(empty));
}

TEST_CASE("path_to_low_order on network (6)") {
  ReactionNetwork net = load_network("network6.crn");
  auto name_path = [&](const std::vector<int>& p) {
    std::vector<std::string> out;
    for (int c : p) out.push_back(net.complex_name(net.complexes[c]));
    return out;
  };

  auto p = path_to_low_order(net, net.complex_index(cx({2, 0, 0})));
  REQUIRE(p.has_value());
  CHECK(name_path(*p) == std::vector<std::string>{"2A", "A+B", "B"});

  p = path_to_low_order(net, net.complex_index(cx({0, 2, 0})));
  REQUIRE(p.has_value());
  CHECK(name_path(*p) == std::vector<std::string>{"2B", "0"});

  p = path_to_low_order(net, net.complex_index(cx({0, 0, 2})));
  REQUIRE(p.has_value());
  CHECK(name_path(*p) == std::vector<std::string>{"2C", "A"});
}

TEST_CASE("path_to_low_order absent") {
  ReactionNetwork net = parse_network("2A <-> A+B");
  CHECK_FALSE(path_to_low_order(net, net.complex_index(cx({2, 0}))).has_value());
}

TEST_CASE("path_to_low_order validity invariant") {
  for (const char* name : {"network5.crn", "network6.crn", "enzyme7_open.crn", "ex45.crn"}) {
    ReactionNetwork net = load_network(name);
    for (int c = 0; c < net.complex_count(); ++c) {
      auto p = path_to_low_order(net, c);
      if (!p) continue;
      CHECK(net.complexes[p->back()].order() <= 1);
      for (size_t i = 0; i + 1 < p->size(); ++i) {
        bool edge = false;
        for (const Reaction& r : net.reactions)
          edge = edge || (net.complex_index(r.source) == (*p)[i] &&
                          net.complex_index(r.product) == (*p)[i + 1]);
        CHECK(edge);
      }
    }
  }
}

TEST_CASE("unary_chain on the enzyme network") {
  ReactionNetwork net = load_network("enzyme7.crn");
  int S = net.species_index("S"), P = net.species_index("P"),
      E = net.species_index("E"), SE = net.species_index("SE");
  auto chain = unary_chain(net, S, {P, E, SE});
  REQUIRE(chain.has_value());
  CHECK(*chain == std::vector<int>{S, P});

  // trivial single-node path
  chain = unary_chain(net, P, {P, E});
  REQUIRE(chain.has_value());
  CHECK(*chain == std::vector<int>{P});

  // binary edges do not count as unary chains
  ReactionNetwork ab = parse_network("A+B -> C");
  CHECK_FALSE(unary_chain(ab, ab.species_index("A"), {ab.species_index("C")}).has_value());
}

TEST_CASE("flow decomposition of network (5)") {
  ReactionNetwork net = load_network("network5.crn");
  FlowDecomposition flow = flow_decomposition(net);
  CHECK(flow.core_reactions.size() == 3);
  CHECK(flow.inflow_species == std::set<int>{0, 1, 2});
  CHECK(flow.outflow_species == std::set<int>{0, 1, 2});
  for (int i : flow.core_reactions) {
    const Reaction& r = net.reactions[i];
    CHECK_FALSE((r.source.is_zero() && r.product.is_unary()));
    CHECK_FALSE((r.product.is_zero() && r.source.is_unary()));
  }
  CHECK(flow.core_reactions.size() + flow.inflow_reactions.size() +
            flow.outflow_reactions.size() ==
        static_cast<size_t>(net.reaction_count()));
}

TEST_CASE("flow decomposition of the open enzyme network") {
  ReactionNetwork net = load_network("enzyme7_open.crn");
  FlowDecomposition flow = flow_decomposition(net);
  std::set<int> expect{net.species_index("E"), net.species_index("P"),
                       net.species_index("SE")};
  CHECK(flow.outflow_species == expect);  // SE -> 0 was already present
  CHECK(flow.inflow_species == expect);
}

TEST_CASE("flow decomposition with no flows") {
  ReactionNetwork net = load_network("network6.crn");
  FlowDecomposition flow = flow_decomposition(net);
  CHECK(flow.core_reactions.size() == static_cast<size_t>(net.reaction_count()));
  CHECK(flow.inflow_species.empty());
  CHECK(flow.outflow_species.empty());
}

TEST_CASE("conservation vector of the network (5) core") {
  ReactionNetwork net = parse_network("A -> B\nB -> 2C\n2C -> A");
  auto w = find_conservation_vector(net.species_count(), net.reactions);
  REQUIRE(w.has_value());
  CHECK(w->weights == std::vector<long long>{2, 2, 1});
}

TEST_CASE("conservation vector of the enzyme core") {
  ReactionNetwork net = parse_network("S+E <-> SE\nSE <-> E+P\nS <-> P");
  REQUIRE(net.species[0].name == "S");
  REQUIRE(net.species[1].name == "E");
  REQUIRE(net.species[2].name == "SE");
  REQUIRE(net.species[3].name == "P");
  auto w = find_conservation_vector(net.species_count(), net.reactions);
  REQUIRE(w.has_value());
  CHECK(w->weights == std::vector<long long>{1, 1, 2, 1});
}

TEST_CASE("no conservation vector for 2S1 -> S1") {
  ReactionNetwork net = parse_network("2S1 -> S1");
  CHECK_FALSE(find_conservation_vector(net.species_count(), net.reactions).has_value());
}

TEST_CASE("conservation: exact orthogonality invariant") {
  for (const char* text :
       {"A -> B\nB -> 2C\n2C -> A", "S+E <-> SE\nSE <-> E+P\nS <-> P",
        "A <-> B", "2A <-> A+B\nA+B <-> 2B"}) {
    ReactionNetwork net = parse_network(text);
    auto w = find_conservation_vector(net.species_count(), net.reactions);
    REQUIRE(w.has_value());
    for (const Reaction& r : net.reactions) {
      long long dot = 0;
      std::vector<int> nc = r.net_change();
      for (int i = 0; i < net.species_count(); ++i)
        dot += w->weights[i] * nc[i];
      CHECK(dot == 0);  // exact integer arithmetic
    }
    for (long long wi : w->weights) CHECK(wi > 0);
  }
}

TEST_CASE("conservation existence agrees with a small integer grid search") {
  // For d <= 3 and coefficients <= 2, any network with a positive rational
  // conservation vector also has one with entries in 1..12 (kernel vertices
  // have small denominators at these sizes), so a grid scan is a sound oracle.
  auto oracle = [](const ReactionNetwork& net) {
    int d = net.species_count();
    std::vector<long long> w(d, 1);
    while (true) {
      bool ok = true;
      for (const Reaction& r : net.reactions) {
        long long dot = 0;
        std::vector<int> nc = r.net_change();
        for (int i = 0; i < d; ++i) dot += w[i] * nc[i];
        ok = ok && dot == 0;
      }
      if (ok) return true;
      int i = 0;
      while (i < d && w[i] == 12) w[i++] = 1;
      if (i == d) return false;
      ++w[i];
    }
  };

  for (const char* text :
       {"A -> B\nB -> 2C\n2C -> A", "A <-> B", "2S1 -> S1", "A -> B\nB -> C",
        "A -> 2B", "A + B -> 2B\nB -> A", "2A -> A+B\nA+B -> 2B\n2B -> 2A",
        "A -> B\nB -> 0", "0 -> A"}) {
    ReactionNetwork net = parse_network(text);
    CAPTURE(text);
    CHECK(find_conservation_vector(net.species_count(), net.reactions).has_value() ==
          oracle(net));
  }
}

TEST_CASE("weak reversibility implies same class and SCC per reaction") {
  for (const char* text :
       {"A -> B\nB -> 2C\n2C -> A", "2A <-> A+B\nA+B <-> B", "A <-> B\nC <-> D"}) {
    ReactionNetwork net = parse_network(text);
    if (!is_weakly_reversible(net)) continue;
    auto scc = strongly_connected_components(net);
    auto classes = linkage_classes(net);
    std::vector<int> class_of(net.complex_count());
    for (size_t k = 0; k < classes.size(); ++k)
      for (int c : classes[k]) class_of[c] = static_cast<int>(k);
    for (const Reaction& r : net.reactions) {
      int s = net.complex_index(r.source), p = net.complex_index(r.product);
      CHECK(scc[s] == scc[p]);
      CHECK(class_of[s] == class_of[p]);
    }
  }
}

TEST_CASE("linkage/weak-reversibility agree with brute-force reachability") {
  for (const char* text :
       {"A -> B", "A <-> B", "A -> B\nB -> 2C\n2C -> A", "2A <-> A+B",
        "A -> B\nC -> D", "0 <-> A", "A -> B\nB -> A\nC -> 2C ", "2A -> A+B\nA+B -> B"}) {
    ReactionNetwork net = parse_network(text);
    CAPTURE(text);
    REQUIRE(net.complex_count() <= 4);
    Reach oracle(net);

    auto classes = linkage_classes(net);
    std::vector<int> class_of(net.complex_count());
    for (size_t k = 0; k < classes.size(); ++k)
      for (int c : classes[k]) class_of[c] = static_cast<int>(k);
    for (int a = 0; a < net.complex_count(); ++a)
      for (int b = 0; b < net.complex_count(); ++b)
        CHECK((class_of[a] == class_of[b]) == oracle.same_undirected_component(a, b));

    bool oracle_wr = true;
    for (int a = 0; a < net.complex_count(); ++a)
      for (int b = 0; b < net.complex_count(); ++b)
        if (oracle.same_undirected_component(a, b) && a != b)
          oracle_wr = oracle_wr && oracle.closed[a][b];
    CHECK(is_weakly_reversible(net) == oracle_wr);
  }
}

}  // TEST_SUITE
