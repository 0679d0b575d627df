#include "crnmix/conservation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace crnmix {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Dense exact-arithmetic simplex with Bland's rule (anti-cycling, and makes
// the returned vertex deterministic). Minimizes c.x subject to A x = b,
// x >= 0, with b >= 0 on entry and an initial basic feasible solution given
// by `basis`.
struct Tableau {
  int rows, cols;                 // cols excludes the rhs
  std::vector<std::vector<Rat>> a;  // rows x (cols + 1), last col = rhs
  std::vector<int> basis;           // basic variable per row
  std::vector<Rat> red;             // reduced costs, size cols
  Rat objective = 0;

  void set_costs(const std::vector<Rat>& c) {
    red = c;
    objective = 0;
    for (int i = 0; i < rows; ++i) {
      const Rat& cb = c[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols; ++j) red[j] -= cb * a[i][j];
      objective -= cb * a[i][cols];
    }
  }

  void pivot(int pr, int pc) {
    Rat piv = a[pr][pc];
    for (int j = 0; j <= cols; ++j) a[pr][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == pr || a[i][pc] == 0) continue;
      Rat f = a[i][pc];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[pr][j];
    }
    if (red[pc] != 0) {
      Rat f = red[pc];
      for (int j = 0; j < cols; ++j) red[j] -= f * a[pr][j];
      objective -= f * a[pr][cols];
    }
    basis[pr] = pc;
  }

  // Runs to optimality; `allowed` masks out columns that may not enter.
  void solve(const std::vector<bool>& allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && red[j] < 0) {
          enter = j;
          break;  // Bland: smallest index
        }
      if (enter < 0) return;
      int leave = -1;
      Rat best;
      for (int i = 0; i < rows; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = a[i][cols] / a[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw std::runtime_error("unbounded linear program");
      pivot(leave, enter);
    }
  }
};

}  // namespace

std::optional<ConservationVector> find_conservation_vector(
    int species_count, const std::vector<Reaction>& reactions) {
  const int d = species_count;
  if (d == 0) return std::nullopt;

  // Decide feasibility of {w : w.(y'-y) = 0 for all reactions, w_i >= 1} and
  // return the vertex minimizing sum(w). Substituting w = 1 + z, z >= 0,
  // gives equality constraints in z suited to a phase-1/phase-2 simplex.
  const int m = static_cast<int>(reactions.size());
  Tableau t;
  t.rows = m;
  t.cols = d + m;  // z variables then artificials
  t.a.assign(m, std::vector<Rat>(t.cols + 1, 0));
  t.basis.resize(m);

  for (int i = 0; i < m; ++i) {
    std::vector<int> net = reactions[i].net_change();
    Rat rhs = 0;
    for (int j = 0; j < d; ++j) rhs -= net[j];  // b = -M.1
    int sign = rhs < 0 ? -1 : 1;
    for (int j = 0; j < d; ++j) t.a[i][j] = Rat(sign * net[j]);
    t.a[i][t.cols] = sign * rhs;
    t.a[i][d + i] = 1;
    t.basis[i] = d + i;
  }

  // Phase 1: minimize the artificial sum.
  std::vector<Rat> phase1(t.cols, 0);
  for (int j = d; j < t.cols; ++j) phase1[j] = 1;
  t.set_costs(phase1);
  std::vector<bool> allowed(t.cols, true);
  t.solve(allowed);
  if (t.objective != 0) return std::nullopt;  // no positive kernel vector

  // Pivot lingering artificials out of the basis; rows that cannot pivot are
  // redundant constraints and may be ignored (their rhs is zero).
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < d) continue;
    for (int j = 0; j < d; ++j)
      if (t.a[i][j] != 0) {
        t.pivot(i, j);
        break;
      }
  }

  // Phase 2: minimize sum(z), never letting artificials re-enter.
  std::vector<Rat> phase2(t.cols, 0);
  for (int j = 0; j < d; ++j) phase2[j] = 1;
  t.set_costs(phase2);
  for (int j = d; j < t.cols; ++j) allowed[j] = false;
  t.solve(allowed);

  std::vector<Rat> w(d, 1);
  for (int i = 0; i < t.rows; ++i)
    if (t.basis[i] < d) w[t.basis[i]] += t.a[i][t.cols];

  // Scale to the smallest strictly positive integer representative.
  Int lcm_den = 1;
  for (const Rat& q : w)
    lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(q));
  std::vector<Int> scaled(d);
  Int g = 0;
  for (int j = 0; j < d; ++j) {
    scaled[j] = boost::multiprecision::numerator(w[j]) *
                (lcm_den / boost::multiprecision::denominator(w[j]));
    g = boost::multiprecision::gcd(g, scaled[j]);
  }
  ConservationVector out;
  out.weights.resize(d);
  for (int j = 0; j < d; ++j) {
    Int v = scaled[j] / g;
    if (v <= 0 || v > Int(1'000'000'000'000LL))
      throw std::runtime_error("conservation vector out of range");
    out.weights[j] = v.convert_to<long long>();
  }
  return out;
}

}  // namespace crnmix
