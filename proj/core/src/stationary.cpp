#include "crnmix/stationary.hpp"

#include <Eigen/Dense>
#include "json.hpp"

#include "crnmix/ssa.hpp"

#include <algorithm>
#include <cmath>

namespace crnmix {

namespace {

double monomial(const std::vector<double>& c, const Complex& y) {
  double v = 1.0;
  for (size_t i = 0; i < c.size(); ++i)
    for (int k = 0; k < y.coefficients[i]; ++k) v *= c[i];
  return v;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> mass_action_field(const ReactionNetwork& net,
                                      const std::vector<double>& c) {
  std::vector<double> f(net.species_count(), 0.0);
  for (const Reaction& r : net.reactions) {
    double flux = r.rate_constant * monomial(c, r.source);
    std::vector<int> nc = r.net_change();
    for (int i = 0; i < net.species_count(); ++i) f[i] += flux * nc[i];
  }
  return f;
}

std::vector<double> find_equilibrium(const ReactionNetwork& net,
                                     std::vector<double> c,
                                     const NewtonOptions& opt) {
  const int d = net.species_count();
  if (static_cast<int>(c.size()) != d)
    throw std::invalid_argument("initial guess dimension mismatch");
  for (double v : c)
    if (!(v > 0.0)) throw std::invalid_argument("initial guess must be strictly positive");

  std::vector<double> f = mass_action_field(net, c);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    double res = sup_norm(f);
    if (res <= opt.tolerance) return c;

    // Jacobian dF_i/dc_j = sum_r kappa_r * y_{r,j} * c^{y_r - e_j} * net_{r,i}.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
    for (const Reaction& r : net.reactions) {
      std::vector<int> nc = r.net_change();
      for (int j = 0; j < d; ++j) {
        int yj = r.source.coefficients[j];
        if (yj == 0) continue;
        double dflux = r.rate_constant * yj;
        for (int i = 0; i < d; ++i) {
          int p = r.source.coefficients[i] - (i == j ? 1 : 0);
          for (int k = 0; k < p; ++k) dflux *= c[i];
        }
        for (int i = 0; i < d; ++i) jac(i, j) += dflux * nc[i];
      }
    }

    Eigen::VectorXd rhs(d);
    for (int i = 0; i < d; ++i) rhs(i) = -f[i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible())
      throw EquilibriumError("Jacobian singular at Newton iterate " + std::to_string(iter));
    Eigen::VectorXd step = lu.solve(rhs);

    // Step halving until the iterate stays positive and the residual drops.
    double alpha = 1.0;
    std::vector<double> cn(d), fn;
    while (true) {
      bool positive = true;
      for (int i = 0; i < d; ++i) {
        cn[i] = c[i] + alpha * step(i);
        positive = positive && cn[i] > 0.0;
      }
      if (positive) {
        fn = mass_action_field(net, cn);
        if (sup_norm(fn) <= (1.0 - 0.25 * alpha) * res || alpha < 1e-8) break;
      }
      alpha *= 0.5;
      if (alpha < 1e-12)
        throw EquilibriumError("Newton line search failed at iteration " +
                               std::to_string(iter));
    }
    c = cn;
    f = fn;
  }
  throw EquilibriumError("no convergence after " + std::to_string(opt.max_iterations) +
                         " Newton iterations (residual " + std::to_string(sup_norm(f)) + ")");
}

std::vector<double> complex_balance_residuals(const ReactionNetwork& net,
                                              const std::vector<double>& c) {
  std::vector<double> res(net.complex_count(), 0.0);
  for (const Reaction& r : net.reactions) {
    double flux = r.rate_constant * monomial(c, r.source);
    res[net.complex_index(r.product)] += flux;
    res[net.complex_index(r.source)] -= flux;
  }
  return res;
}

bool is_complex_balanced(const ReactionNetwork& net, const std::vector<double>& c,
                         double tolerance) {
  std::vector<double> in(net.complex_count(), 0.0), out(net.complex_count(), 0.0);
  for (const Reaction& r : net.reactions) {
    double flux = r.rate_constant * monomial(c, r.source);
    in[net.complex_index(r.product)] += flux;
    out[net.complex_index(r.source)] += flux;
  }
  for (int z = 0; z < net.complex_count(); ++z) {
    double mag = std::max(in[z], out[z]);
    if (std::abs(in[z] - out[z]) > tolerance * (1.0 + mag)) return false;
  }
  return true;
}

double StationaryDistribution::log_pmf(const State& z) const {
  if (kind != Kind::ProductPoisson)
    throw std::logic_error("log_pmf is defined for product-Poisson only");
  double lp = 0.0;
  for (size_t i = 0; i < means.size(); ++i) {
    double zi = static_cast<double>(z[i]);
    lp += -means[i] + zi * std::log(means[i]) - std::lgamma(zi + 1.0);
  }
  return lp;
}

double StationaryDistribution::pmf(const State& z) const { return std::exp(log_pmf(z)); }

StationaryDistribution product_poisson(std::vector<double> means) {
  for (double m : means)
    if (!(m > 0.0)) throw std::invalid_argument("product-Poisson means must be positive");
  StationaryDistribution pi;
  pi.kind = StationaryDistribution::Kind::ProductPoisson;
  pi.means = std::move(means);
  return pi;
}

std::string stationary_report_json(const ReactionNetwork& net,
                                   const std::vector<double>& equilibrium,
                                   const StationaryDistribution& pi,
                                   bool complex_balanced, bool irreducible,
                                   int indent) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json eq;
  for (int i = 0; i < net.species_count(); ++i) eq[net.species[i].name] = equilibrium[i];
  j["equilibrium"] = eq;
  std::vector<double> res = complex_balance_residuals(net, equilibrium);
  nlohmann::ordered_json rj;
  for (int z = 0; z < net.complex_count(); ++z)
    rj[net.complex_name(net.complexes[z])] = res[z];
  j["complex_balance_residuals"] = rj;
  j["complex_balanced"] = complex_balanced;
  j["irreducibility_probe"] = irreducible;
  j["pi_kind"] = pi.kind == StationaryDistribution::Kind::ProductPoisson
                     ? "product-poisson"
                     : "empirical";
  return j.dump(indent);
}

StationaryChoice choose_stationary(const ReactionNetwork& net, const State& x0,
                                   long long box_radius, const SimulationConfig& sim,
                                   const StationaryPipelineOptions& opt) {
  StationaryChoice choice;
  std::vector<double> guess =
      opt.guess.empty() ? std::vector<double>(net.species_count(), 1.0) : opt.guess;
  choice.equilibrium = find_equilibrium(net, guess, opt.newton);
  choice.complex_balanced =
      is_complex_balanced(net, choice.equilibrium, opt.balance_tolerance);

  State probe_state(x0.size());
  for (size_t i = 0; i < x0.size(); ++i)
    probe_state[i] = std::min(x0[i], opt.probe_box);
  choice.irreducible = irreducibility_probe(net, probe_state, opt.probe_box);

  if (choice.complex_balanced && choice.irreducible) {
    choice.pi = product_poisson(choice.equilibrium);
    return choice;
  }

  // Empirical fallback: the law after a long relaxation run stands in for pi.
  TransientDistribution longrun =
      transient_distribution(net, x0, opt.relax_time, sim, box_radius);
  choice.pi.kind = StationaryDistribution::Kind::Empirical;
  choice.pi.box_radius = box_radius;
  choice.pi.out_of_box_mass = longrun.out_of_box_mass();
  for (size_t i = 0; i < longrun.counts.size(); ++i)
    choice.pi.table.push_back({longrun.counts[i].first, longrun.frequency(i)});
  return choice;
}

}  // namespace crnmix
