#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlift/json_io.hpp"
#include "ramlift/lift.hpp"

namespace ramlift {

struct VerifyConfig {
  long n = 2;
  int grid = 512;
  std::uint64_t seed = 0;
  long rotation_iterations = 100000;
  double tol_relation = 1e-8;
  double tol_square = 1e-9;
  double tol_fiber_derivative = 1e-6;
  double tol_sigma = 1e-6;
  double tol_rotation = 1e-3;
  double tol_schwarzian = 1e-4;
  double tol_schwarzian_mobius = 1e-10;  // fiber points of order 1
};

struct FiberDerivative {
  std::string q;
  int s = 1;
  double expected = 0.0;
  double got = 0.0;        // Richardson finite difference of the k-th iterate
  double closed_form = 0.0;
};

struct VerifyReport {
  VerifyConfig config;
  SignatureVector signature;
  Hom hom;
  bool base_changed = false;
  double relation_residual = 0.0;
  double square_residual = 0.0;
  std::vector<FiberDerivative> fiber_derivatives;
  SpectralRadius sigma;
  std::optional<Q> rotation_comb;
  double rotation_numeric = 0.0;
  double schwarzian_max = 0.0;
  double schwarzian_mobius_max = 0.0;  // over order-1 fiber points only
  bool pass = false;
  std::string first_failure;
};

/// Builds the lifted representation over a base-infinity cover and runs every check.
/// Throws NotAdmissible or HomConstraintViolated when (ζ_a, ζ_b) cannot be lifted.
inline VerifyReport run_verify(const RamifiedCover& cover_in, const Hom& hom, const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.config = cfg;
  rep.hom = hom;
  RamifiedCover cover = cover_in;
  if (cover.base == BasePoint::zero) {
    cover = change_base(cover);
    rep.base_changed = true;
  }
  const auto nc = std::make_shared<const NumericCover>(cover);
  rep.signature = nc->signature();
  const LiftedRep R(cfg.n, nc, hom.first, hom.second);
  const auto grid = sample_grid(cfg.grid, cfg.seed);

  rep.relation_residual = relation_residual(R, grid);
  rep.square_residual = std::max(square_residual(R.a(), grid), square_residual(R.b(), grid));

  const int k = R.a().zeta().order();
  for (int i = 0; i < nc->d(); ++i) {
    const double u = nc->fiber_u(i);
    // (f̂^k)'(q) for the k-th iterate, which fixes q: (1/n)^{k/s}.
    FiberDerivative fd;
    fd.q = point_text(cover.ram[i]);
    fd.s = nc->signature().s[i];
    fd.expected = std::pow(1.0 / static_cast<double>(cfg.n), static_cast<double>(k) / fd.s);
    fd.got = detail::fd_derivative(R.a(), u, k, 1e-4);
    double chain = 1.0, y = u;
    for (int m = 0; m < k; ++m) {
      chain *= R.a().derivative_u(y);
      y = R.a().eval_u(y);
    }
    fd.closed_form = chain;
    rep.fiber_derivatives.push_back(fd);
  }

  rep.sigma = inner_spectral_radius(R);

  if (!R.b().zeta().flip) {
    rep.rotation_comb = rotation_number_combinatorial(R.b());
    rep.rotation_numeric = rotation_number_numeric(R.b(), cfg.rotation_iterations);
  }

  const LiftedMap translation(nc, MobiusD{1, 1, 0, 1}, Dihedral::identity(nc->d()));
  for (int i = 0; i < nc->d(); ++i) {
    const double S = schwarzian_check(translation, i);
    rep.schwarzian_max = std::max(rep.schwarzian_max, S);
    if (nc->signature().s[i] == 1) rep.schwarzian_mobius_max = std::max(rep.schwarzian_mobius_max, S);
  }

  auto check = [&](bool ok, const char* name) {
    if (!ok && rep.first_failure.empty()) rep.first_failure = name;
  };
  check(rep.relation_residual < cfg.tol_relation, "relation_residual");
  check(rep.square_residual < cfg.tol_square, "square_residual");
  for (const auto& f : rep.fiber_derivatives) {
    check(std::fabs(f.got - f.expected) < cfg.tol_fiber_derivative, "fiber_derivatives");
    check(std::fabs(f.closed_form - f.expected) < cfg.tol_fiber_derivative, "fiber_derivatives");
  }
  check(std::fabs(rep.sigma.numeric - rep.sigma.closed_form) < cfg.tol_sigma, "sigma");
  if (rep.rotation_comb) {
    const double comb = to_double(*rep.rotation_comb);
    check(circle_distance(comb, rep.rotation_numeric) < cfg.tol_rotation, "rotation");
  }
  check(rep.schwarzian_max < cfg.tol_schwarzian, "schwarzian");
  check(rep.schwarzian_mobius_max < cfg.tol_schwarzian_mobius, "schwarzian");
  rep.pass = rep.first_failure.empty();
  return rep;
}

inline json to_json(const VerifyReport& r) {
  json fds = json::array();
  for (const auto& f : r.fiber_derivatives)
    fds.push_back({{"q", f.q}, {"s", f.s}, {"expected", f.expected}, {"got", f.got}, {"closed_form", f.closed_form}});
  json rot = {{"comb", nullptr}, {"numeric", nullptr}};
  if (r.rotation_comb) {
    const Q& c = *r.rotation_comb;
    rot = {{"comb", c.get_num().get_str() + "/" + c.get_den().get_str()}, {"numeric", r.rotation_numeric}};
  }
  const VerifyConfig& c = r.config;
  return {{"config",
           {{"n", c.n},
            {"grid", c.grid},
            {"seed", c.seed},
            {"precision_bits", 53},
            {"rotation_iterations", c.rotation_iterations},
            {"tolerances",
             {{"relation", c.tol_relation},
              {"square", c.tol_square},
              {"fiber_derivative", c.tol_fiber_derivative},
              {"sigma", c.tol_sigma},
              {"rotation", c.tol_rotation},
              {"schwarzian", c.tol_schwarzian},
              {"schwarzian_mobius", c.tol_schwarzian_mobius}}}}},
          {"signature", to_json(r.signature)},
          {"hom", {{"a", to_json(r.hom.first)}, {"b", to_json(r.hom.second)}}},
          {"base_changed", r.base_changed},
          {"relation_residual", r.relation_residual},
          {"square_residual", r.square_residual},
          {"fiber_derivatives", fds},
          {"sigma",
           {{"closed_form", r.sigma.closed_form},
            {"numeric", r.sigma.numeric},
            {"zeta_a_nontrivial", r.sigma.zeta_a_nontrivial}}},
          {"rotation", rot},
          {"schwarzian_max", r.schwarzian_max},
          {"pass", r.pass},
          {"first_failure", r.first_failure}};
}

}  // namespace ramlift
