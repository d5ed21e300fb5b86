#include <doctest.h>

#include <cmath>
#include <vector>

#include "pinning/critical.hpp"
#include "pinning/error.hpp"
#include "pinning/free_energy.hpp"
#include "pinning/partition.hpp"

using namespace pinning;

namespace {

// Dense-grid minima of g for geometric rho = 0.5 over (delta, eta].
constexpr double kLdGeo0709Grid = 0.0822837258052932;
constexpr double kLdGeo055065Grid = 0.005008467182209671;

}  // namespace

TEST_SUITE("critical") {

TEST_CASE("deterministic critical point closed forms") {
  CHECK(u_c_det(ExcursionLaw::zeta(1.5)) == 0.0);
  CHECK(u_c_det(ExcursionLaw::zeta(1.5, 0.3)) == doctest::Approx(0.35667494393873238).epsilon(1e-14));
  CHECK(u_c_det(ExcursionLaw::geometric(0.5)) == kNegInf);
  CHECK(u_c_det(ExcursionLaw::zeta(1.5, 0.3), 2.0) == doctest::Approx(0.35667494393873238 / 2).epsilon(1e-14));
}

TEST_CASE("closed form agrees with the sign change of the free energy") {
  const auto z = ExcursionLaw::zeta(1.5, 0.3);
  CHECK(std::abs(u_c_det_by_bisection(z, -1.0, 2.0) - u_c_det(z)) < 1e-4);
  const auto c = ExcursionLaw::custom({0.3, 0.3}, 0.0, {TailClass::exponential, 3.0, 0.5});
  CHECK(std::abs(u_c_det_by_bisection(c, -3.0, 1.0) - u_c_det(c)) < 1e-4);
}

TEST_CASE("annealed critical point") {
  const auto z = ExcursionLaw::zeta(1.5);
  CHECK(u_c_annealed(1.0, z, DisorderLaw::gaussian(1.0)) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(u_c_annealed(1.0, z, DisorderLaw::zero()) == u_c_det(z));
  // u_c^d(2) - log M_V(2) / 2 = 0.356675 / 2 - 1
  CHECK(u_c_annealed(2.0, ExcursionLaw::zeta(1.5, 0.3), DisorderLaw::gaussian(1.0)) ==
        doctest::Approx(-0.82166252803063381).epsilon(1e-14));
  CHECK_THROWS_AS(u_c_annealed(1.0, z, DisorderLaw::shifted_pareto(1.5, 1.0)), Error);
}

TEST_CASE("transition order") {
  CHECK(transition_order(ExcursionLaw::geometric(0.5)) == TransitionOrder::undefined_uc_infinite);
  CHECK(transition_order(ExcursionLaw::zeta(3.0, 0.3)) == TransitionOrder::first_order);
  CHECK(transition_order(ExcursionLaw::zeta(1.5, 0.3)) == TransitionOrder::continuous);
  CHECK(to_string(TransitionOrder::first_order) == "first_order");
}

TEST_CASE("contact fraction") {
  const auto z = ExcursionLaw::zeta(1.5, 0.3);
  CHECK(contact_fraction(1.0, 0.0, z).value == 0.0);
  const auto at = contact_fraction(1.0, u_c_det(z), z);
  CHECK(at.value == 0.0);
  CHECK(at.at_boundary);
  CHECK(contact_fraction(1.0, 20.0, ExcursionLaw::fixed(2)).value == doctest::Approx(0.5));

  const auto z3 = ExcursionLaw::zeta(3.0, 0.3);
  const double jump = contact_fraction(1.0, u_c_det(z3) + 1e-7, z3).value;
  CHECK(jump >= 1.0 / z3.analytics().m_E - 1e-6);

  double prev = 0.0;
  for (double u = -0.5; u <= 1.5; u += 0.1) {
    const double c = contact_fraction(1.0, u, z).value;
    CHECK(c >= prev - 1e-9);
    prev = c;
  }
}

TEST_CASE("contact fraction agrees with finite-volume contact density") {
  const auto z = ExcursionLaw::zeta(1.5, 0.3);
  const long n = 4096;
  const auto tab = RenewalTables::build(z, n);
  const std::vector<double> v(n, 0.0);
  for (double du : {0.15, 0.5, 1.0}) {
    const double u = u_c_det(z) + du;
    const double c = contact_fraction(1.0, u, z).value;
    CHECK(std::abs(contact_moments(tab, 1.0, u, v, n).mean / n - c) < 0.02);
  }
}

TEST_CASE("large-deviation rate of the contact number") {
  const auto geo = ExcursionLaw::geometric(0.5);
  CHECK(ld_rate_contacts(geo, 0.4, 0.6) == 0.0);
  CHECK(ld_rate_contacts(ExcursionLaw::fixed(2), 0.1, 0.3) == kInf);
  CHECK(std::abs(ld_rate_contacts(geo, 0.7, 0.9) - kLdGeo0709Grid) < 1e-5);
  CHECK(std::abs(ld_rate_contacts(geo, 0.55, 0.65) - kLdGeo055065Grid) < 1e-5);

  const long n = 512;
  const auto tab = RenewalTables::build(geo, n);
  const auto cr = contact_resolved(tab, 0.0, 0.0, std::vector<double>(n, 0.0), n);
  const double emp = -restrict_band(cr, 0.7 * n, 0.9 * n) / n;
  CHECK(std::abs(emp - ld_rate_contacts(geo, 0.7, 0.9)) < 0.05);
  CHECK_THROWS_AS(ld_rate_contacts(geo, 0.6, 0.5), Error);
}

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
}

TEST_CASE("quenched estimate collapses onto u_c^d for zero disorder") {
  QuenchedConfig cfg;
  cfg.n_list = {4096};
  cfg.replicas = 2;
  cfg.tolerance = 0.02;
  const auto z = ExcursionLaw::zeta(1.5, 0.3);
  const auto iv = u_c_quenched_estimate(1.0, z, DisorderLaw::zero(), cfg);
  CHECK(iv.ok);
  CHECK(iv.lo <= iv.hi);
  CHECK(iv.hi - iv.lo <= cfg.tolerance + 1e-12);
  // finite n shifts the sign change slightly; the interval must sit near u_c^d
  CHECK(std::abs(0.5 * (iv.lo + iv.hi) - u_c_det(z)) < 0.03);
  CHECK_THROWS_AS(u_c_quenched_estimate(1.0, ExcursionLaw::geometric(0.5), DisorderLaw::zero(), cfg), Error);
}

}
