#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "netmon/approx.hpp"
#include "netmon/game.hpp"
#include "test_util.hpp"

using namespace netmon;
using testutil::chainInstance;

namespace {

Vector reconstructed(const MixedDefense& sigma1, int n) {
  Vector rho = Vector::Zero(n);
  for (const auto& [defense, prob] : sigma1.support) {
    for (int v : defense.nodes) rho(v) += prob;
  }
  return rho;
}

}  // namespace

TEST_CASE("marginal decomposition reproduces hand-built supports") {
  {
    Vector rho(2);
    rho << 2.0 / 3.0, 1.0 / 3.0;
    const MixedDefense sigma1 = decomposeMarginals(Marginals{rho}, 1);
    REQUIRE(sigma1.support.size() == 2);
    CHECK(sigma1.support[0].first.nodes == std::vector<int>{0});
    CHECK(sigma1.support[0].second == doctest::Approx(2.0 / 3.0));
    CHECK(sigma1.support[1].first.nodes == std::vector<int>{1});
    CHECK(sigma1.support[1].second == doctest::Approx(1.0 / 3.0));
  }
  {
    Vector rho(3);
    rho << 1.0, 0.5, 0.5;
    const MixedDefense sigma1 = decomposeMarginals(Marginals{rho}, 2);
    REQUIRE(sigma1.support.size() == 2);
    CHECK(sigma1.support[0].first.nodes == std::vector<int>{0, 1});
    CHECK(sigma1.support[0].second == doctest::Approx(0.5));
    CHECK(sigma1.support[1].first.nodes == std::vector<int>{0, 2});
    CHECK(sigma1.support[1].second == doctest::Approx(0.5));
  }
  {
    Vector rho = Vector::Constant(3, 2.0 / 3.0);
    const MixedDefense sigma1 = decomposeMarginals(Marginals{rho}, 2);
    REQUIRE(sigma1.support.size() == 3);
    for (const auto& [defense, prob] : sigma1.support) {
      CHECK(defense.nodes.size() == 2);
      CHECK(prob == doctest::Approx(1.0 / 3.0));
    }
  }
}

TEST_CASE("marginal decomposition rejects invalid inputs") {
  Vector over(2);
  over << 1.2, 0.1;
  CHECK_THROWS_AS(decomposeMarginals(Marginals{over}, 2), ValidationError);
  Vector heavy(3);
  heavy << 1.0, 1.0, 0.5;
  CHECK_THROWS_AS(decomposeMarginals(Marginals{heavy}, 2), ValidationError);
}

TEST_CASE("marginal decomposition properties on random inputs") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + rng.uniformInt(0, 11);
    const int b1 = 1 + rng.uniformInt(0, n - 1);
    Vector rho(n);
    for (int v = 0; v < n; ++v) rho(v) = rng.uniform();
    // Rescale toward the budget, capping entries at one.
    double sum = rho.sum();
    if (sum > 0) {
      rho *= std::min(1.0, b1 / sum);
      rho = rho.cwiseMin(1.0);
    }

    const MixedDefense sigma1 = decomposeMarginals(Marginals{rho}, b1);
    CHECK(static_cast<int>(sigma1.support.size()) <= n + 1);
    double total = 0.0;
    for (const auto& [defense, prob] : sigma1.support) {
      CHECK(static_cast<int>(defense.nodes.size()) <= b1);
      CHECK(prob >= -1e-12);
      total += prob;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    const Vector back = reconstructed(sigma1, n);
    for (int v = 0; v < n; ++v) {
      CHECK(back(v) == doctest::Approx(rho(v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("cover/packing profile reproduces the worked chain example") {
  Vector weights(3);
  weights << 0.2, 0.2, 1.0;
  const Instance inst = chainInstance(weights, 1);
  const CoverResult cover = minSetCover(inst);
  const PackingResult packing = maxSetPacking(inst);
  REQUIRE(cover.size == 2);
  REQUIRE(packing.size == 2);

  const CoverPackingProfile profile = coverPackingProfile(inst, cover, packing);
  const Vector rho = marginals(inst, profile.defense).rho;
  CHECK(rho(0) == doctest::Approx(0.5));
  CHECK(rho(1) == doctest::Approx(0.5));
  CHECK(profile.attack.probs(0) == doctest::Approx(0.5));
  CHECK(profile.attack.probs(2) == doctest::Approx(0.5));
  CHECK(profile.certificate.eps == doctest::Approx(0.4));
  CHECK(profile.certificate.worst_case_loss == doctest::Approx(0.5));
  CHECK(profile.certificate.eps1 == doctest::Approx(0.0));
  CHECK(profile.certificate.eps2 == doctest::Approx(0.4));

  // The realized gap never exceeds the certificate.
  CHECK(profileEpsilon(inst, profile.defense, profile.attack) <= profile.certificate.eps + 1e-9);
}

TEST_CASE("equal weights with matching cover and packing give an exact equilibrium") {
  const Instance inst = chainInstance(0.7, 1);
  const CoverPackingProfile profile =
      coverPackingProfile(inst, minSetCover(inst), maxSetPacking(inst));
  CHECK(profile.certificate.eps == doctest::Approx(0.0));
  CHECK(profileEpsilon(inst, profile.defense, profile.attack) <= 1e-9);
}

TEST_CASE("certificate formulas at the budget boundary") {
  const EpsilonCertificate cert = coverPackingCertificate(4, 4, 4, 0.3, 1.0);
  CHECK(cert.worst_case_loss == doctest::Approx(0.0));
  CHECK(cert.eps == doctest::Approx(0.0));

  // Identity eps = worst_case_loss - payoff_floor in both budget regimes.
  for (const auto& [ns, ms, b1] : std::vector<std::tuple<int, int, int>>{
           {5, 3, 1}, {5, 3, 4}, {6, 6, 2}, {7, 2, 3}}) {
    const EpsilonCertificate c = coverPackingCertificate(ns, ms, b1, 0.25, 0.9);
    CHECK(c.eps == doctest::Approx(c.worst_case_loss - c.payoff_floor).epsilon(1e-12));
    CHECK(c.eps >= -1e-12);
    CHECK(c.eps1 >= -1e-12);
    CHECK(c.eps2 >= -1e-12);
  }
}

TEST_CASE("certificate bounds hold empirically on random instances") {
  Rng rng(90210);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + rng.uniformInt(0, 5);
    const int m = 3 + rng.uniformInt(0, 6);
    Instance inst = generateBipartite(n, m, 1, rng.raw() | 1, 0.3);
    const CoverResult cover = minSetCover(inst);
    if (cover.size < 2) continue;
    const int b1 = 1 + rng.uniformInt(0, cover.size - 2);
    inst = inst.withBudget(b1);
    const PackingResult packing = maxSetPacking(inst);
    const CoverPackingProfile profile = coverPackingProfile(inst, cover, packing);

    CHECK(bestResponseAttack(inst, profile.defense).value <=
          profile.certificate.worst_case_loss + 1e-7);
    CHECK(bestResponseDefense(inst, profile.attack).value >=
          profile.certificate.payoff_floor - 1e-7);
    CHECK(profileEpsilon(inst, profile.defense, profile.attack) <=
          profile.certificate.eps + 1e-7);
  }
}

TEST_CASE("focused profile on a wide criticality gap") {
  // Two top-criticality components coverable by separate nodes; the rest are
  // mild. Gap 0.6 >= required 0.5.
  const Instance inst({"v1", "v2"}, {"e1", "e2", "e3", "e4"}, {{0, 2}, {1, 3}},
                      (Vector(4) << 1.0, 1.0, 0.4, 0.4).finished(), 1);
  const FocusedResult result = focusedProfile(inst);
  REQUIRE(result.profile.has_value());
  CHECK(result.focus == std::vector<int>{0, 1});
  CHECK(result.profile->n_bar == 2);
  CHECK(result.profile->m_bar == 2);
  CHECK(result.profile->eps == doctest::Approx(0.0));
  CHECK(result.profile->worst_case_loss == doctest::Approx(0.5));
  CHECK(profileEpsilon(inst, result.profile->defense, result.profile->attack) <= 1e-9);
}

TEST_CASE("focused profile declines when the gap is too small") {
  const Instance inst({"v1", "v2"}, {"e1", "e2", "e3", "e4"}, {{0, 2}, {1, 3}},
                      (Vector(4) << 1.0, 1.0, 0.8, 0.8).finished(), 1);
  const FocusedResult result = focusedProfile(inst);
  CHECK_FALSE(result.profile.has_value());
  CHECK(result.gap == doctest::Approx(0.2));
  CHECK(result.required_gap == doctest::Approx(0.5));
}

TEST_CASE("focused profile is impossible once the budget reaches the focus cover") {
  const Instance inst({"v1", "v2"}, {"e1", "e2", "e3"}, {{0, 2}, {1, 2}},
                      (Vector(3) << 1.0, 1.0, 0.3).finished(), 2);
  // Focus cover needs both nodes, so required gap equals w_max.
  const FocusedResult result = focusedProfile(inst);
  CHECK_FALSE(result.profile.has_value());
  CHECK(result.required_gap == doctest::Approx(1.0));
}

TEST_CASE("focused certificates never exceed the full ones") {
  const Instance inst({"v1", "v2", "v3", "v4"}, {"e1", "e2", "e3", "e4"},
                      {{0}, {1}, {2}, {3}}, (Vector(4) << 1.0, 1.0, 0.2, 0.2).finished(), 1);
  const CoverPackingProfile full =
      coverPackingProfile(inst, minSetCover(inst), maxSetPacking(inst));
  const FocusedResult focused = focusedProfile(inst);
  REQUIRE(focused.profile.has_value());
  const CertificateComparison cmp = compareCertificates(full.certificate, *focused.profile);
  CHECK(cmp.focused_not_worse);
  CHECK(cmp.focused_worst_case == doctest::Approx(0.5));
  CHECK(cmp.full_worst_case == doctest::Approx(0.75));

  // Focusing on everything reproduces the full certificate.
  const Instance flat({"v1", "v2"}, {"e1", "e2"}, {{0}, {1}}, Vector::Constant(2, 0.6), 1);
  const FocusedResult whole = focusedProfile(flat);
  REQUIRE(whole.profile.has_value());
  const CoverPackingProfile base =
      coverPackingProfile(flat, minSetCover(flat), maxSetPacking(flat));
  CHECK(whole.profile->worst_case_loss == doctest::Approx(base.certificate.worst_case_loss));
  CHECK(whole.profile->eps == doctest::Approx(base.certificate.eps));
}
