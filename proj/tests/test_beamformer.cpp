#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "wipt/beamformer.hpp"
#include "wipt/metrics.hpp"

using namespace wipt;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

bool feasible(const ComplexMatrix& H_S, const JointBeamformers& jb, double tol = 1e-9) {
  const RealVector s = sinr_all(H_S, jb.W, jb.rho);
  for (int i = 0; i < s.size(); ++i)
    if (s(i) < jb.gamma(i) * (1.0 - tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("eh_direction: single EH user gives the matched direction") {
  const ComplexMatrix G = testutil::random_matrix(1, 3, 5);
  const ComplexVector w = eh_direction(G);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // Top eigenvector of g^H g is the conjugated, normalized row.
  const ComplexVector expected = G.row(0).adjoint().normalized();
  CHECK(std::abs(w.dot(expected)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g_eh(G, w) == doctest::Approx(G.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("eh_direction: dominant axis") {
  ComplexMatrix G = ComplexMatrix::Zero(2, 3);
  G(0, 1) = 3.0;               // energy concentrated on axis 2
  G(1, 0) = 0.5;
  const ComplexVector w = eh_direction(G);
  CHECK(std::abs(w(1)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g_eh(G, w) == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("eh_direction beats random search") {
  for (std::uint64_t seed = 11; seed < 14; ++seed) {
    const ComplexMatrix G = testutil::random_matrix(4, 3, seed);
    const double best = g_eh(G, eh_direction(G));
    for (int t = 0; t < 10000; ++t)
      CHECK(g_eh(G, testutil::random_unit_vector(3, 10'000 * seed + t)) <= best + 1e-9);
  }
}

TEST_CASE("g_eh: hand value") {
  ComplexMatrix G(1, 2);
  G << 1.0, 0.0;
  ComplexVector w(2);
  w << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  CHECK(g_eh(G, w) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("eh_gradient: hand values and clamps") {
  ComplexMatrix G(2, 2);
  G << 2.0, 0.0, 0.0, 1.0;  // g_eh(e1) = 4, g_eh(e2) = 1
  ComplexVector e1 = ComplexVector::Zero(2), e2 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  e2(1) = 1.0;
  // Orthogonal pair: gain (4 - 1) over an angular distance of pi/2.
  CHECK(eh_gradient(G, e1, e2) == doctest::Approx(3.0 / (std::numbers::pi / 2)).epsilon(1e-12));
  // Negative gain clamps to zero.
  CHECK(eh_gradient(G, e2, e1) == 0.0);
  // Vanishing angular distance clamps to zero.
  CHECK(eh_gradient(G, e1, e1) == 0.0);
}

TEST_CASE("steer: geodesic properties") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const ComplexVector base = testutil::random_unit_vector(4, seed);
    const ComplexVector target = testutil::random_unit_vector(4, seed + 50);
    const double cap = std::acos(std::min(std::abs(base.dot(target)), 1.0));
    for (double frac : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      const double theta = frac * cap;
      const ComplexVector w = steer(base, target, theta);
      CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
      // Angular distance from the base equals theta (absolute tolerance:
      // acos loses precision near 1, i.e., for tiny angles).
      CHECK(std::abs(std::acos(std::min(std::abs(w.dot(base)), 1.0)) - theta) < 1e-7);
      // Stays inside span{base, target}.
      ComplexMatrix span(4, 2);
      span.col(0) = base;
      span.col(1) = target;
      Eigen::HouseholderQR<ComplexMatrix> qr(span);
      const ComplexMatrix q =
          qr.householderQ() * ComplexMatrix::Identity(4, 2);
      CHECK((w - q * (q.adjoint() * w)).norm() < 1e-10);
    }
    // theta = cap lands on the target (up to a global phase).
    CHECK(std::abs(steer(base, target, cap).dot(target)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Clamping: overshooting requests stop at the target.
    CHECK(std::abs(steer(base, target, cap + 1.0).dot(target)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Metric property along the geodesic.
    const ComplexVector wa = steer(base, target, 0.2 * cap);
    const ComplexVector wb = steer(base, target, 0.7 * cap);
    CHECK(std::acos(std::min(std::abs(wa.dot(wb)), 1.0)) ==
          doctest::Approx(0.5 * cap).epsilon(1e-9));
  }
  // Colinear base/target rejected.
  const ComplexVector v = testutil::random_unit_vector(3, 77);
  CHECK_THROWS_WITH_AS(steer(v, Complex(0.0, 1.0) * v, 0.1),
                       doctest::Contains("colinear"), std::invalid_argument);
}

TEST_CASE("update_eh_direction: hand instance and null-space property") {
  ComplexMatrix G(2, 2);
  G << 1.0, 0.0, 0.0, 2.0;  // unconstrained optimum is e2
  ComplexMatrix cdi(1, 2);
  cdi << 0.0, 1.0;          // boundary user along e2 -> null space is e1
  const ComplexVector w = update_eh_direction(G, cdi);
  CHECK(std::abs(w(0)) == doctest::Approx(1.0).epsilon(1e-10));

  // Empty boundary falls back to the unconstrained direction.
  const ComplexMatrix Gr = testutil::random_matrix(3, 4, 31);
  CHECK((update_eh_direction(Gr, ComplexMatrix(0, 4)) - eh_direction(Gr)).norm() < 1e-10);

  // The updated direction is orthogonal to every boundary CDI row, and it is
  // the best such direction (random search in the null space cannot beat it).
  const ComplexMatrix rows = testutil::random_matrix(2, 4, 32).rowwise().normalized();
  const ComplexVector wn = update_eh_direction(Gr, rows);
  CHECK((rows * wn).norm() < 1e-9);
  const ComplexMatrix N = row_null_space(rows).basis;
  for (int t = 0; t < 5000; ++t) {
    const ComplexVector cand =
        (N * testutil::random_matrix(2, 1, 900 + t).col(0)).normalized();
    CHECK(g_eh(Gr, cand) <= g_eh(Gr, wn) + 1e-9);
  }

  CHECK_THROWS_WITH_AS(update_eh_direction(Gr, testutil::random_matrix(4, 4, 33)),
                       doctest::Contains("null space"), std::invalid_argument);
}

TEST_CASE("update_eh_direction_reduced: hand projection and degeneracy") {
  ComplexVector w_prev(2), h_bar(2);
  w_prev << 1.0, 0.0;
  h_bar << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const ComplexVector w = update_eh_direction_reduced(w_prev, h_bar);
  CHECK(w(0).real() == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(w(1).real() == doctest::Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-12));
  // Result is orthogonal to the beam-space direction of the CDI.
  CHECK(std::abs(h_bar.conjugate().normalized().dot(w)) < 1e-12);

  CHECK_THROWS_WITH_AS(update_eh_direction_reduced(h_bar.conjugate(), h_bar),
                       doctest::Contains("degenerate"), std::invalid_argument);
}

TEST_CASE("joint_beamform: mu = 1 reproduces ZFBF exactly") {
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(3, 4, seed);
    const ComplexMatrix G = testutil::random_matrix(5, 4, seed + 100);
    const JointBeamformers jb = joint_beamform(H_S, G, 10.0 / 3.0, 1.0, kDeg);
    const ZfBeamformers zf = zf_beamformers(H_S, 10.0 / 3.0);
    CHECK(jb.W == zf.W);  // bitwise identical
    CHECK(jb.geh_trace.empty());
  }
}

TEST_CASE("joint_beamform: single ID user matches the closed-form optimum") {
  // With one ID user and one EH user the constrained optimum is analytic:
  // maximize (A cos a + B sin a)^2 over a in [0, arccos sqrt(mu)], where A is
  // the EH gain along the ZF beam and B the residual EH channel energy.
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(1, 3, seed);
    const ComplexMatrix G = testutil::random_matrix(1, 3, seed + 100);
    const double mu = 0.7;
    const JointBeamformers jb = joint_beamform(H_S, G, 10.0, mu, 0.1 * kDeg);

    const ComplexVector u = H_S.row(0).adjoint().normalized();  // ZF beam
    const double A = std::abs((G.row(0) * u)(0, 0));
    const double B = std::sqrt(std::max(G.squaredNorm() - A * A, 0.0));
    const double a_star = std::min(std::atan2(B, A), std::acos(std::sqrt(mu)));
    const double opt = std::pow(A * std::cos(a_star) + B * std::sin(a_star), 2.0);

    const double achieved = g_eh(G, jb.W.col(0));
    CHECK(achieved <= opt + 1e-9);
    CHECK(achieved >= opt * (1.0 - 0.01));
    CHECK(feasible(H_S, jb));
  }
}

TEST_CASE("joint_beamform: loose constraint reaches the unconstrained optimum") {
  const ComplexMatrix H_S = testutil::random_matrix(1, 3, 71);
  const ComplexMatrix G = testutil::random_matrix(2, 3, 72);
  const double lambda_max = g_eh(G, eh_direction(G));
  const JointBeamformers jb = joint_beamform(H_S, G, 10.0, 0.01, 0.05 * kDeg);
  if (feasible(H_S, jb) && g_eh(G, jb.W.col(0)) > lambda_max * 0.999) {
    CHECK(g_eh(G, jb.W.col(0)) == doctest::Approx(lambda_max).epsilon(1e-3));
  } else {
    // mu = 0.01 leaves a wide feasible cone around the EH direction; the
    // steering cap is the angle to w_eh, so the optimum must be reached.
    CHECK(g_eh(G, jb.W.col(0)) >= lambda_max * 0.999);
  }
}

TEST_CASE("joint_beamform: invariants on random instances") {
  for (std::uint64_t seed = 80; seed < 100; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(3, 4, seed);
    const ComplexMatrix G = testutil::random_matrix(5, 4, seed + 200);
    for (UpdateVariant v : {UpdateVariant::full, UpdateVariant::reduced}) {
      const JointBeamformers jb = joint_beamform(H_S, G, 10.0 / 3.0, 0.7, kDeg, v);
      for (int i = 0; i < 3; ++i)
        CHECK(jb.W.col(i).norm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(feasible(H_S, jb));
      const ZfBeamformers zf = zf_beamformers(H_S, 10.0 / 3.0);
      CHECK(harvested_energy(G, jb.W, jb.rho) >=
            harvested_energy(G, zf.W, 10.0 / 3.0) - 1e-9);
      // Initial EH direction plus at most |S| null-space refreshes.
      CHECK(jb.iterations_used <= 4);
      // During the first pass the steering target is the global top
      // eigenvector, so the total normalized EH is non-decreasing across
      // accepted steps. Later passes steer toward constrained directions
      // that are not the maximum of the local 2-D section, so small dips
      // are inherent to the procedure and only the first pass is asserted.
      REQUIRE(!jb.pass_offsets.empty());
      const std::size_t first_pass_end =
          jb.pass_offsets.size() > 1 ? jb.pass_offsets[1] : jb.geh_trace.size();
      for (std::size_t k = 1; k < first_pass_end; ++k)
        CHECK(jb.geh_trace[k] >= jb.geh_trace[k - 1] - 1e-9);
    }
  }
}

TEST_CASE("joint_beamform: no single steering move beats the greedy result") {
  for (std::uint64_t seed = 120; seed < 126; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(2, 2, seed);
    const ComplexMatrix G = testutil::random_matrix(3, 2, seed + 300);
    const double rho = 5.0, mu = 0.7;
    const JointBeamformers jb = joint_beamform(H_S, G, rho, mu, kDeg);
    const ZfBeamformers zf = zf_beamformers(H_S, rho);
    const ComplexVector w_eh = eh_direction(G);
    const double joint_total = harvested_energy(G, jb.W, rho);

    for (int b = 0; b < 2; ++b) {
      const double cap = std::acos(std::min(std::abs(w_eh.dot(zf.W.col(b))), 1.0));
      for (double theta = 0.0; theta <= cap; theta += kDeg) {
        ComplexMatrix W = zf.W;
        W.col(b) = steer(zf.W.col(b), w_eh, theta);
        const RealVector s = sinr_all(H_S, W, rho);
        bool ok = true;
        for (int i = 0; i < 2; ++i)
          if (!(s(i) > mu * zf.sinr_zf(i))) ok = false;
        if (!ok) break;
        CHECK(harvested_energy(G, W, rho) <= joint_total + 1e-9);
      }
    }
  }
}

TEST_CASE("joint_beamform: reduced variant stays close to full") {
  double full_sum = 0.0, reduced_sum = 0.0;
  for (std::uint64_t seed = 150; seed < 190; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(3, 4, seed);
    const ComplexMatrix G = testutil::random_matrix(5, 4, seed + 400);
    full_sum += harvested_energy(
        G, joint_beamform(H_S, G, 10.0 / 3.0, 0.7, kDeg, UpdateVariant::full).W,
        10.0 / 3.0);
    reduced_sum += harvested_energy(
        G, joint_beamform(H_S, G, 10.0 / 3.0, 0.7, kDeg, UpdateVariant::reduced).W,
        10.0 / 3.0);
  }
  CHECK(reduced_sum >= 0.9 * full_sum);
}

TEST_CASE("add_dedicated_eh_beam: nulling, power split, and edge cases") {
  const ComplexMatrix H_S = testutil::random_matrix(3, 4, 200);
  const ComplexMatrix G = testutil::random_matrix(5, 4, 201);
  const JointBeamformers jb = joint_beamform(H_S, G, 10.0 / 3.0, 0.7, kDeg);
  const JointBeamformers ded = add_dedicated_eh_beam(jb, H_S, G);

  REQUIRE(ded.W.cols() == 4);
  CHECK(ded.W.col(3).norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((H_S * ded.W.col(3)).norm() < 1e-9);          // no ID interference
  CHECK(ded.rho == doctest::Approx(jb.rho * 3.0 / 4.0));
  CHECK(ded.gamma(0) / jb.gamma(0) == doctest::Approx(0.75));
  CHECK(feasible(H_S, ded));

  // The dedicated beam is the best null-space direction.
  const ComplexMatrix N = row_null_space(H_S).basis;
  for (int t = 0; t < 2000; ++t) {
    const ComplexVector cand =
        (N * testutil::random_matrix(1, 1, 700 + t).col(0)).normalized();
    CHECK(g_eh(G, cand) <= g_eh(G, ded.W.col(3)) + 1e-9);
  }

  // Full spatial load leaves no spare dimension.
  const ComplexMatrix H_full = testutil::random_matrix(4, 4, 202);
  const JointBeamformers jb_full = joint_beamform(H_full, G, 2.5, 0.7, kDeg);
  CHECK_THROWS_WITH_AS(add_dedicated_eh_beam(jb_full, H_full, G),
                       doctest::Contains("spare"), std::invalid_argument);
}
