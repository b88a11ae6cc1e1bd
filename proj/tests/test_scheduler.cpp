#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "wipt/metrics.hpp"
#include "wipt/scheduler.hpp"

using namespace wipt;

TEST_CASE("sus_select: single user, zero threshold") {
  const ComplexMatrix H = testutil::random_matrix(1, 4, 1);
  const UserSelection sel = sus_select(H, 0.0, 4);
  REQUIRE(sel.indices.size() == 1);
  CHECK(sel.indices[0] == 0);
}

TEST_CASE("sus_select: zero threshold keeps only the strongest user") {
  const ComplexMatrix H = testutil::random_matrix(6, 4, 2);
  const UserSelection sel = sus_select(H, 0.0, 4);
  REQUIRE(sel.indices.size() == 1);
  int best = 0;
  for (int k = 1; k < 6; ++k)
    if (H.row(k).norm() > H.row(best).norm()) best = k;
  CHECK(sel.indices[0] == best);
}

TEST_CASE("sus_select: hand-built 3-user instance, M = 2") {
  // User 0: strong along e1. User 1: strong along e2 (orthogonal, kept).
  // User 2: nearly parallel to user 0 (pruned at eps = 0.3).
  ComplexMatrix H = ComplexMatrix::Zero(3, 2);
  H(0, 0) = 3.0;
  H(1, 1) = 2.0;
  H(2, 0) = 2.5;
  H(2, 1) = 0.25;
  const UserSelection sel = sus_select(H, 0.3, 2);
  REQUIRE(sel.indices.size() == 2);
  CHECK(sel.indices[0] == 0);
  CHECK(sel.indices[1] == 1);
  REQUIRE(sel.candidate_counts.size() == 2);
  CHECK(sel.candidate_counts[0] == 3);
  CHECK(sel.candidate_counts[1] == 1);  // user 2 pruned, only user 1 survives
}

namespace {

// Brute-force reference: re-run the greedy semi-orthogonal selection
// definition literally, with exact ZF SINRs instead of the projection proxy.
std::vector<int> sus_reference(const ComplexMatrix& H, double eps, int M) {
  const int K = static_cast<int>(H.rows());
  std::vector<int> selected;
  std::vector<bool> eligible(K, true);
  auto is_selected = [&](int k) {
    return std::find(selected.begin(), selected.end(), k) != selected.end();
  };
  while (static_cast<int>(selected.size()) < M) {
    // Prune candidates whose CDI correlates above eps with the latest pick.
    if (!selected.empty()) {
      const int last = selected.back();
      bool any = false;
      for (int k = 0; k < K; ++k) {
        if (!eligible[k] || is_selected(k)) continue;
        const double corr = std::abs((H.row(k) * H.row(last).adjoint())(0, 0)) /
                            (H.row(k).norm() * H.row(last).norm());
        if (corr > eps) eligible[k] = false;
        if (eligible[k]) any = true;
      }
      if (!any) break;
    }
    int best = -1;
    double best_val = -1.0;
    for (int k = 0; k < K; ++k) {
      if (!eligible[k] || is_selected(k)) continue;
      double val;
      if (selected.empty()) {
        val = H.row(k).squaredNorm();
      } else {
        ComplexMatrix aug(selected.size() + 1, H.cols());
        for (std::size_t i = 0; i < selected.size(); ++i) aug.row(i) = H.row(selected[i]);
        aug.row(selected.size()) = H.row(k);
        val = zf_beamformers(aug, 1.0).sinr_zf(static_cast<int>(selected.size()));
      }
      if (val > best_val + 1e-12) {
        best_val = val;
        best = k;
      }
    }
    if (best < 0) break;
    selected.push_back(best);
  }
  return selected;
}

}  // namespace

TEST_CASE("sus_select matches the literal reference on random instances") {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    const ComplexMatrix H = testutil::random_matrix(12, 4, seed);
    const UserSelection sel = sus_select(H, 0.3, 4);
    const std::vector<int> ref = sus_reference(H, 0.3, 4);
    CHECK(sel.indices == ref);
    CHECK(sel.indices.size() <= 4);
  }
}

TEST_CASE("sus_select: selected CDIs are pairwise eps-semi-orthogonal to pi(1)") {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const ComplexMatrix H = testutil::random_matrix(30, 4, seed);
    const UserSelection sel = sus_select(H, 0.25, 4);
    for (std::size_t i = 1; i < sel.indices.size(); ++i) {
      // Every selected user survived pruning against all earlier selections.
      for (std::size_t j = 0; j < i; ++j) {
        const auto a = H.row(sel.indices[i]);
        const auto b = H.row(sel.indices[j]);
        const double corr = std::abs((a * b.adjoint())(0, 0)) / (a.norm() * b.norm());
        CHECK(corr <= 0.25 + 1e-12);
      }
    }
  }
}

TEST_CASE("zf_beamformers: nulling, unit norms, SINR formula") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const ComplexMatrix H_S = testutil::random_matrix(3, 4, seed);
    const double rho = 2.5;
    const ZfBeamformers zf = zf_beamformers(H_S, rho);
    REQUIRE(zf.W.cols() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(zf.W.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      for (int k = 0; k < 3; ++k) {
        const Complex gain = (H_S.row(k) * zf.W.col(i))(0, 0);
        if (k == i) {
          CHECK(zf.sinr_zf(k) == doctest::Approx(rho * std::norm(gain)).epsilon(1e-10));
        } else {
          CHECK(std::abs(gain) < 1e-9);
        }
      }
    }
    // With zero interference, sinr_all must agree.
    const RealVector s = sinr_all(H_S, zf.W, rho);
    for (int k = 0; k < 3; ++k)
      CHECK(s(k) == doctest::Approx(zf.sinr_zf(k)).epsilon(1e-8));
  }
}

TEST_CASE("zf_beamformers: orthonormal channel rows give matched filters") {
  ComplexMatrix H = ComplexMatrix::Zero(2, 3);
  H(0, 0) = 1.0;
  H(1, 1) = Complex(0.0, 1.0);
  const ZfBeamformers zf = zf_beamformers(H, 4.0);
  // w_k is the normalized conjugate channel; SINR = rho * ||h||^2.
  CHECK(std::abs((H.row(0) * zf.W.col(0))(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs((H.row(1) * zf.W.col(1))(0, 0)) == doctest::Approx(1.0));
  CHECK(zf.sinr_zf(0) == doctest::Approx(4.0));
  CHECK(zf.sinr_zf(1) == doctest::Approx(4.0));
}

TEST_CASE("sinr_candidate_proxy equals the exact ZF SINR of the augmented set") {
  for (std::uint64_t seed = 80; seed < 90; ++seed) {
    const ComplexMatrix rows = testutil::random_matrix(2, 4, seed);
    const ComplexMatrix hrow = testutil::random_matrix(1, 4, seed + 500);
    const double rho = 3.0;
    const double proxy = sinr_candidate_proxy(hrow.row(0).transpose(), rows, rho);

    ComplexMatrix aug(3, 4);
    aug.topRows(2) = rows;
    aug.row(2) = hrow.row(0);
    const ZfBeamformers zf = zf_beamformers(aug, rho);
    CHECK(proxy == doctest::Approx(zf.sinr_zf(2)).epsilon(1e-8));
  }
}
