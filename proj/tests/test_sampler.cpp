#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pgsum/dense.hpp"
#include "pgsum/sampler.hpp"
#include "pgsum/unfold.hpp"
#include "support/oracles.hpp"

using pgsum::PathLaplacian;
using pgsum::ScaledOperator;
namespace pt = pgsum::testing;

namespace {

PathLaplacian four_node_path() { return PathLaplacian({0.5, 0.5, 0.5}, {0, 0, 0, 0}); }

// Rows start..end of the (possibly GDPA-transformed) operator with the
// partition's cut edges removed, node `sample` sampled, and S applied.
Eigen::MatrixXd scaled_block(const ScaledOperator& op, const pgsum::Partition& p,
                             std::span<const double> scalars) {
  const auto len = static_cast<Eigen::Index>(p.end - p.start + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(len, len);
  for (Eigen::Index r = 0; r < len; ++r) {
    const std::size_t i = p.start + static_cast<std::size_t>(r);
    m(r, r) = op.centers[i] + (i == p.sample ? 1.0 : 0.0);
    if (r == 0 && i > 0) m(r, r) -= op.edges[i - 1];
    if (r + 1 == len && i + 1 < op.n()) m(r, r) -= op.edges[i];
    if (r + 1 < len) {
      m(r, r + 1) = -op.w_right[i] * scalars[i] / scalars[i + 1];
      m(r + 1, r) = -op.w_left[i] * scalars[i + 1] / scalars[i];
    }
  }
  return m;
}

PathLaplacian random_instance(pt::Rng& rng, std::size_t n, bool loops) {
  if (!loops) return pt::random_path(rng, n, 0.05, 1.0);
  if (n < 3) return pt::random_path(rng, n, 0.05, 1.0, 0.5);
  return pgsum::unfold(pt::random_epg(rng, n, std::min<std::size_t>(3, n - 1)), 0.0);
}

}  // namespace

TEST(BuildOperator, FourNodePath) {
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  EXPECT_EQ(op.centers, (std::vector<double>{0.5, 1.0, 1.0, 0.5}));
  EXPECT_EQ(op.w_right, (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(op.w_left, op.w_right);
  EXPECT_EQ(op.base, 0.0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(op.left_end(i), 0.0);
}

TEST(BuildOperator, MuScalesLinearly) {
  pt::Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = pt::random_path(rng, pt::uniform_index(rng, 2, 40), 0.01, 1.0);
    const double mu = pt::uniform(rng, 0.01, 2.0);
    const auto a = pgsum::build_operator(l, mu);
    const auto b = pgsum::build_operator(l, 2 * mu);
    for (std::size_t i = 0; i < a.n(); ++i) EXPECT_EQ(b.centers[i], 2 * a.centers[i]);
    for (std::size_t i = 0; i + 1 < a.n(); ++i) {
      EXPECT_EQ(b.w_right[i], 2 * a.w_right[i]);
      EXPECT_EQ(b.w_left[i], 2 * a.w_left[i]);
    }
  }
}

TEST(BuildOperator, LeftEndsAtBase) {
  pt::Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const bool loops = trial % 2 == 1;
    const auto l = random_instance(rng, pt::uniform_index(rng, 2, 120), loops);
    const double mu = pt::uniform(rng, 0.01, 3.0);
    const auto op = pgsum::build_operator(l, mu);
    if (!loops) EXPECT_EQ(op.base, 0.0);
    for (std::size_t i = 0; i < op.n(); ++i) {
      ASSERT_NEAR(op.left_end(i), op.base, 1e-6 * std::max(1.0, mu));
    }
  }
}

TEST(BuildOperator, SelfLoopExample) {
  const auto op = pgsum::build_operator(PathLaplacian({1.0}, {1.0, 0.0}), 1.0);
  EXPECT_NEAR(op.base, (3.0 - std::sqrt(5.0)) / 2.0, 1e-10);
  EXPECT_NEAR(op.left_end(0), op.base, 1e-9);
  EXPECT_NEAR(op.left_end(1), op.base, 1e-9);
  EXPECT_THROW(pgsum::build_operator(four_node_path(), 0.0), std::invalid_argument);
}

TEST(Gdpa, GoldenRatio) {
  const auto a = pgsum::gdpa_align(PathLaplacian({1.0}, {1.0, 0.0}));
  EXPECT_NEAR(a.lambda_min, 0.381966, 1e-6);
  ASSERT_EQ(a.alphas.size(), 1u);
  EXPECT_NEAR(a.alphas[0], 1.618034, 1e-6);
  EXPECT_NEAR(1.0 - 1.0 / a.alphas[0], a.lambda_min, 1e-9);
}

TEST(Gdpa, UniformLoopsShiftSpectrum) {
  pt::Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = pt::uniform_index(rng, 2, 60);
    std::vector<double> w(n - 1);
    for (double& x : w) x = pt::uniform(rng, 0.1, 1.0);
    const double u = pt::uniform(rng, 0.01, 2.0);
    const auto a = pgsum::gdpa_align(PathLaplacian(w, std::vector<double>(n, u)));
    EXPECT_NEAR(a.lambda_min, u, 1e-10);
    for (double alpha : a.alphas) EXPECT_NEAR(alpha, 1.0, 1e-6);
  }
}

TEST(Gdpa, MatchesEigenvectorRatios) {
  pt::Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const auto l = pt::random_path(rng, pt::uniform_index(rng, 2, 25), 0.3, 1.0, 0.3);
    const auto a = pgsum::gdpa_align(l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pgsum::dense_matrix(l));
    Eigen::VectorXd v = eig.eigenvectors().col(0);
    if (v(0) < 0) v = -v;
    EXPECT_NEAR(a.lambda_min, eig.eigenvalues()(0), 1e-10);
    for (std::size_t i = 0; i + 1 < l.n(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(a.alphas[i], v(k + 1) / v(k), 1e-6 * a.alphas[i]);
    }
    // First row of the forward recursion.
    EXPECT_NEAR(a.alphas[0], (l.diag(0) - a.lambda_min) / l.sub_weights()[0], 1e-6 * a.alphas[0]);
  }
}

TEST(Gdpa, AlignmentProperty) {
  pt::Rng rng(55);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = pt::uniform_index(rng, 1, 200);
    const double loop_hi = std::pow(10.0, pt::uniform(rng, -3, 1));
    const auto l = n == 1 ? PathLaplacian({}, {pt::uniform(rng, 0.1, 1.0)})
                          : pt::random_path(rng, n, 1e-3, 1.0, loop_hi);
    const auto a = pgsum::gdpa_align(l);
    ASSERT_EQ(a.alphas.size(), n - 1);
    for (double alpha : a.alphas) ASSERT_GT(alpha, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double end = l.diag(i);
      if (i > 0) end -= l.sub_weights()[i - 1] / a.alphas[i - 1];
      if (i + 1 < n) end -= a.alphas[i] * l.sub_weights()[i];
      ASSERT_NEAR(end, a.lambda_min, 1e-6);
    }
  }
}

TEST(Gdpa, Preconditions) {
  EXPECT_THROW(pgsum::gdpa_align(four_node_path()), std::invalid_argument);
  EXPECT_THROW(pgsum::gdpa_align(PathLaplacian({1.0, 1.0}, {0.5, -0.1, 0.0})),
               pgsum::AlignmentError);
  const auto ablation = pgsum::unfold(pgsum::EpgGraph(3, {{0.5, 0.5}, {0.5}}), 2.42);
  EXPECT_THROW(pgsum::build_operator(ablation, 1.0), pgsum::AlignmentError);
}

TEST(SelectOne, FourNodeSampleScalar) {
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  EXPECT_DOUBLE_EQ(pgsum::max_sample_scalar(op, 2, 0.1), 1.9);

  // Sampling node 3 with S = diag(1, 1, 1.9, 1) puts disc 3's left-end at T.
  Eigen::MatrixXd b = pgsum::dense_sampled_operator(four_node_path(), 1.0, std::vector<std::uint8_t>{0, 0, 1, 0});
  Eigen::VectorXd s(4);
  s << 1, 1, 1.9, 1;
  const Eigen::MatrixXd sbs = s.asDiagonal() * b * s.cwiseInverse().asDiagonal();
  EXPECT_NEAR(pgsum::disc_left_ends(sbs)(2), 0.1, 1e-12);
}

TEST(SelectOne, FourNodeAgainstReference) {
  const auto l = four_node_path();
  const auto op = pgsum::build_operator(l, 1.0);
  const auto sel = pgsum::select_one(op, 0, 0.1);
  const auto ref = pt::reference_select(l, 1.0, 0, 0.1);
  ASSERT_TRUE(sel.feasible);
  EXPECT_EQ(sel.sample, ref.sample);
  EXPECT_EQ(sel.end, ref.end);
  EXPECT_EQ(sel.scalars.front(), 1.0);
  const pgsum::Partition p{sel.start, sel.end, sel.sample};
  std::vector<double> s(4, 1.0);
  std::copy(sel.scalars.begin(), sel.scalars.end(), s.begin());
  const auto ends = pgsum::disc_left_ends(scaled_block(op, p, s));
  for (Eigen::Index i = 0; i < ends.size(); ++i) EXPECT_GE(ends(i), 0.1 - 1e-12);
}

TEST(SelectOne, LastNodeAlone) {
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  const auto sel = pgsum::select_one(op, 3, 0.1);
  ASSERT_TRUE(sel.feasible);
  EXPECT_EQ(sel.sample, 3u);
  EXPECT_EQ(sel.end, 3u);
  EXPECT_EQ(sel.scalars, std::vector<double>{1.0});
  EXPECT_THROW(pgsum::select_one(op, 4, 0.1), std::out_of_range);
}

TEST(SelectOne, InfeasibleAboveReach) {
  // T above 1 + center cannot be reached even by a lone sample.
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  EXPECT_FALSE(pgsum::select_one(op, 0, 1.6).feasible);
}

TEST(SelectOne, PerronEquivalenceOnTinyBlocks) {
  // The reference treats feasibility as lambda_min(block) >= T; confirm that
  // against a direct search over diagonal scalings.
  const double weights[] = {0.25, 0.5, 1.0};
  for (double w1 : weights) {
    for (double w2 : weights) {
      const PathLaplacian l({w1, w2}, {0, 0, 0});
      for (std::size_t k = 0; k < 3; ++k) {
        const Eigen::MatrixXd b = pt::block_operator(l, 1.0, 0, 2, k);
        const double lam = pgsum::min_eigenvalue(b);
        EXPECT_TRUE(pt::grid_scaling_feasible(b, lam - 0.03, 200, 2.0));
        EXPECT_FALSE(pt::grid_scaling_feasible(b, lam + 0.03, 200, 2.0));
      }
    }
  }
}

TEST(SelectOne, MatchesReferenceProperty) {
  pt::Rng rng(56);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const bool loops = trial % 3 == 2;
    const std::size_t n = pt::uniform_index(rng, 1, 25);
    const auto l = random_instance(rng, n, loops);
    const double mu = pt::uniform(rng, 0.05, 2.0);
    const auto op = pgsum::build_operator(l, mu);
    const double t = op.base + pt::uniform(rng, 1e-3, 1.0);
    const std::size_t start = pt::uniform_index(rng, 0, n - 1);
    const auto ref = pt::reference_select(l, mu, start, t, 1e-7);
    if (ref.ambiguous) continue;
    const auto sel = pgsum::select_one(op, start, t);
    ASSERT_EQ(sel.feasible, ref.feasible) << trial;
    if (!ref.feasible) continue;
    ++compared;
    ASSERT_EQ(sel.sample, ref.sample) << trial;
    ASSERT_EQ(sel.end, ref.end) << trial;
    ASSERT_EQ(sel.scalars.size(), sel.end - start + 1);
    EXPECT_EQ(sel.scalars.front(), 1.0);
    for (double s : sel.scalars) ASSERT_GT(s, 0.0);
  }
  EXPECT_GT(compared, 150);
}

TEST(SampleWithThreshold, FourNodePath) {
  const auto l = four_node_path();
  const auto op = pgsum::build_operator(l, 1.0);
  const auto tiny = pgsum::sample_with_threshold(op, 1e-9, 4);
  EXPECT_TRUE(tiny.exhausted);
  EXPECT_EQ(tiny.samples.size(), 1u);

  const auto r = pgsum::sample_with_threshold(op, 0.1, 4);
  ASSERT_TRUE(r.exhausted);
  EXPECT_GE(pgsum::min_eigenvalue(pgsum::dense_sampled_operator(l, 1.0, r.h)), 0.1);

  const auto none = pgsum::sample_with_threshold(op, 0.1, 0);
  EXPECT_FALSE(none.exhausted);
  EXPECT_EQ(std::accumulate(none.h.begin(), none.h.end(), 0), 0);
  EXPECT_THROW(pgsum::sample_with_threshold(op, 0.0, 4), std::invalid_argument);
}

TEST(SampleWithThreshold, StructureAndSoundnessProperty) {
  pt::Rng rng(57);
  int exhausted = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const bool loops = trial % 2 == 1;
    const std::size_t n = pt::uniform_index(rng, 2, 200);
    const auto l = random_instance(rng, n, loops);
    const double mu = pt::uniform(rng, 0.02, 1.0);
    const auto op = pgsum::build_operator(l, mu);
    const double t = op.base + pt::uniform(rng, 1e-4, 0.6);
    const auto r = pgsum::sample_with_threshold(op, t, n);

    ASSERT_EQ(static_cast<std::size_t>(std::accumulate(r.h.begin(), r.h.end(), 0)), r.samples.size());
    ASSERT_EQ(r.partitions.size(), r.samples.size());
    std::size_t next = 0;
    for (const auto& p : r.partitions) {
      ASSERT_EQ(p.start, next);
      ASSERT_LE(p.start, p.sample);
      ASSERT_LE(p.sample, p.end);
      ASSERT_EQ(r.scalars[p.start], 1.0);
      next = p.end + 1;
      // Explicit S B S^-1 on the partition.
      const auto ends = pgsum::disc_left_ends(scaled_block(op, p, r.scalars));
      for (Eigen::Index i = 0; i < ends.size(); ++i) ASSERT_GE(ends(i), t - 1e-8);
    }
    for (double s : r.scalars) ASSERT_GT(s, 0.0);
    if (!r.exhausted) continue;
    ++exhausted;
    ASSERT_EQ(next, n);
    const double lam = pgsum::min_eigenvalue(pgsum::dense_sampled_operator(l, mu, r.h));
    ASSERT_GE(lam, t - 1e-8) << "trial " << trial;
  }
  EXPECT_GT(exhausted, 100);
}

TEST(SamplerTheory, ReducedGraphLowersLambda) {
  pt::Rng rng(58);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = pt::uniform_index(rng, 2, 40);
    const auto l = random_instance(rng, n, trial % 2 == 1);
    std::vector<std::uint8_t> h(n);
    for (auto& x : h) x = pt::uniform(rng, 0, 1) < 0.3;
    h[pt::uniform_index(rng, 0, n - 1)] = 1;
    // Deleting an edge keeps the self-loops: drop it from both the
    // off-diagonal and the incident degrees.
    std::vector<double> w(l.sub_weights().begin(), l.sub_weights().end());
    std::vector<double> u(l.self_loops().begin(), l.self_loops().end());
    Eigen::MatrixXd reduced = pgsum::dense_sampled_operator(l, 1.0, h);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (pt::uniform(rng, 0, 1) < 0.3) {
        const auto k = static_cast<Eigen::Index>(i);
        reduced(k, k + 1) = reduced(k + 1, k) = 0.0;
        reduced(k, k) -= w[i];
        reduced(k + 1, k + 1) -= w[i];
      }
    }
    const double full = pgsum::min_eigenvalue(pgsum::dense_sampled_operator(l, 1.0, h));
    ASSERT_LE(pgsum::min_eigenvalue(reduced), full + 1e-9);
    ASSERT_GT(full, 0.0);
  }
}

TEST(SampleBudget, FourNodeMatchesGridScan) {
  const auto l = four_node_path();
  const auto op = pgsum::build_operator(l, 1.0);
  pgsum::SearchTrace trace;
  const auto r = pgsum::sample_budget(op, 2, 1e-9, &trace);
  ASSERT_TRUE(r.exhausted);
  EXPECT_LE(r.samples.size(), 2u);
  EXPECT_TRUE(trace.monotone());
  const double grid = pt::grid_scan_threshold(
      [&](double t) { return pgsum::sample_with_threshold(op, t, 2).exhausted; }, 0.0, 1e-4);
  EXPECT_GE(r.threshold, grid - 1e-9);
  EXPECT_LT(r.threshold, grid + 1e-4);
  const double ref_grid = pt::grid_scan_threshold(
      [&](double t) { return pt::reference_exhausted(l, 1.0, t, 2); }, 0.0, 1e-3);
  EXPECT_NEAR(r.threshold, ref_grid, 1e-3);
}

TEST(SampleBudget, BudgetOneAndFullBudget) {
  pt::Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = pt::uniform_index(rng, 3, 30);
    const auto l = random_instance(rng, n, trial % 2 == 1);
    const auto op = pgsum::build_operator(l, 0.3);
    const auto one = pgsum::sample_budget(op, 1, 1e-9);
    ASSERT_TRUE(one.exhausted);
    EXPECT_EQ(one.samples.size(), 1u);
    const double grid = pt::grid_scan_threshold(
        [&](double t) { return pgsum::sample_with_threshold(op, t, 1).exhausted; }, op.base, 1e-4);
    EXPECT_NEAR(one.threshold, grid, 1e-4 + 1e-9);

    const auto all = pgsum::sample_budget(op, n, 1e-9);
    ASSERT_TRUE(all.exhausted);
    EXPECT_LE(all.samples.size(), n);
    EXPECT_GT(all.threshold, one.threshold);
  }
}

TEST(SampleBudget, TraceIsMonotoneAndPrecise) {
  pt::Rng rng(60);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = pt::uniform_index(rng, 5, 150);
    const auto l = random_instance(rng, n, trial % 2 == 1);
    const auto op = pgsum::build_operator(l, pt::uniform(rng, 0.02, 1.0));
    pgsum::SearchTrace trace;
    const std::size_t budget = pt::uniform_index(rng, 1, n);
    const auto r = pgsum::sample_budget(op, budget, 1e-9, &trace);
    ASSERT_TRUE(trace.monotone());
    ASSERT_TRUE(r.exhausted);
    ASSERT_LE(r.samples.size(), budget);
    // Sample counts never fall as T rises along exhausted steps.
    std::vector<pgsum::SearchStep> done;
    for (const auto& s : trace.steps) {
      if (s.exhausted) done.push_back(s);
    }
    std::sort(done.begin(), done.end(),
              [](const auto& a, const auto& b) { return a.threshold < b.threshold; });
    for (std::size_t i = 1; i < done.size(); ++i) ASSERT_LE(done[i - 1].samples, done[i].samples);
    // Closest failing threshold sits within eps above the answer.
    double fail = op.base + 1.0;
    for (const auto& s : trace.steps) {
      if (!s.exhausted) fail = std::min(fail, s.threshold);
    }
    ASSERT_LE(fail - r.threshold, 1e-9 + 1e-15);
  }
}

TEST(SampleBudget, TraceJsonLines) {
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  pgsum::SearchTrace trace;
  pgsum::sample_budget(op, 2, 1e-3, &trace);
  std::ostringstream out;
  trace.write_jsonl(out);
  const std::string text = out.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), trace.steps.size());
  EXPECT_EQ(text.rfind("{\"threshold\":0.5,", 0), 0u);
}

TEST(SampleBudget, Errors) {
  const auto op = pgsum::build_operator(four_node_path(), 1.0);
  EXPECT_THROW(pgsum::sample_budget(op, 0, 1e-9), std::invalid_argument);
  EXPECT_THROW(pgsum::sample_budget(op, 5, 1e-9), std::invalid_argument);
  EXPECT_THROW(pgsum::sample_budget(op, 2, 0.0), std::invalid_argument);
}
