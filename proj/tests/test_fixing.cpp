#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "orbitopal/face_io.hpp"
#include "orbitopal/fixing.hpp"

using namespace orbitopal;

TEST(Profile, WitnessFaceRecursion) {
  OrbitopeShape s(5, 4);
  auto prof = compute_profile(make_face(s, {{3, 2}, {5, 1}, {5, 2}, {5, 3}}), s);
  EXPECT_EQ(prof.alpha_values, (std::vector<int>{1, 2, 3, 4, 4}));
  EXPECT_EQ(prof.gamma, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(prof.mu_values, (std::vector<int>{1, 1, 1, 1, 4}));
  EXPECT_TRUE(prof.feasible());
}

TEST(Profile, NoZeros) {
  OrbitopeShape s(4, 3);
  auto prof = compute_profile(CubeFace(s), s);
  EXPECT_EQ(prof.alpha_values, (std::vector<int>{1, 2, 3, 3}));
  EXPECT_EQ(prof.gamma, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(prof.mu_values, (std::vector<int>{1, 1, 1, 1}));
}

TEST(Profile, InfeasibleWitness) {
  OrbitopeShape s(3, 3);
  auto prof = compute_profile(make_face(s, {{2, 2}, {3, 1}, {3, 2}}), s);
  EXPECT_EQ(prof.alpha_values, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(prof.mu_values, (std::vector<int>{1, 1, 3}));
  EXPECT_FALSE(prof.feasible());
}

TEST(Profile, RejectsFacesThatAreNotReady) {
  OrbitopeShape s(3, 3);
  EXPECT_THROW(compute_profile(make_face(s, {}, {{2, 1}}), s), std::invalid_argument);
  EXPECT_THROW(orbitopal_fix(make_face(s, {{2, 1}, {2, 2}}), s), std::invalid_argument);
}

TEST(Fix, InfeasibleFace) {
  OrbitopeShape s(3, 3);
  CubeFace f = make_face(s, {{2, 2}, {3, 1}, {3, 2}});
  EXPECT_TRUE(orbitopal_fix(f, s).infeasible());
  EXPECT_TRUE(brute_force_fix(f, s).infeasible());
}

TEST(Fix, SingleVertexLeft) {
  OrbitopeShape s(3, 3);
  CubeFace f = make_face(s, {{2, 2}, {3, 2}, {3, 3}});
  auto r = orbitopal_fix(f, s);
  ASSERT_FALSE(r.infeasible());
  EXPECT_EQ(r.face->ones, make_face(s, {}, {{1, 1}, {2, 1}, {3, 1}}).ones);
  EXPECT_EQ(r.face->zeros, make_face(s, {{2, 2}, {3, 2}, {3, 3}}).zeros);
  EXPECT_EQ(derive_ones(r.face->zeros, s), r.face->ones);
  EXPECT_EQ(r, brute_force_fix(f, s));
}

TEST(Fix, EmptyFaceFixesNothing) {
  OrbitopeShape s(5, 4);
  auto r = orbitopal_fix(CubeFace(s), s);
  ASSERT_FALSE(r.infeasible());
  // (1,1) is fixed to one by every vertex; nothing else is constant.
  EXPECT_EQ(r.face->ones, make_face(s, {}, {{1, 1}}).ones);
  EXPECT_TRUE(r.face->zeros.none());
  EXPECT_EQ(r, brute_force_fix(CubeFace(s), s));
}

TEST(Fix, WitnessFaceFixesX22) {
  OrbitopeShape s(5, 4);
  CubeFace f = make_face(s, {{3, 2}, {5, 1}, {5, 2}, {5, 3}}, {{1, 1}, {5, 4}});
  auto r = orbitopal_fix(f, s);
  ASSERT_FALSE(r.infeasible());
  EXPECT_TRUE(r.face->ones.test(s.index(2, 2)));
  EXPECT_EQ(r, brute_force_fix(f, s));
}

TEST(Fix, BruteForceExamples) {
  OrbitopeShape s(2, 2);
  auto r = brute_force_fix(make_face(s, {{2, 1}}), s);
  ASSERT_FALSE(r.infeasible());
  EXPECT_EQ(r.face->ones, make_face(s, {}, {{1, 1}, {2, 2}}).ones);
  EXPECT_EQ(r.face->zeros, make_face(s, {{2, 1}}).zeros);

  OrbitopeShape t(3, 2);
  auto u = brute_force_fix(make_face(t, {{2, 2}}), t);
  ASSERT_FALSE(u.infeasible());
  EXPECT_TRUE(u.face->ones.test(t.index(2, 1)));
}

TEST(Fix, BruteForceMatchesDefinitionalOracle) {
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= p; ++q) {
      OrbitopeShape s(p, q);
      const auto verts = oracle::definitional_vertices(s);
      oracle::for_each_ready_face(s, [&](const CubeFace& f) {
        ASSERT_TRUE(oracle::same(brute_force_fix(f, s), oracle::fix_over(verts, f)));
      });
    }
}

TEST(Fix, ExhaustiveEquivalenceSmallShapes) {
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= p; ++q) {
      OrbitopeShape s(p, q);
      const auto verts = oracle::definitional_vertices(s);
      std::size_t faces = 0;
      oracle::for_each_ready_face(s, [&](const CubeFace& f) {
        ++faces;
        const auto r = orbitopal_fix(f, s);
        ASSERT_TRUE(oracle::same(r, oracle::fix_over(verts, f))) << format_face(s, f);
        ASSERT_EQ(r, detail::orbitopal_fix_unflagged(f, s));
        ASSERT_LE(r.stats.flag_transitions, s.cell_count());
        ASSERT_EQ(r.infeasible(), !compute_profile(f, s).feasible());
      });
      EXPECT_GT(faces, 0u);
    }
}

TEST(Fix, RandomEquivalenceMediumShapes) {
  std::mt19937_64 rng(7);
  for (auto [p, q] : {std::pair{5, 3}, std::pair{5, 4}, std::pair{6, 4}, std::pair{6, 3}}) {
    OrbitopeShape s(p, q);
    const auto verts = oracle::definitional_vertices(s);
    for (int t = 0; t < 2000; ++t) {
      const CubeFace f = (t % 2) ? oracle::random_ready_face(s, rng)
                                 : oracle::random_face_around(s, oracle::random_growth_string(p, q, rng), rng);
      ASSERT_TRUE(oracle::same(orbitopal_fix(f, s), oracle::fix_over(verts, f))) << format_face(s, f);
    }
  }
}

TEST(Fix, ResultProperties) {
  std::mt19937_64 rng(11);
  OrbitopeShape s(6, 4);
  for (int t = 0; t < 3000; ++t) {
    const CubeFace f = oracle::random_face_around(s, oracle::random_growth_string(6, 4, rng), rng);
    const auto r = orbitopal_fix(f, s);
    ASSERT_FALSE(r.infeasible());
    // extension, disjointness, readiness, idempotence
    ASSERT_TRUE(r.face->is_subface_of(f));
    ASSERT_FALSE(r.face->zeros.intersects(r.face->ones));
    ASSERT_EQ(check_face(*r.face, s), FaceCheck::ok);
    ASSERT_EQ(orbitopal_fix(*r.face, s), r);
    ASSERT_EQ(derive_ones(r.face->zeros, s), r.face->ones);
  }
}

TEST(Fix, Monotone) {
  std::mt19937_64 rng(13);
  OrbitopeShape s(6, 3);
  for (int t = 0; t < 2000; ++t) {
    const auto cols = oracle::random_growth_string(6, 3, rng);
    const CubeFace big = oracle::random_face_around(s, cols, rng, 0.15, 0.0);
    // A smaller face: more zeros, still around the same vertex.
    CubeFace small = big;
    const CubeFace extra = oracle::random_face_around(s, cols, rng, 0.3, 0.05);
    small.zeros |= extra.zeros;
    small.ones |= extra.ones;
    const auto rs = orbitopal_fix(small, s);
    const auto rb = orbitopal_fix(big, s);
    ASSERT_FALSE(rb.infeasible());
    if (!rs.infeasible()) {
      ASSERT_TRUE(rs.face->is_subface_of(*rb.face));
    }
  }
}

TEST(Fix, XStarLiesInFace) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3000; ++t) {
    OrbitopeShape s(7, 4);
    const CubeFace f = oracle::random_ready_face(s, rng);
    const auto prof = compute_profile(f, s);
    if (!prof.feasible()) {
      EXPECT_THROW(x_star(prof, s), std::domain_error);
      continue;
    }
    const VertexMatrix v = x_star(prof, s);
    ASSERT_TRUE(is_vertex(s, v));
    const BitSet b = to_bits(v, s);
    ASSERT_FALSE(b.intersects(f.zeros));
  }
}

TEST(Fix, XStarExamples) {
  OrbitopeShape s(4, 3);
  EXPECT_EQ(x_star(compute_profile(CubeFace(s), s), s).column, (std::vector<int>{1, 2, 3, 1}));
  OrbitopeShape t(3, 3);
  EXPECT_EQ(x_star(compute_profile(make_face(t, {{2, 2}, {3, 2}, {3, 3}}), t), t).column,
            (std::vector<int>{1, 1, 1}));
}

TEST(Fix, ColumnBoundHolds) {
  for (int p = 2; p <= 5; ++p)
    for (int q = 2; q <= std::min(p, 3); ++q) {
      OrbitopeShape s(p, q);
      oracle::for_each_ready_face(s, [&](const CubeFace& f) { ASSERT_TRUE(column_bound_check(s, f)); });
    }
  OrbitopeShape s(5, 4);
  const CubeFace f = make_face(s, {{3, 2}, {5, 1}, {5, 2}, {5, 3}}, {{5, 4}});
  EXPECT_TRUE(column_bound_check(s, f));
  EXPECT_EQ(compute_profile(f, s).alpha(5), 4);
}

TEST(Fix, DeriveOnes) {
  OrbitopeShape s(3, 3);
  EXPECT_TRUE(derive_ones(BitSet(s.cell_count()), s).test(s.index(1, 1)));
  EXPECT_EQ(derive_ones(BitSet(s.cell_count()), s).count(), 1u);
  EXPECT_EQ(derive_ones(make_face(s, {{3, 1}, {3, 3}}).zeros, s), make_face(s, {}, {{1, 1}, {3, 2}}).ones);
}

TEST(Fix, FlagTransitionsBoundedOnLargeFaces) {
  std::mt19937_64 rng(19);
  OrbitopeShape s(200, 50);
  for (int t = 0; t < 50; ++t) {
    const CubeFace f = oracle::random_face_around(s, oracle::random_growth_string(200, 50, rng), rng, 0.2, 0.01);
    const auto r = orbitopal_fix(f, s);
    ASSERT_FALSE(r.infeasible());
    ASSERT_LE(r.stats.flag_transitions, s.cell_count());
    ASSERT_EQ(r, detail::orbitopal_fix_unflagged(f, s));
  }
}
