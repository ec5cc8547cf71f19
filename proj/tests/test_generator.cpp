#include <gtest/gtest.h>

#include "cactus_center/io.hpp"
#include "support.hpp"

using namespace cactus_center;
using namespace cactus_center::testing;

TEST(Generator, SameSeedSameBytes) {
  GenParams p;
  p.vertices = 40;
  p.cycles = 5;
  p.seed = 1234;
  EXPECT_EQ(serialize_instance(generate_instance(p)), serialize_instance(generate_instance(p)));
  GenParams q = p;
  q.seed = 1235;
  EXPECT_NE(serialize_instance(generate_instance(p)), serialize_instance(generate_instance(q)));
}

TEST(Generator, NoCyclesGivesATree) {
  GenParams p;
  p.vertices = 25;
  p.cycles = 0;
  const Instance inst = generate_instance(p);
  EXPECT_EQ(inst.graph.vertex_count(), 25);
  EXPECT_EQ(inst.graph.edge_count(), 24);
  EXPECT_EQ(inst.graph.cycle_count(), 0);
}

TEST(Generator, PointShape) {
  GenParams p;
  p.n = 3;
  p.m = 4;
  p.constant_min = 1.0;
  p.constant_max = 2.0;
  const Instance inst = generate_instance(p);
  ASSERT_EQ(inst.points.size(), 3u);
  for (const auto& up : inst.points) {
    ASSERT_EQ(up.locations.size(), 4u);
    double total = 0.0;
    for (const auto& l : up.locations) {
      EXPECT_GT(l.prob, 0.0);
      total += l.prob;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GE(up.weight, p.weight_min);
    EXPECT_LE(up.weight, p.weight_max);
    EXPECT_GE(up.constant, 1.0);
    EXPECT_LE(up.constant, 2.0);
  }
}

TEST(Generator, InfeasibleParameters) {
  auto code_of = [](const GenParams& p) {
    try {
      generate_instance(p);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InternalInconsistency;
  };
  GenParams p;
  p.vertices = 5;
  p.cycles = 3;
  EXPECT_EQ(code_of(p), Errc::InfeasibleParams);
  p = {};
  p.vertices = 0;
  EXPECT_EQ(code_of(p), Errc::InfeasibleParams);
  p = {};
  p.cycle_max = 2;
  EXPECT_EQ(code_of(p), Errc::InfeasibleParams);
  p = {};
  p.m = 0;
  EXPECT_EQ(code_of(p), Errc::InfeasibleParams);
  p = {};
  p.length_min = 0.0;
  EXPECT_EQ(code_of(p), Errc::InfeasibleParams);
}

TEST(GeneratorProperties, AlwaysValid) {
  Rng pick(99);
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    GenParams p;
    p.vertices = pick.between(1, 80);
    p.cycle_min = pick.between(2, 5);
    p.cycle_max = p.cycle_min + pick.between(0, 4);
    p.cycles = p.vertices > 1 ? pick.between(0, (p.vertices - 1) / (p.cycle_min - 1)) : 0;
    p.n = pick.between(1, 6);
    p.m = pick.between(1, 6);
    p.interior_fraction = pick.uniform();
    p.seed = seed;
    const Instance inst = generate_instance(p);
    ASSERT_TRUE(validate_instance(inst).valid) << "seed " << seed;
    ASSERT_EQ(inst.graph.vertex_count(), p.vertices) << "seed " << seed;
    ASSERT_EQ(inst.graph.cycle_count(), p.cycles) << "seed " << seed;
  }
}
