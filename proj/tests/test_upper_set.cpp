#include <doctest.h>

#include <set>
#include <vector>

#include "rsd/generators.hpp"
#include "rsd/labeling.hpp"
#include "rsd/upper_set.hpp"

using namespace rsd;

namespace {

// r=0 with level-1 nodes 1,2,6,7; N(1)={3,4}, N(2)={4,5}.
Graph two_parents() { return Graph(8, {{0, 1}, {0, 2}, {0, 6}, {0, 7}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}); }

std::vector<Graph> small_corpus() {
  std::vector<Graph> gs{gen::complete2(), gen::path(3), gen::path(9), gen::star(6), gen::diamond(), gen::cycle(7),
                        two_parents()};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    gs.push_back(gen::random_tree(10 + static_cast<NodeId>(seed) * 3, 2 + static_cast<int>(seed % 7), seed));
    gs.push_back(gen::random_graph(10 + static_cast<NodeId>(seed) * 3, 2 + static_cast<int>(seed % 9), seed,
                                   static_cast<int>(seed)));
  }
  return gs;
}

}  // namespace

TEST_CASE("star: the root alone covers all leaves") {
  auto g = gen::star(5);
  auto d = decompose(g);
  auto plan = compute_upper_sets(g, d);
  REQUIRE(plan.levels.size() == 1);
  REQUIRE(plan.levels[0].members.size() == 1);
  CHECK(plan.levels[0].members[0].node == 0);
  CHECK(plan.levels[0].members[0].private_children == std::vector<NodeId>{1, 2, 3, 4, 5});
}

TEST_CASE("diamond plan and weights") {
  auto g = gen::diamond();
  auto d = decompose(g);
  auto plan = compute_upper_sets(g, d);
  const auto& us1 = plan.levels[1].members;
  REQUIRE(us1.size() == 1);
  CHECK(us1[0].node == 1);
  CHECK(us1[0].private_children == std::vector<NodeId>{3});
  CHECK(plan.child_id[3] == 1);
  CHECK(plan.child_id[1] == 1);
  CHECK(plan.child_id[2] == 2);
  auto w = compute_weights(g, d, plan);
  CHECK(w == WeightMap{4, 2, 1, 1});
}

TEST_CASE("shared child: second member admitted by rule 1 and inherits the id") {
  auto g = two_parents();
  auto d = decompose(g);
  auto plan = compute_upper_sets(g, d);
  const auto& us1 = plan.levels[1].members;
  REQUIRE(us1.size() == 2);
  CHECK(us1[0].node == 1);
  CHECK(us1[0].private_children == std::vector<NodeId>{3, 4});
  CHECK(us1[1].node == 2);
  CHECK(us1[1].private_children == std::vector<NodeId>{5});
  CHECK(us1[1].admission.rule == Admission::Rule::SharedTaggedChild);
  CHECK(us1[1].admission.via_child == 4);
  CHECK(plan.child_id[4] == 2);
  CHECK(plan.child_id[5] == 2);
  CHECK(verify_plan(g, d, plan).empty());
}

TEST_CASE("path weights") {
  auto g = gen::path(3);
  auto d = decompose(g);
  auto w = compute_weights(g, d, compute_upper_sets(g, d));
  CHECK(w == WeightMap{1, 3, 1});
}

TEST_CASE("plans satisfy the definitions on a corpus") {
  for (const auto& g : small_corpus()) {
    auto d = decompose(g);
    auto plan = compute_upper_sets(g, d);
    CHECK(verify_plan(g, d, plan).empty());
    auto w = compute_weights(g, d, plan);
    CHECK(verify_weights(g, d, plan, w).empty());
    CHECK(w[d.root] == g.size());
    for (NodeId v : d.levels[d.height]) CHECK(w[v] == 1);
    // Level conservation counted directly.
    for (int l = 0; l <= d.height; ++l) {
      std::int64_t sum = 0, deeper = 0;
      for (NodeId v : d.levels[l]) sum += w[v];
      for (NodeId v = 0; v < g.size(); ++v) deeper += d.level[v] >= l;
      CHECK(sum == deeper);
    }
  }
}

TEST_CASE("redrawn variants still satisfy the definitions") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = gen::random_graph(60, 6, seed, 25);
    auto d = decompose(g);
    std::vector<std::uint64_t> variants(static_cast<std::size_t>(d.height), seed);
    auto plan = compute_upper_sets(g, d, variants);
    CHECK(verify_plan(g, d, plan).empty());
    CHECK(verify_weights(g, d, plan, compute_weights(g, d, plan)).empty());
  }
}

TEST_CASE("verify_plan notices broken plans") {
  auto g = two_parents();
  auto d = decompose(g);
  auto plan = compute_upper_sets(g, d);
  auto broken = plan;
  broken.levels[1].members[1].private_children.push_back(4);
  CHECK_FALSE(verify_plan(g, d, broken).empty());
  broken = plan;
  broken.levels[1].members.pop_back();
  CHECK_FALSE(verify_plan(g, d, broken).empty());
  broken = plan;
  broken.levels[1].members[1].tagged_ids[0] = 1;
  broken.child_id[5] = 1;
  CHECK_FALSE(verify_plan(g, d, broken).empty());
}

TEST_CASE("oracle search settles every level") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    auto g = gen::random_graph(20 + static_cast<NodeId>(seed), 3 + static_cast<int>(seed % 8), seed, 15);
    auto o = build_oracle(g);
    CHECK(verify_plan(g, o.decomposition, o.plan).empty());
    CHECK(o.weights[o.decomposition.root] == g.size());
  }
}
