#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsd/generators.hpp"
#include "rsd/history_lab.hpp"

using namespace rsd;
using namespace rsd::lab;

namespace {

bool string_rule(const std::string& rendered) { return std::hash<std::string>{}(rendered) % 3 == 0; }

// Histories materialized as text, round by round, straight from the rule.
std::vector<std::vector<std::string>> text_histories(const Graph& g, const std::vector<std::string>& labels,
                                                     int rounds) {
  std::vector<std::vector<std::string>> h(1);
  for (const auto& l : labels) h[0].push_back("'" + l + "'");
  for (int t = 0; t < rounds; ++t) {
    const auto& cur = h.back();
    std::vector<bool> tx;
    for (const auto& s : cur) tx.push_back(string_rule(s));
    std::vector<std::string> next;
    for (NodeId v = 0; v < g.size(); ++v) {
      if (tx[v]) {
        next.push_back(cur[v] + ",L");
        continue;
      }
      int count = 0;
      NodeId from = -1;
      for (NodeId u : g.neighbors(v))
        if (tx[u]) ++count, from = u;
      if (count == 0) next.push_back(cur[v] + ",L");
      else if (count == 1) next.push_back(cur[v] + ",[" + cur[from] + "]");
      else next.push_back(cur[v] + ",*");
    }
    h.push_back(next);
  }
  return h;
}

BigInt reference_bound(int beta) {
  const BigInt z = BigInt(1) << (beta + 1);
  BigInt p = 1;
  for (BigInt k = 0; k < 2 * z; ++k) p *= 3;
  return z * z * p;
}

std::vector<std::string> labels_for(const FamilyTree& t, const std::string& r, const std::string& a,
                                    const std::vector<std::string>& R, const std::vector<std::string>& A) {
  std::vector<std::string> l(static_cast<std::size_t>(t.graph.size()));
  l[t.r] = r;
  l[t.a] = a;
  for (std::size_t k = 0; k < t.R.size(); ++k) l[t.R[k]] = R[k];
  for (std::size_t k = 0; k < t.A.size(); ++k) l[t.A[k]] = A[k];
  return l;
}

}  // namespace

TEST_CASE("tree family") {
  const auto f4 = build_family(4);
  REQUIRE(f4.size() == 2);
  CHECK(f4[0].i == 2);
  CHECK(f4[0].graph.size() == 7);
  CHECK(f4[1].graph.size() == 8);
  const auto f2 = build_family(2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].i == 1);
  CHECK(f2[0].graph == gen::family_tree(2, 1));
  CHECK(f2[0].graph.size() == 4);
  CHECK(f2[0].graph.edge_count() == 3);
  CHECK(f2[0].graph.max_degree() == 2);
  CHECK_THROWS_AS(build_family(1), std::invalid_argument);
  for (int delta = 2; delta <= 20; ++delta) {
    const auto f = build_family(delta);
    CHECK(static_cast<int>(f.size()) == delta - 1 - delta / 2 + 1);
    for (const auto& t : f) {
      CHECK(t.graph.size() == delta + t.i + 1);
      CHECK(t.graph.max_degree() == delta);
      CHECK(static_cast<int>(t.graph.neighbors(t.r).size()) == delta);
      CHECK(static_cast<int>(t.graph.neighbors(t.a).size()) == t.i + 1);
      CHECK(static_cast<int>(t.R.size()) == delta - 1);
      CHECK(static_cast<int>(t.A.size()) == t.i);
    }
  }
}

TEST_CASE("all-listen histories") {
  const auto t = build_family(4)[1];
  std::vector<std::string> labels(8, "1");
  HistoryStore store;
  const auto h = compute_histories(t.graph, labels, all_listen(), 3, store);
  REQUIRE(h.size() == 4);
  for (NodeId v = 0; v < 8; ++v) CHECK(store.render(h[3][v]) == "'1',L,L,L");
}

TEST_CASE("zero rounds") {
  const auto g = gen::path(3);
  HistoryStore store;
  const auto h = compute_histories(g, {"0", "", "11"}, digest_automaton(3), 0, store);
  REQUIRE(h.size() == 1);
  CHECK(store.render(h[0][0]) == "'0'");
  CHECK(store.render(h[0][1]) == "''");
  CHECK(store.at(h[0][2]).event == Event::Leaf);
}

TEST_CASE("K1,2 with a transmitting center") {
  const auto g = gen::star(2);
  Automaton center = [](const HistoryStore& s, HistoryId id) {
    while (s.at(id).event != Event::Leaf) id = s.at(id).previous;
    return s.at(id).label == "1";
  };
  HistoryStore store;
  const auto h = compute_histories(g, {"1", "0", "0"}, center, 1, store);
  CHECK(store.render(h[1][1]) == "'0',['1']");
  CHECK(store.render(h[1][2]) == "'0',['1']");
  CHECK(store.render(h[1][0]) == "'1',L");
  CHECK(h[1][1] == h[1][2]);
}

TEST_CASE("histories match a text simulation") {
  Automaton rule = [](const HistoryStore& s, HistoryId id) { return string_rule(s.render(id)); };
  for (int delta = 3; delta <= 6; ++delta)
    for (const auto& t : build_family(delta)) {
      gen::Rng rng(static_cast<std::uint64_t>(delta * 100 + t.i));
      std::vector<std::string> labels;
      for (NodeId v = 0; v < t.graph.size(); ++v) labels.push_back(std::string(gen::uniform_below(rng, 2) + 1, '0'));
      HistoryStore store;
      const int rounds = 5;
      const auto h = compute_histories(t.graph, labels, rule, rounds, store);
      const auto ref = text_histories(t.graph, labels, rounds);
      for (int r = 0; r <= rounds; ++r)
        for (NodeId v = 0; v < t.graph.size(); ++v) {
          CHECK(store.render(h[r][v]) == ref[r][v]);
          CHECK(store.at(h[r][v]).depth == static_cast<std::uint32_t>(r));
        }
    }
}

TEST_CASE("interning agrees with structural equality") {
  const auto fam = build_family(6);
  HistoryStore a, b;
  std::vector<std::string> labels(static_cast<std::size_t>(fam[0].graph.size()), "0");
  labels[0] = "1";
  const auto ha = compute_histories(fam[0].graph, labels, digest_automaton(11), 30, a);
  const auto hb = compute_histories(fam[0].graph, labels, digest_automaton(11), 30, b);
  for (std::size_t t = 0; t < ha.size(); ++t)
    for (std::size_t v = 0; v < ha[t].size(); ++v) {
      CHECK(a.structurally_equal(ha[t][v], b, hb[t][v]));
      CHECK(a.render(ha[t][v]) == b.render(hb[t][v]));
      for (std::size_t u = 0; u < ha[t].size(); ++u)
        CHECK((ha[t][v] == ha[t][u]) == a.structurally_equal(ha[t][v], a, ha[t][u]));
    }
}

TEST_CASE("label index and universe") {
  CHECK(label_index("", 2) == 0);
  CHECK(label_index("0", 2) == 1);
  CHECK(label_index("1", 2) == 2);
  CHECK(label_index("00", 2) == 3);
  CHECK(label_index("11", 2) == 6);
  CHECK(label_universe(0) == 2);
  CHECK(label_universe(3) == 16);
  CHECK_THROWS(label_index("000", 2));
  CHECK_THROWS(label_index("2", 2));
}

TEST_CASE("patterns") {
  const auto t = build_family(4)[1];  // |R| = 3, |A| = 3
  const int beta = 1;
  SUBCASE("saturation") {
    const auto p = pattern_of(t, std::vector<std::string>(8, "0"), beta);
    CHECK(p.label_r == "0");
    CHECK(p.label_a == "0");
    CHECK(p.occupancy_r == std::vector<std::uint8_t>{0, 2, 0, 0});
    CHECK(p.occupancy_a == std::vector<std::uint8_t>{0, 2, 0, 0});
  }
  SUBCASE("single occurrence") {
    const auto p = pattern_of(t, labels_for(t, "", "", {"1", "0", "0"}, {"", "", ""}), beta);
    CHECK(p.occupancy_r == std::vector<std::uint8_t>{0, 2, 1, 0});
    CHECK(p.occupancy_a == std::vector<std::uint8_t>{2, 0, 0, 0});
  }
  SUBCASE("same classes, different trees") {
    const auto t2 = build_family(4)[0];
    const auto p1 = pattern_of(t, labels_for(t, "1", "", {"1", "0", "0"}, {"0", "0", "0"}), beta);
    const auto p2 = pattern_of(t2, labels_for(t2, "1", "", {"0", "1", "0"}, {"0", "0"}), beta);
    CHECK(p1 == p2);
  }
}

TEST_CASE("uniform labeling: roots of T2 and T3 agree") {
  const auto fam = build_family(4);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    HistoryStore store;
    std::vector<HistoryTable> tables;
    for (const auto& t : fam) {
      std::vector<std::string> labels(static_cast<std::size_t>(t.graph.size()), "1");
      tables.push_back(compute_histories(t.graph, labels, digest_automaton(seed), 200, store));
    }
    for (int r = 0; r <= 200; ++r) CHECK(tables[0][r][fam[0].r] == tables[1][r][fam[1].r]);
  }
}

TEST_CASE("Delta 6 with equal occupancies and different i") {
  const auto fam = build_family(6);  // i = 3, 4, 5
  const std::vector<std::string> R{"0", "0", "1", "1", "1"};
  const auto l3 = labels_for(fam[0], "", "", R, {"0", "0", "0"});
  const auto l4 = labels_for(fam[1], "", "", R, {"0", "0", "0", "0"});
  CHECK(pattern_of(fam[0], l3, 1) == pattern_of(fam[1], l4, 1));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    HistoryStore store;
    const auto h3 = compute_histories(fam[0].graph, l3, digest_automaton(seed), 200, store);
    const auto h4 = compute_histories(fam[1].graph, l4, digest_automaton(seed), 200, store);
    for (int r = 0; r <= 200; ++r) CHECK(h3[r][fam[0].r] == h4[r][fam[1].r]);
  }
}

TEST_CASE("distinct R labels differ from the start") {
  const auto t = build_family(4)[0];
  HistoryStore store;
  const auto h = compute_histories(t.graph, labels_for(t, "", "", {"0", "1", "1"}, {"", ""}), digest_automaton(1),
                                   0, store);
  CHECK(h[0][t.R[0]] != h[0][t.R[1]]);
  CHECK(h[0][t.R[1]] == h[0][t.R[2]]);
}

TEST_CASE("lemma checks find no violations") {
  for (int delta : {4, 6}) {
    LemmaConfig cfg;
    cfg.delta = delta;
    cfg.automata = 10;
    cfg.labelings = 8;
    cfg.rounds = 60;
    const auto rep = check_lemmas(cfg);
    CHECK(rep.violations.empty());
    CHECK(rep.trials == 80);
    CHECK(rep.leaf_pairs > 0);
    CHECK(rep.equal_pattern_pairs > 0);
    CHECK(rep.root_histories_per_class_max == 1);
    const auto j = nlohmann::json::parse(lemma_report_json(rep));
    CHECK(j["delta"] == delta);
    CHECK(j["rounds"] == 60);
    CHECK(j["violations"].empty());
    CHECK(lemma_report_json(check_lemmas(cfg)) == lemma_report_json(rep));
  }
}

TEST_CASE("sampled labelings stay in the universe") {
  const auto fam = build_family(8);
  const auto ls = sample_labelings(fam, 2, 9);
  REQUIRE(ls.size() == fam.size());
  for (std::size_t k = 0; k < fam.size(); ++k) {
    CHECK(ls[k].size() == static_cast<std::size_t>(fam[k].graph.size()));
    for (const auto& l : ls[k]) CHECK(l.size() <= 2);
  }
}

TEST_CASE("counting bound") {
  CHECK(pattern_bound(0) == 324);
  CHECK(pattern_bound(1) == 104976);
  for (int beta = 0; beta <= 8; ++beta) {
    CHECK(pattern_bound(beta) == reference_bound(beta));
    CHECK(pattern_bound_second_path(beta) == pattern_bound(beta));
  }
  for (int beta = 0; beta < 12; ++beta) CHECK(pattern_bound(beta) < pattern_bound(beta + 1));
  CHECK_THROWS_AS(pattern_bound(21), std::domain_error);
}

TEST_CASE("crossover") {
  CHECK(crossover_holds(0, 1000));
  CHECK_FALSE(crossover_holds(0, 648));
  CHECK(crossover_holds(0, 649));
  CHECK(crossover_holds(1, BigInt(209953)));
  CHECK_FALSE(crossover_holds(1, BigInt(209952)));
  CHECK_FALSE(crossover_holds(40, BigInt(1) << 200));
}
