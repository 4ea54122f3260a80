#include "rsd/history_lab.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "rsd/generators.hpp"

namespace rsd::lab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b + 0x632be59bd9b4e019ULL)); }

std::uint64_t string_digest(const std::string& s) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL ^ s.size();
  for (unsigned char c : s) h = mix(h, c);
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tree family
// ---------------------------------------------------------------------------

std::vector<FamilyTree> build_family(int delta) {
  if (delta < 2) throw std::invalid_argument("family needs delta >= 2");
  std::vector<FamilyTree> out;
  for (int i = delta / 2; i <= delta - 1; ++i) {
    FamilyTree t{delta, i, gen::family_tree(delta, i), 0, 1, {}, {}};
    for (NodeId v = 2; v <= delta; ++v) t.R.push_back(v);
    for (NodeId v = delta + 1; v <= delta + i; ++v) t.A.push_back(v);
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Histories
// ---------------------------------------------------------------------------

std::size_t HistoryStore::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = mix(static_cast<std::uint64_t>(k.event), k.previous);
  h = mix(h, k.heard);
  if (!k.label.empty()) h = mix(h, string_digest(k.label));
  return static_cast<std::size_t>(h);
}

HistoryId HistoryStore::leaf(const std::string& label) {
  Key key{Event::Leaf, 0, 0, label};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<HistoryId>(entries_.size());
  entries_.push_back(Entry{Event::Leaf, 0, 0, label, string_digest(label), 0});
  index_.emplace(std::move(key), id);
  return id;
}

HistoryId HistoryStore::extend(HistoryId previous, Event event, HistoryId heard) {
  if (event == Event::Leaf) throw std::invalid_argument("extend takes a round event");
  if (event != Event::Sub) heard = 0;
  Key key{event, previous, heard, {}};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  std::uint64_t d = mix(entries_[previous].digest, static_cast<std::uint64_t>(event));
  if (event == Event::Sub) d = mix(d, entries_[heard].digest);
  const auto id = static_cast<HistoryId>(entries_.size());
  entries_.push_back(Entry{event, previous, heard, {}, d, entries_[previous].depth + 1});
  index_.emplace(std::move(key), id);
  return id;
}

bool HistoryStore::structurally_equal(HistoryId x, const HistoryStore& other, HistoryId y) const {
  std::set<std::pair<HistoryId, HistoryId>> known;
  std::function<bool(HistoryId, HistoryId)> eq = [&](HistoryId a, HistoryId b) {
    if (known.count({a, b})) return true;
    const auto& ea = at(a);
    const auto& eb = other.at(b);
    if (ea.event != eb.event || ea.depth != eb.depth) return false;
    bool same = true;
    if (ea.event == Event::Leaf) {
      same = ea.label == eb.label;
    } else {
      same = eq(ea.previous, eb.previous);
      if (same && ea.event == Event::Sub) same = eq(ea.heard, eb.heard);
    }
    if (same) known.insert({a, b});
    return same;
  };
  return eq(x, y);
}

std::string HistoryStore::render(HistoryId id) const {
  const auto& e = at(id);
  switch (e.event) {
    case Event::Leaf: return "'" + e.label + "'";
    case Event::Lambda: return render(e.previous) + ",L";
    case Event::Star: return render(e.previous) + ",*";
    case Event::Sub: return render(e.previous) + ",[" + render(e.heard) + "]";
  }
  return {};
}

Automaton digest_automaton(std::uint64_t seed) {
  const std::uint64_t key = splitmix(seed ^ 0xa0761d6478bd642fULL);
  // Transmit probability in eighths, 1/8 .. 7/8.
  const std::uint64_t eighths = splitmix(key) % 7 + 1;
  return [key, eighths](const HistoryStore& store, HistoryId h) {
    return (splitmix(store.digest(h) ^ key) >> 61) < eighths;
  };
}

Automaton all_listen() {
  return [](const HistoryStore&, HistoryId) { return false; };
}

HistoryTable compute_histories(const Graph& g, const std::vector<std::string>& labels, const Automaton& automaton,
                               int rounds, HistoryStore& store) {
  const auto n = static_cast<std::size_t>(g.size());
  if (labels.size() != n) throw std::invalid_argument("one label per node required");
  HistoryTable table;
  table.reserve(static_cast<std::size_t>(rounds) + 1);
  std::vector<HistoryId> cur(n);
  for (std::size_t v = 0; v < n; ++v) cur[v] = store.leaf(labels[v]);
  table.push_back(cur);
  std::vector<char> tx(n);
  for (int t = 0; t < rounds; ++t) {
    for (std::size_t v = 0; v < n; ++v) tx[v] = automaton(store, cur[v]) ? 1 : 0;
    std::vector<HistoryId> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (tx[v]) {
        next[v] = store.extend(cur[v], Event::Lambda);
        continue;
      }
      int count = 0;
      HistoryId heard = 0;
      for (NodeId u : g.neighbors(static_cast<NodeId>(v))) {
        if (tx[u]) {
          ++count;
          heard = cur[u];
        }
      }
      if (count == 1)
        next[v] = store.extend(cur[v], Event::Sub, heard);
      else if (count > 1)
        next[v] = store.extend(cur[v], Event::Star);
      else
        next[v] = store.extend(cur[v], Event::Lambda);
    }
    cur = std::move(next);
    table.push_back(cur);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Patterns and counting
// ---------------------------------------------------------------------------

std::uint64_t label_universe(int beta) {
  if (beta < 0 || beta > 62) throw std::invalid_argument("beta out of range");
  return std::uint64_t{1} << (beta + 1);
}

std::size_t label_index(const std::string& label, int beta) {
  if (static_cast<int>(label.size()) > beta) throw std::invalid_argument("label longer than beta");
  std::uint64_t value = 0;
  for (char c : label) {
    if (c != '0' && c != '1') throw std::invalid_argument("labels are binary strings");
    value = value * 2 + static_cast<std::uint64_t>(c - '0');
  }
  // 2^len - 1 shorter strings precede those of length len.
  return static_cast<std::size_t>((std::uint64_t{1} << label.size()) - 1 + value);
}

Pattern pattern_of(const FamilyTree& t, const std::vector<std::string>& labels, int beta) {
  const auto z = static_cast<std::size_t>(label_universe(beta));
  Pattern p{labels[t.r], std::vector<std::uint8_t>(z, 0), labels[t.a], std::vector<std::uint8_t>(z, 0)};
  auto fill = [&](const std::vector<NodeId>& set, std::vector<std::uint8_t>& occ) {
    for (NodeId v : set) {
      auto& b = occ[label_index(labels[v], beta)];
      b = static_cast<std::uint8_t>(std::min(2, b + 1));
    }
  };
  fill(t.R, p.occupancy_r);
  fill(t.A, p.occupancy_a);
  label_index(p.label_r, beta);
  label_index(p.label_a, beta);
  return p;
}

BigInt pattern_bound(int beta) {
  if (beta < 0) throw std::invalid_argument("beta must be non-negative");
  if (beta > 20) throw std::domain_error("pattern_bound is evaluated exactly only for beta <= 20");
  const BigInt z = BigInt(1) << (beta + 1);
  const auto two_z = static_cast<unsigned>(std::uint64_t{2} << (beta + 1));
  return z * z * boost::multiprecision::pow(BigInt(3), two_z);
}

BigInt pattern_bound_second_path(int beta) {
  if (beta < 0) throw std::invalid_argument("beta must be non-negative");
  if (beta > 20) throw std::domain_error("pattern_bound is evaluated exactly only for beta <= 20");
  BigInt power = 3;  // 3^(2^k) after k squarings
  for (int k = 0; k < beta + 2; ++k) power *= power;
  return (BigInt(1) << (2 * beta + 2)) * power;
}

bool crossover_holds(int beta, const BigInt& delta) {
  if (beta < 0) throw std::invalid_argument("beta must be non-negative");
  if (delta <= 0) return false;
  // The bound exceeds 2^(2z) = 2^(2^(beta+2)); a delta with at most that
  // many bits cannot exceed twice the bound.
  const std::size_t delta_bits = boost::multiprecision::msb(delta) + 1;
  if (beta >= 60 || delta_bits <= (std::size_t{1} << (beta + 2))) return false;
  return 2 * pattern_bound(beta) < delta;
}

// ---------------------------------------------------------------------------
// Lemma checks
// ---------------------------------------------------------------------------

std::vector<std::vector<std::string>> sample_labelings(const std::vector<FamilyTree>& family, int beta,
                                                       std::uint64_t seed) {
  gen::Rng rng(seed);
  std::vector<std::string> universe;
  for (int len = 0; len <= beta; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string s;
      for (int b = len - 1; b >= 0; --b) s.push_back(((v >> b) & 1) ? '1' : '0');
      universe.push_back(s);
    }
  auto pick = [&](const std::vector<std::string>& from) {
    return from[gen::uniform_below(rng, from.size())];
  };
  auto shuffle = [&](std::vector<std::string>& xs) {
    for (std::size_t k = xs.size(); k > 1; --k) std::swap(xs[k - 1], xs[gen::uniform_below(rng, k)]);
  };

  // A small alphabet makes repeated labels, and hence saturated counts, common.
  std::vector<std::string> alphabet;
  const auto size = 1 + gen::uniform_below(rng, std::min<std::uint64_t>(3, universe.size()));
  while (alphabet.size() < size) {
    auto l = pick(universe);
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end()) alphabet.push_back(l);
  }
  const bool shared = gen::uniform_below(rng, 4) != 0;
  const std::string label_r = pick(alphabet), label_a = pick(alphabet);
  std::vector<std::string> r_leaves;
  for (std::size_t k = 0; k < family.front().R.size(); ++k) r_leaves.push_back(pick(alphabet));

  const int base = family.front().i;
  std::vector<std::string> a_base;
  for (int k = 0; k < base; ++k) a_base.push_back(pick(alphabet));
  // Extra leaves of larger members repeat a label already seen twice, so
  // the occupancy of A stays the same across the family.
  std::string saturated = a_base.front();
  if (base >= 2) a_base[1] = saturated;

  std::vector<std::vector<std::string>> out;
  for (const auto& t : family) {
    std::vector<std::string> labels(static_cast<std::size_t>(t.graph.size()));
    labels[t.r] = shared ? label_r : pick(alphabet);
    labels[t.a] = shared ? label_a : pick(alphabet);
    std::vector<std::string> rs = r_leaves, as;
    if (shared) {
      as = a_base;
      while (static_cast<int>(as.size()) < t.i) as.push_back(saturated);
    } else {
      for (auto& l : rs) l = pick(alphabet);
      for (int k = 0; k < t.i; ++k) as.push_back(pick(alphabet));
    }
    shuffle(rs);
    shuffle(as);
    for (std::size_t k = 0; k < t.R.size(); ++k) labels[t.R[k]] = rs[k];
    for (std::size_t k = 0; k < t.A.size(); ++k) labels[t.A[k]] = as[k];
    out.push_back(std::move(labels));
  }
  return out;
}

namespace {

void check_leaf_lemma(const FamilyTree& t, const std::vector<std::string>& labels, const HistoryTable& table,
                      const std::vector<NodeId>& set, const std::string& set_name, std::uint64_t seed, int labeling,
                      LemmaReport& report) {
  for (std::size_t x = 0; x < set.size(); ++x)
    for (std::size_t y = x + 1; y < set.size(); ++y) {
      const NodeId u = set[x], v = set[y];
      const bool same_label = labels[u] == labels[v];
      for (std::size_t round = 0; round < table.size(); ++round) {
        ++report.leaf_pairs;
        const bool same_history = table[round][u] == table[round][v];
        if (same_history != same_label) {
          report.violations.push_back(Violation{"leaf-classes", t.i, t.i, seed, labeling, static_cast<int>(round),
                                                set_name + " leaves " + std::to_string(u) + " and " +
                                                    std::to_string(v)});
          break;
        }
      }
    }
}

}  // namespace

LemmaReport check_lemmas(const LemmaConfig& cfg) {
  const auto family = build_family(cfg.delta);
  LemmaReport report;
  report.delta = cfg.delta;
  report.rounds = cfg.rounds;
  report.trials = cfg.automata * cfg.labelings;
  for (int lab = 0; lab < cfg.labelings; ++lab) {
    const auto labelings = sample_labelings(family, cfg.beta, mix(cfg.seed, 0x4c4142ULL + lab));
    std::vector<Pattern> patterns;
    for (std::size_t k = 0; k < family.size(); ++k) patterns.push_back(pattern_of(family[k], labelings[k], cfg.beta));
    for (int aut = 0; aut < cfg.automata; ++aut) {
      const std::uint64_t aseed = mix(cfg.seed, 0x415554ULL + aut);
      const auto automaton = digest_automaton(aseed);
      // One store for the whole family so root histories compare by handle.
      HistoryStore store;
      std::vector<HistoryTable> tables;
      for (std::size_t k = 0; k < family.size(); ++k) {
        tables.push_back(compute_histories(family[k].graph, labelings[k], automaton, cfg.rounds, store));
        check_leaf_lemma(family[k], labelings[k], tables.back(), family[k].R, "R", aseed, lab, report);
        check_leaf_lemma(family[k], labelings[k], tables.back(), family[k].A, "A", aseed, lab, report);
      }
      for (std::size_t x = 0; x < family.size(); ++x)
        for (std::size_t y = x + 1; y < family.size(); ++y) {
          if (!(patterns[x] == patterns[y])) continue;
          ++report.equal_pattern_pairs;
          for (int round = 0; round <= cfg.rounds; ++round) {
            if (tables[x][round][family[x].r] != tables[y][round][family[y].r]) {
              report.violations.push_back(Violation{"root-pattern", family[x].i, family[y].i, aseed, lab, round,
                                                    "root histories differ under equal patterns"});
              break;
            }
          }
        }
      // Distinct root histories within one pattern class, per round.
      for (int round = 0; round <= cfg.rounds; ++round) {
        std::map<std::size_t, std::set<HistoryId>> by_class;
        for (std::size_t x = 0; x < family.size(); ++x) {
          std::size_t cls = x;
          for (std::size_t y = 0; y < x; ++y)
            if (patterns[x] == patterns[y]) {
              cls = y;
              break;
            }
          by_class[cls].insert(tables[x][round][family[x].r]);
        }
        for (const auto& [cls, hs] : by_class)
          report.root_histories_per_class_max =
              std::max<long long>(report.root_histories_per_class_max, static_cast<long long>(hs.size()));
      }
    }
  }
  return report;
}

std::string lemma_report_json(const LemmaReport& r) {
  nlohmann::ordered_json j;
  j["delta"] = r.delta;
  j["trials"] = r.trials;
  j["rounds"] = r.rounds;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::ordered_json e;
    e["lemma"] = v.lemma;
    e["tree_i"] = v.tree_i;
    e["other_i"] = v.other_i;
    e["automaton_seed"] = v.automaton_seed;
    e["labeling"] = v.labeling;
    e["round"] = v.round;
    e["detail"] = v.detail;
    j["violations"].push_back(e);
  }
  return j.dump();
}

}  // namespace rsd::lab
