// Graph reconstruction from bare posets, blind form resolution, and
// reducible decomposition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "coxq/catalog.hpp"
#include "coxq/chainlike.hpp"
#include "coxq/isomorphism.hpp"
#include "coxq/poset.hpp"
#include "coxq/reconstruct.hpp"

using namespace coxq;

namespace {

// Strips the graph so reconstruction cannot cheat, keeping the word model
// available separately for form classification.
Poset bare_copy(const Poset& p) {
  Poset q;
  q.labels = p.labels;
  q.rank = p.rank;
  q.covers = p.covers;
  q.complete = p.complete;
  q.max_length = p.max_length;
  q.finalize();
  return q;
}

// Round-trip helper: enumerate, classify forms from the word model, rebuild
// the graph from the bare cover structure, and compare with the original.
void check_round_trip(const BwGraph& g, int max_len) {
  Poset p = enumerate_quotient(g, max_len);
  Analyzer a(p);
  auto forms = a.classify_all_forms();
  Poset bare = bare_copy(p);
  Reconstruction rec = reconstruct(bare, forms);
  auto rebuilt = rec.to_graph();
  REQUIRE(rebuilt.has_value());
  CHECK(graphs_isomorphic(*rebuilt, g));
}

}  // namespace

TEST_CASE("round-trip: catalog quotients with one black node") {
  check_round_trip(make_A(4, {"1"}), 14);
  check_round_trip(make_A(4, {"2"}), 14);
  check_round_trip(make_B(3, {"1"}), 14);
  check_round_trip(make_B(3, {"3"}), 14);
  check_round_trip(make_B(4, {"2"}), 14);
  check_round_trip(make_D(4, {"1"}), 14);
  check_round_trip(make_D(4, {"4"}), 14);
  check_round_trip(make_D(5, {"1"}), 14);
  check_round_trip(make_H(3, {"1"}), 16);
  check_round_trip(make_H(3, {"3"}), 16);
  check_round_trip(make_F4({"1"}), 16);
  check_round_trip(make_I2(7, {"1"}), 8);
}

TEST_CASE("round-trip: several black nodes and truncations") {
  check_round_trip(make_A(4, {"1", "3"}), 12);
  check_round_trip(make_B(3, {"1", "2", "3"}), 10);
  BwGraph g = parse_bw_graph(
      "nodes: a b c\nblack: c\nedges:\na b inf\nb c inf\n");
  Poset p = enumerate_quotient(g, 7);
  Analyzer a(p);
  Reconstruction rec = reconstruct(bare_copy(p), a.classify_all_forms());
  // The infinite bonds are only bounded below at this truncation depth.
  REQUIRE(rec.size() == 3);
  auto rebuilt = rec.to_graph();
  CHECK_FALSE(rebuilt.has_value());  // inexact labels block materialization
}

TEST_CASE("simply-laced reconstruction needs no forms") {
  for (const BwGraph& g :
       {make_A(4, {"2"}), make_D(4, {"1"}), make_D(5, {"3"}),
        make_A(5, {"1", "4"})}) {
    Poset p = enumerate_quotient(g, 14);
    Reconstruction rec = reconstruct_simply_laced(bare_copy(p));
    auto rebuilt = rec.to_graph();
    REQUIRE(rebuilt.has_value());
    CHECK(graphs_isomorphic(*rebuilt, g));
  }
}

TEST_CASE("blind resolution: the 12-element quotient has two readings") {
  BwGraph g = parse_bw_graph("nodes: 1 2 3\nblack: 1\nedges:\n1 2 3\n2 3 5\n");
  Poset p = enumerate_quotient(g);
  BlindResolution r = resolve_forms_blind(bare_copy(p));
  REQUIRE(r.assignments.size() == 2);
  CHECK(r.exceptional);
  std::set<int> sizes;
  for (const auto& forms : r.assignments) {
    auto rebuilt = reconstruct(bare_copy(p), forms).to_graph();
    REQUIRE(rebuilt.has_value());
    sizes.insert(rebuilt->size());
  }
  // One rank-3 reading (the 5-labeled path) and one rank-6 reading.
  CHECK(sizes == std::set<int>{3, 6});
}

TEST_CASE("blind resolution: the 6-chain has three readings") {
  Poset p = enumerate_quotient(make_I2(6, {"1"}));
  BlindResolution r = resolve_forms_blind(bare_copy(p));
  // I2(6)/A1, A5/A4, B3/B2 all give a 6-chain.
  REQUIRE(r.assignments.size() == 3);
  CHECK(r.exceptional);
  std::set<int> sizes;
  for (const auto& forms : r.assignments) {
    auto rebuilt = reconstruct(bare_copy(p), forms).to_graph();
    REQUIRE(rebuilt.has_value());
    sizes.insert(rebuilt->size());
  }
  CHECK(sizes == std::set<int>{2, 3, 5});
}

TEST_CASE("blind resolution: the boolean cube pairs B3 with D4") {
  Poset p = enumerate_quotient(make_B(3, {"1"}));
  BlindResolution r = resolve_forms_blind(bare_copy(p));
  REQUIRE(r.assignments.size() == 2);
  CHECK(r.exceptional);
  std::set<int> sizes;
  for (const auto& forms : r.assignments) {
    auto rebuilt = reconstruct(bare_copy(p), forms).to_graph();
    REQUIRE(rebuilt.has_value());
    sizes.insert(rebuilt->size());
  }
  CHECK(sizes == std::set<int>{3, 4});
}

TEST_CASE("blind resolution: a non-exceptional quotient is unambiguous") {
  BwGraph g = make_A(4, {"2"});
  Poset p = enumerate_quotient(g);
  BlindResolution r = resolve_forms_blind(bare_copy(p));
  REQUIRE(r.assignments.size() == 1);
  CHECK_FALSE(r.exceptional);
  auto rebuilt = reconstruct(bare_copy(p), r.assignments[0]).to_graph();
  REQUIRE(rebuilt.has_value());
  CHECK(graphs_isomorphic(*rebuilt, g));
}

TEST_CASE("blind resolution rejects truncated posets") {
  BwGraph g = parse_bw_graph(
      "nodes: a b c\nblack: c\nedges:\na b inf\nb c inf\n");
  Poset p = enumerate_quotient(g, 6);
  CHECK_THROWS_AS(resolve_forms_blind(bare_copy(p)), std::invalid_argument);
}

TEST_CASE("decompose: a disconnected system splits into its factors") {
  // Two components: a 4-bond pair (black a) and a 3-path (black d).
  BwGraph g = parse_bw_graph(
      "nodes: a b d e f\nblack: a d\nedges:\na b 4\nd e 3\ne f 3\n");
  Poset p = enumerate_quotient(g, 12);
  REQUIRE(p.complete);
  Decomposition dec = decompose(p);
  REQUIRE(dec.factors.size() == 2);
  CHECK(dec.trivial_count == 0);

  // The product of the factors rebuilds the quotient.
  Poset prod = product_poset(dec.factors[0], dec.factors[1], 20);
  CHECK(prod.size() == p.size());
  CHECK(are_isomorphic(prod, p).has_value());

  // Factor sizes: I2(4)/A1 is a 4-chain; A3/A2 is a 4-chain.
  std::multiset<int> sizes{dec.factors[0].size(), dec.factors[1].size()};
  CHECK(sizes == std::multiset<int>{4, 4});
}

TEST_CASE("decompose: trivial all-white components are counted") {
  BwGraph g = parse_bw_graph(
      "nodes: a b p q\nblack: a\nedges:\na b 3\np q 3\n");
  Poset p = enumerate_quotient(g, 10);
  Decomposition dec = decompose(p);
  CHECK(dec.factors.size() == 1);
  CHECK(dec.trivial_count == 1);
  CHECK(dec.factors[0].size() == 3);  // the A2/A1 chain
}

TEST_CASE("decompose: irreducible systems yield one factor") {
  Poset p = enumerate_quotient(make_B(4, {"1"}));
  Decomposition dec = decompose(p);
  CHECK(dec.factors.size() == 1);
  CHECK(dec.factors[0].size() == p.size());
  CHECK(dec.trivial_count == 0);
}

TEST_CASE("decompose: factors carry induced graphs when available") {
  BwGraph g = parse_bw_graph(
      "nodes: a b d e\nblack: a d\nedges:\na b 5\nd e 3\n");
  Poset p = enumerate_quotient(g, 12);
  Decomposition dec = decompose(p);
  REQUIRE(dec.factors.size() == 2);
  for (const Poset& f : dec.factors) {
    REQUIRE(f.graph.has_value());
    CHECK(f.graph->size() == 2);
    // Labels are re-rendered over the induced graph.
    for (int v = 0; v < f.size(); ++v)
      CHECK(f.labels[v] == format_word(*f.graph, f.words[v]));
  }
}
