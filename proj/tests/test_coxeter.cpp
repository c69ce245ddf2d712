// Word reduction, canonical forms, and bw-graph parsing, cross-checked
// against the matrix-representation oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coxq/catalog.hpp"
#include "coxq/coxeter.hpp"
#include "oracle.hpp"

using namespace coxq;

namespace {

Word random_word(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  Word w(len);
  for (int i = 0; i < len; ++i) w[i] = pick(rng);
  return w;
}

void check_reduce_against_oracle(const BwGraph& g, int max_len, int samples,
                                 unsigned seed) {
  oracle::MatrixGroup mg(g, max_len, 200000);
  REQUIRE(mg.complete());
  std::mt19937 rng(seed);
  for (int i = 0; i < samples; ++i) {
    Word w = random_word(rng, g.size(), 1 + static_cast<int>(rng() % 18));
    Element e = reduce(g, w);
    int v = mg.eval(w);
    REQUIRE(v >= 0);
    CHECK(e.length() == mg.length(v));
    CHECK(e.canonical == mg.lex_least_word(v));
    // The canonical word evaluates back to the same group element.
    CHECK(mg.eval(e.canonical) == v);
  }
}

}  // namespace

TEST_CASE("graph parsing round-trips and validates") {
  std::string text = "nodes: 1 2 3\nblack: 1\nedges:\n1 2 4\n2 3 inf\n";
  BwGraph g = parse_bw_graph(text);
  CHECK(g.size() == 3);
  CHECK(g.black(0));
  CHECK_FALSE(g.black(1));
  CHECK(g.bond(0, 1) == 4);
  CHECK(g.bond(1, 2) == kInfiniteBond);
  CHECK(g.bond(0, 2) == 2);
  CHECK(format_bw_graph(g) == text);
  CHECK(parse_bw_graph(format_bw_graph(g)) == g);

  CHECK_THROWS_AS(parse_bw_graph("nodes: a a\nblack: a\nedges:\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_bw_graph("nodes: a b\nblack: c\nedges:\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_bw_graph("nodes: a b\nblack: a\nedges:\na b 2\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_bw_graph("nodes: a b\nblack: a\nedges:\na b x\n"),
                  ParseError);
}

TEST_CASE("word formatting uses separators only for long names") {
  BwGraph g = make_A(3, {"1"});
  CHECK(format_word(g, {0, 1, 2}) == "123");
  CHECK(format_word(g, {}) == "");
  CHECK(parse_word(g, "123") == Word{0, 1, 2});

  BwGraph h = parse_bw_graph("nodes: s1 s2\nblack: s1\nedges:\ns1 s2 3\n");
  CHECK(format_word(h, {0, 1}) == "s1.s2");
  CHECK(parse_word(h, "s1.s2") == Word{0, 1});
}

TEST_CASE("reduce matches the matrix oracle on A3") {
  check_reduce_against_oracle(make_A(3, {"1"}), 6, 300, 11);
}

TEST_CASE("reduce matches the matrix oracle on B3") {
  check_reduce_against_oracle(make_B(3, {"1"}), 9, 300, 12);
}

TEST_CASE("reduce matches the matrix oracle on H3") {
  check_reduce_against_oracle(make_H(3, {"1"}), 15, 300, 13);
}

TEST_CASE("reduce matches the matrix oracle on D4") {
  check_reduce_against_oracle(make_D(4, {"1"}), 12, 300, 14);
}

TEST_CASE("reduce matches the matrix oracle on I2(7)") {
  check_reduce_against_oracle(make_I2(7, {"1"}), 7, 200, 15);
}

TEST_CASE("reduce handles infinite bonds") {
  BwGraph g = parse_bw_graph("nodes: a b\nblack: a\nedges:\na b inf\n");
  Element e = reduce(g, parse_word(g, "ababab"));
  CHECK(e.length() == 6);
  Element f = reduce(g, parse_word(g, "abba"));
  CHECK(f.length() == 0);
  CHECK(f.canonical.empty());
}

TEST_CASE("closure cap raises a resource error") {
  // The longest element of A4 has hundreds of reduced words.
  BwGraph g = make_A(4, {"1"});
  Word w = parse_word(g, "1213214321");
  CHECK_THROWS_AS(reduce(g, w, 50), ResourceError);
}

TEST_CASE("minimal coset representative detection") {
  BwGraph g = make_A(3, {"1"});  // white: 2, 3
  auto elem = [&](const char* s) { return reduce(g, parse_word(g, s)); };
  CHECK(is_min_coset_rep(g, elem("1")));
  CHECK(is_min_coset_rep(g, elem("21")));
  CHECK_FALSE(is_min_coset_rep(g, elem("2")));
  CHECK_FALSE(is_min_coset_rep(g, elem("12")));
}

TEST_CASE("induced subgraph keeps bonds and colors") {
  BwGraph g = make_B(4, {"1", "3"});
  BwGraph s = induced_subgraph(g, {0, 2, 3});
  CHECK(s.size() == 3);
  CHECK(s.name(0) == "1");
  CHECK(s.name(2) == "4");
  CHECK(s.bond(0, 1) == 2);  // m(1, 3) in B4
  CHECK(s.bond(1, 2) == 3);  // m(3, 4)
  CHECK(s.black(0));
  CHECK(s.black(1));
  CHECK_FALSE(s.black(2));
}
