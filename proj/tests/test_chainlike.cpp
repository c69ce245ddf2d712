// Chainlike classification, the L/X/M/N machinery, detectors, and baskets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coxq/catalog.hpp"
#include "coxq/chainlike.hpp"
#include "coxq/poset.hpp"

using namespace coxq;

namespace {

int id(const Poset& p, const std::string& label) {
  auto v = p.find_label(label);
  REQUIRE(v.has_value());
  return *v;
}

// The rank-3 system 1-2-3 with m(1,2)=3, m(2,3)=5, black node 1; its
// 12-element quotient is the small exceptional poset.
Poset h3_quotient() {
  BwGraph g = make_I2(5, {"1"});  // placeholder, replaced below
  g = parse_bw_graph("nodes: 1 2 3\nblack: 1\nedges:\n1 2 3\n2 3 5\n");
  return enumerate_quotient(g);
}

}  // namespace

TEST_CASE("chainlike detection and forms on the 12-element quotient") {
  Poset p = h3_quotient();
  REQUIRE(p.size() == 12);
  Analyzer a(p);

  std::vector<std::string> expected = {"1",     "21",    "321",
                                       "2321",  "12321", "32321"};
  std::vector<std::string> got;
  for (int v : a.chainlikes()) got.push_back(p.labels[v]);
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);

  auto form_of = [&](const std::string& label) {
    auto fi = a.classify_form(id(p, label));
    REQUIRE(fi.has_value());
    return fi->form;
  };
  CHECK(form_of("1") == Form::I);
  CHECK(form_of("21") == Form::I);
  CHECK(form_of("321") == Form::I);
  CHECK(form_of("2321") == Form::II);
  CHECK(form_of("12321") == Form::II);
  CHECK(form_of("32321") == Form::III);

  auto fi = a.classify_form(id(p, "32321"));
  CHECK(fi->m == 4);
  auto fii = a.classify_form(id(p, "12321"));
  CHECK(fii->l == 0);
}

TEST_CASE("N anchors: the exceptional pair yields 5 on both sides") {
  {
    Poset p = h3_quotient();
    Analyzer a(p);
    CHECK(a.N(id(p, "12321"), id(p, "32321")) == BoundVal::exact(5));
  }
  {
    Poset p = enumerate_quotient(make_D(6, {"1"}), 16);
    REQUIRE(p.complete);
    Analyzer a(p);
    CHECK(a.N(id(p, "54321"), id(p, "64321")) == BoundVal::exact(5));
  }
}

TEST_CASE("N for commuting simple branches counts the 3-bond run") {
  // u = s.s_k...s_0 and v = t.s_k...s_0 simple with m(s,t) = 2 gives
  // N = k - l + 2 when both s and t bond 3 to s_k, and 1 otherwise.
  {
    Poset p = enumerate_quotient(make_D(5, {"1"}), 12);
    REQUIRE(p.complete);
    Analyzer a(p);
    // k = 2, all-3 path: N = 2 - 0 + 2.
    CHECK(a.N(id(p, "4321"), id(p, "5321")) == BoundVal::exact(4));
  }
  {
    // s bonds 4 to s_k: the chase stops immediately.
    BwGraph g = parse_bw_graph(
        "nodes: 0 1 s t\nblack: 0\nedges:\n0 1 3\n1 s 4\n1 t 3\n");
    Poset p = enumerate_quotient(g, 10);
    Analyzer a(p);
    CHECK(a.N(id(p, "s10"), id(p, "t10")) == BoundVal::exact(1));
  }
}

TEST_CASE("N for a form-II / simple pair distinguishes the 4-label") {
  // u = s_{k-1} s_k ... s_0, v = s s_k ... s_0: N = 3 exactly when
  // m(s, s_k) = 3 and m(s_k, s_{k-1}) = 4.
  {
    BwGraph g = parse_bw_graph(
        "nodes: a b c d\nblack: a\nedges:\na b 3\nb c 4\nc d 3\n");
    Poset p = enumerate_quotient(g, 12);
    Analyzer a(p);
    CHECK(a.N(id(p, "bcba"), id(p, "dcba")) == BoundVal::exact(3));
  }
  {
    // m(s, s_k) = 4 instead: N = 1.
    BwGraph g = parse_bw_graph(
        "nodes: a b c d\nblack: a\nedges:\na b 3\nb c 4\nc d 4\n");
    Poset p = enumerate_quotient(g, 12);
    Analyzer a(p);
    CHECK(a.N(id(p, "bcba"), id(p, "dcba")) == BoundVal::exact(1));
  }
}

TEST_CASE("N for a form-III / form-II pair flags the 5-label") {
  {
    // The 12-element quotient again: u = 32321 (form III), v = 12321
    // (form II), m(s_k, s_{k-1}) = 5 so N = 5.
    Poset p = h3_quotient();
    Analyzer a(p);
    CHECK(a.N(id(p, "32321"), id(p, "12321")) == BoundVal::exact(5));
  }
  {
    // Same shape with a 6-label: N = 1.
    BwGraph g = parse_bw_graph("nodes: 1 2 3\nblack: 1\nedges:\n1 2 3\n2 3 6\n");
    Poset p = enumerate_quotient(g, 8);
    Analyzer a(p);
    CHECK(a.N(id(p, "32321"), id(p, "12321")) == BoundVal::exact(1));
  }
}

TEST_CASE("M recovers bonds between leftmost letters") {
  // D4 quotient: the chainlikes 321 and 421 share the parent 21 and have
  // commuting leftmost letters.
  Poset p = enumerate_quotient(make_D(4, {"1"}), 12);
  Analyzer a(p);
  int x = id(p, "321"), y = id(p, "421");
  REQUIRE(a.parent(x) == a.parent(y));
  CHECK(a.M_shared_parent(x, y) == BoundVal::exact(2));  // m(3,4) = 2

  // In the 12-element quotient, 12321 and 32321 share the parent 2321.
  Poset q = h3_quotient();
  Analyzer b(q);
  int u = id(q, "12321"), v = id(q, "32321");
  REQUIRE(b.parent(u) == b.parent(v));
  CHECK(b.M_shared_parent(u, v) == BoundVal::exact(2));  // m(1,3) = 2
}

TEST_CASE("M on shared-parent pairs reads non-commuting bonds") {
  // Two black atoms over a bond: the bond itself is recovered.
  for (int m : {3, 4, 5, 6}) {
    BwGraph g = make_I2(m, {"1", "2"});
    Poset p = enumerate_quotient(g, m + 1);
    Analyzer a(p);
    int x = id(p, "1"), y = id(p, "2");
    REQUIRE(a.parent(x) == a.parent(y));
    CHECK(a.M_shared_parent(x, y) == BoundVal::exact(m));
  }
}

TEST_CASE("detector criterion matches bonds") {
  Poset p = enumerate_quotient(make_B(4, {"1"}));
  Analyzer a(p);
  // x = 21: x' = 1 < u' for u = 321? u' = 21 = x, need x' < u' and
  // x not<= u.  Use u = 2321 (u' = 321), x = 4321's sibling... simplest:
  // iterate all eligible pairs and compare with the graph bond.
  const BwGraph& g = *p.graph;
  int checked = 0;
  for (int u : a.chainlikes()) {
    if (p.rank[u] < 2) continue;
    for (int x : a.chainlikes()) {
      if (x == u || p.rank[x] < 2) continue;
      int xp = a.parent(x), up = a.parent(u);
      if (!(a.leq(xp, up) && xp != up)) continue;
      if (a.leq(x, u)) continue;
      DetectResult r = a.detects(u, x);
      if (!r.known) continue;
      bool bond_ge3 = g.bond(a.leftmost(u), a.leftmost(x)) >= 3;
      CHECK(r.detects == bond_ge3);
      if (r.detects) {
        CHECK(a.M_detector(u, x) ==
              BoundVal::exact(g.bond(a.leftmost(u), a.leftmost(x))));
      }
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("baskets: the smallest interlocked pair") {
  BwGraph g = parse_bw_graph(
      "nodes: a b c\nblack: c\nedges:\na b inf\nb c inf\n");
  Poset p = enumerate_quotient(g, 7);
  Analyzer a(p);
  auto baskets = a.find_baskets();
  REQUIRE(baskets.size() == 1);
  std::string bu = p.labels[baskets[0].u], bv = p.labels[baskets[0].v];
  if (bu > bv) std::swap(bu, bv);
  CHECK(bu == "babc");
  CHECK(bv == "bcbc");
  // Forms II and III respectively.
  auto fu = a.classify_form(id(p, "babc"));
  auto fv = a.classify_form(id(p, "bcbc"));
  CHECK(fu->form == Form::II);
  CHECK(fv->form == Form::III);
}

TEST_CASE("no baskets in total orders or boolean quotients") {
  {
    Poset p = enumerate_quotient(make_I2(6, {"1"}));
    Analyzer a(p);
    CHECK(a.find_baskets().empty());
  }
  {
    Poset p = enumerate_quotient(make_B(4, {"1"}));
    Analyzer a(p);
    CHECK(a.find_baskets().empty());
  }
}

TEST_CASE("truncation yields three-valued answers at the boundary") {
  BwGraph g = parse_bw_graph(
      "nodes: a b c\nblack: c\nedges:\na b inf\nb c inf\n");
  Poset p = enumerate_quotient(g, 4);
  Analyzer a(p);
  // abc and cbc share the parent bc with commuting leftmost letters, but
  // the chase above their common cover leaves the enumerated region.
  int u = id(p, "abc"), v = id(p, "cbc");
  BoundVal n = a.N(u, v);
  CHECK(n.status != BoundVal::Status::Exact);
}

TEST_CASE("sim relation groups chainlikes by leftmost letter") {
  // Distinct leftmost letters: not similar.
  Poset p = h3_quotient();
  Analyzer a(p);
  auto s = a.sim(id(p, "12321"), id(p, "32321"));
  REQUIRE(s.has_value());
  CHECK_FALSE(*s);

  // Two blacks sharing a white neighbor: 21 and 23 start with the same
  // letter and are similar.
  Poset q = enumerate_quotient(make_A(3, {"1", "3"}), 10);
  Analyzer b(q);
  auto t = b.sim(id(q, "21"), id(q, "23"));
  REQUIRE(t.has_value());
  CHECK(*t);
}
