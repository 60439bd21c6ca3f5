#include <doctest.h>

#include <map>

#include "endsym/endspace.hpp"
#include "gen.hpp"

using namespace endsym;

namespace {

Descriptor parse(const char* s) { return canonicalize(parse_descriptor(s)); }

// Independent (rank, multiplicity) of a countable descriptor: a point is
// w^0+1, omega adds one to the rank, a union keeps the top rank and sums.
std::pair<std::size_t, std::size_t> cb_oracle(const Descriptor& d) {
  switch (d.kind()) {
    case Kind::point: return {1, 1};
    case Kind::omega: return {cb_oracle(d.inner()).first + 1, 1};
    case Kind::finite_union: {
      std::pair<std::size_t, std::size_t> best{0, 0};
      for (const auto& c : d.children()) {
        auto r = cb_oracle(c);
        if (r.first > best.first) best = r;
        else if (r.first == best.first) best.second += r.second;
      }
      return best;
    }
    default: FAIL("not countable"); return {0, 0};
  }
}

std::optional<NodePath> locus_of(const Descriptor& d, const Descriptor& node) {
  for (const auto& g : germs(d))
    if (g.node == node) return g.locus;
  return std::nullopt;
}

}  // namespace

TEST_CASE("cb_analysis examples") {
  auto cb = cb_analysis(parse("pt"));
  CHECK(cb.countable());
  CHECK(*cb.scattered_rank == Ordinal(1));
  CHECK(*cb.top_multiplicity == 1);
  cb = cb_analysis(parse("omega(pt)"));
  CHECK(*cb.scattered_rank == Ordinal(2));
  CHECK(*cb.top_multiplicity == 1);
  cb = cb_analysis(parse("union(omega(pt),omega(pt),omega(pt))"));
  CHECK(*cb.scattered_rank == Ordinal(2));
  CHECK(*cb.top_multiplicity == 3);
  cb = cb_analysis(parse("ord(w^2*3+1)"));
  CHECK(*cb.scattered_rank == Ordinal(3));
  CHECK(*cb.top_multiplicity == 3);
  cb = cb_analysis(parse("cseq(pt)"));
  CHECK_FALSE(cb.countable());
  CHECK(*cb.perfect_kernel == parse("cantor"));
  CHECK_FALSE(cb.scattered_rank);
}

TEST_CASE("cb_analysis matches the rank recursion on countable descriptors") {
  gen::Rng rng(4);
  for (int i = 0; i < 800; ++i) {
    const Descriptor d = canonicalize(gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 5)), true));
    CAPTURE(print_descriptor(d));
    const auto cb = cb_analysis(d);
    REQUIRE(cb.countable());
    const auto [rank, n] = cb_oracle(d);
    CHECK(*cb.scattered_rank == Ordinal(rank));
    CHECK(*cb.top_multiplicity == n);
    const auto up = cb_analysis(Descriptor::omega(d, d.has_genus_end() ? Marking::genus : Marking::planar));
    CHECK(*up.scattered_rank == successor(*cb.scattered_rank));
    CHECK(*up.top_multiplicity == 1);
  }
}

TEST_CASE("equal rank and multiplicity give equal keys for planar countable spaces") {
  gen::Rng rng(5);
  std::map<std::pair<std::size_t, std::size_t>, std::string> seen;
  for (int i = 0; i < 500; ++i) {
    const Descriptor d =
        canonicalize(gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 5)), true, true));
    const auto key = homeomorphism_key(d);
    auto [it, fresh] = seen.emplace(cb_oracle(d), key);
    CAPTURE(print_descriptor(d));
    if (!fresh) CHECK(it->second == key);
  }
  CHECK(homeomorphism_key(parse("union(omega(pt),pt)")) == homeomorphism_key(parse("omega(pt)")));
}

TEST_CASE("embeds_near") {
  CHECK(embeds_near(parse("pt"), parse("omega(pt)")));
  CHECK_FALSE(embeds_near(parse("omega(pt)"), parse("pt")));
  CHECK(embeds_near(parse("omega(pt)"), parse("cseq(pt)")));
  CHECK_FALSE(embeds_near(parse("pt[g]"), parse("cantor")));
  CHECK(embeds_near(parse("cantor"), parse("cseq(pt)")));
  CHECK_FALSE(embeds_near(parse("cantor"), parse("omega(omega(pt))")));
  CHECK(contains_clopen_copy(parse("cseq(pt)"), parse("union(cseq(pt),pt)")));
  CHECK_FALSE(contains_clopen_copy(parse("omega(pt)"), parse("union(omega(pt),omega(pt))")));
}

TEST_CASE("embeds_near is reflexive and transitive on a corpus") {
  gen::Rng rng(6);
  std::vector<Descriptor> corpus;
  for (int i = 0; i < 40; ++i) corpus.push_back(canonicalize(gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 4)))));
  for (const auto& a : corpus) {
    CHECK(embeds_near(a, a));
    for (const auto& b : corpus)
      for (const auto& c : corpus)
        if (embeds_near(a, b) && embeds_near(b, c)) {
          CAPTURE(print_descriptor(a));
          CAPTURE(print_descriptor(b));
          CAPTURE(print_descriptor(c));
          CHECK(embeds_near(a, c));
        }
  }
}

TEST_CASE("end_classes examples") {
  auto p = end_classes(parse("cantor"));
  REQUIRE(p.classes.size() == 1);
  CHECK(p.classes[0].is_maximal);
  CHECK(p.classes[0].cardinality == Cardinality::continuum());

  p = end_classes(parse("omega(pt)"));
  REQUIRE(p.classes.size() == 2);
  const auto top = p.maximal();
  REQUIRE(top.size() == 1);
  CHECK(p.classes[top[0]].cardinality == Cardinality::finite(1));
  const auto below = p.immediate_predecessors(top[0]);
  REQUIRE(below.size() == 1);
  CHECK(p.classes[below[0]].cardinality == Cardinality::countable());
  CHECK(p.less(below[0], top[0]));

  p = end_classes(parse("union(omega(pt),omega(pt))"));
  REQUIRE(p.maximal().size() == 1);
  CHECK(p.classes[p.maximal()[0]].cardinality == Cardinality::finite(2));

  p = end_classes(parse("cseq(omega(pt))"));
  CHECK(p.classes.size() == 3);
  CHECK(p.hasse_edges().size() == 2);
  CHECK(p.strict_order.size() == 3);

  p = end_classes(parse("union(pt,pt[g])"));
  CHECK(p.maximal().size() == 2);
}

TEST_CASE("stable neighbourhoods") {
  const auto c = parse("cantor");
  CHECK(is_stable_neighborhood(c, *locus_of(c, c)));
  const auto w = parse("omega(pt)");
  CHECK(is_stable_neighborhood(w, *locus_of(w, w)));
  const auto ww = parse("union(omega(pt),omega(pt))");
  CHECK_FALSE(is_stable_neighborhood(ww, *locus_of(ww, parse("omega(pt)"))));
}

TEST_CASE("self-similarity") {
  CHECK(is_self_similar(parse("cantor")));
  CHECK(is_self_similar(parse("omega(pt)")));
  CHECK_FALSE(is_self_similar(parse("union(omega(pt),omega(pt))")));
  CHECK(is_self_similar(parse("pt[g]")));
  CHECK(is_uniformly_self_similar(parse("cantor")));
  CHECK_FALSE(is_uniformly_self_similar(parse("omega(pt)")));
  CHECK(is_uniformly_self_similar(parse("cseq(pt)")));
  CHECK(is_uniformly_self_similar(parse("cantor[g]")));
  CHECK_FALSE(is_self_similar(parse("union(pt,cantor)")));
  CHECK_FALSE(is_self_similar(parse("union(pt,pt)")));
}

TEST_CASE("classify_surface examples") {
  auto r = classify_surface({Genus::inf(), parse("pt[g]")});
  CHECK(r.type1);
  REQUIRE_FALSE(r.verdicts.empty());
  CHECK(r.verdicts.back().find("not perfect") != std::string::npos);

  r = classify_surface({Genus::finite(0), parse("omega(pt)")});
  CHECK(r.type2);
  CHECK(r.self_similar);
  CHECK_FALSE(r.uniformly_self_similar);
  CHECK(r.verdicts.back().find("not generated by torsion") != std::string::npos);

  r = classify_surface({Genus::finite(0), parse("cantor")});
  CHECK(r.surface_uniformly_self_similar);
  CHECK_FALSE(r.type1);
  CHECK_FALSE(r.type2);
  CHECK(r.verdicts.front().find("uniformly perfect") != std::string::npos);
  CHECK(r.verdicts.front().find("≤12 involutions") != std::string::npos);

  r = classify_surface({Genus::finite(0), parse("omega(omega(pt))")});
  CHECK(r.type2);

  r = classify_surface({Genus::finite(3), parse("cantor")});
  CHECK(r.self_similar);
  CHECK_FALSE(r.surface_self_similar);
  CHECK(r.verdicts.empty());

  CHECK_THROWS_AS(classify_surface({Genus::finite(0), parse("pt[g]")}), DescriptorError);
  CHECK_THROWS_AS(classify_surface({Genus::inf(), parse("pt")}), DescriptorError);
}

TEST_CASE("class poset properties on a corpus") {
  gen::Rng rng(7);
  for (int i = 0; i < 600; ++i) {
    const Descriptor d = canonicalize(gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 5))));
    CAPTURE(print_descriptor(d));
    const auto p = end_classes(d);
    const auto top = p.maximal();
    CHECK_FALSE(top.empty());
    for (const auto& [a, b] : p.strict_order) {
      CHECK(a != b);
      CHECK_FALSE(p.less(b, a));
      for (const auto& [c, e] : p.strict_order)
        if (c == b) CHECK(p.less(a, e));
    }
    for (auto t : top) {
      CHECK(p.classes[t].is_maximal);
      CHECK(p.classes[t].cardinality.kind != Cardinality::Kind::countably_infinite);
    }
    if (is_uniformly_self_similar(d)) CHECK(is_self_similar(d));
    if (is_self_similar(d)) {
      REQUIRE(top.size() == 1);
      const auto& c = p.classes[top[0]].cardinality;
      CHECK((c == Cardinality::finite(1) || c == Cardinality::continuum()));
    }
  }
}
