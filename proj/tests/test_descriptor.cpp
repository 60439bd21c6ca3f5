#include <doctest.h>

#include "endsym/descriptor.hpp"
#include "gen.hpp"

using namespace endsym;

namespace {

Descriptor P() { return Descriptor::point(Marking::planar); }
Descriptor parse(const char* s) { return parse_descriptor(s); }
std::string canon(const char* s) { return print_descriptor(canonicalize(parse(s))); }

// Independent end count: nullopt for infinite.
std::optional<std::size_t> count_oracle(const Descriptor& d) {
  switch (d.kind()) {
    case Kind::point: return 1;
    case Kind::finite_union: {
      std::size_t n = 0;
      for (const auto& c : d.children()) {
        auto k = count_oracle(c);
        if (!k) return std::nullopt;
        n += *k;
      }
      return n;
    }
    default: return std::nullopt;
  }
}

}  // namespace

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize(Descriptor::finite_union({Descriptor::cantor(Marking::planar),
                                                Descriptor::cantor(Marking::planar)})) ==
        Descriptor::cantor(Marking::planar));
  CHECK(canonicalize(Descriptor::point(Marking::genus)) == Descriptor::point(Marking::genus));
  CHECK(canonicalize(Descriptor::finite_union({Descriptor::finite_union({P(), P()}), P()})) ==
        Descriptor::finite_union({P(), P(), P()}));
  CHECK(canon("union(cantor,pt,cantor)") == "union(pt,cantor)");
  CHECK(canon("union(cantor,cantor[g])") == "union(cantor,cantor[g])");
  CHECK(canon("union(omega(pt),pt)") == "union(pt,omega(pt))");
  CHECK(canon("omega(union(union(pt,pt),cantor,cantor))") == "omega(union(pt,pt,cantor))");
}

TEST_CASE("union absorption into cseq is not applied") {
  CHECK(canon("union(cseq(pt),pt)") == "union(pt,cseq(pt))");
}

TEST_CASE("grammar") {
  for (const char* s : {"pt", "pt[g]", "cantor", "cantor[g]", "omega(pt)", "omega[g](pt[g])", "cseq(pt)",
                        "cseq[g](cantor)", "union(pt,cantor,omega(pt))"}) {
    CAPTURE(s);
    CHECK(print_descriptor(parse(s)) == s);
  }
  CHECK(print_descriptor(parse(" union( pt , pt ) ")) == "union(pt,pt)");
  CHECK(parse("ord(w+1)") == parse("omega(pt)"));
  CHECK(parse("ord(3)") == parse("union(pt,pt,pt)"));
  CHECK(parse("ord(1)") == P());
  CHECK(parse("ord(w^2*3+1)") == parse("union(omega(omega(pt)),omega(omega(pt)),omega(omega(pt)))"));
  for (const char* bad : {"", "pt(", "union(pt)", "union(pt,pt", "omega()", "cantor[x]", "ord(w)", "ord(0)",
                          "ord(w^w+1)", "foo"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse(bad), DescriptorError);
  }
}

TEST_CASE("closedness violations name the offending node") {
  try {
    parse("union(pt,cseq(pt[g]))");
    FAIL("accepted");
  } catch (const DescriptorError& e) {
    CHECK(e.path() == NodePath{1});
  }
  try {
    parse("omega(omega[g](pt[g]))");
    FAIL("accepted");
  } catch (const DescriptorError& e) {
    CHECK(e.path() == NodePath{});
  }
  CHECK_NOTHROW(parse("omega[g](pt)"));
  CHECK_NOTHROW(parse("cseq[g](omega(pt))"));
}

TEST_CASE("derivative") {
  CHECK(*derivative(parse("omega(pt)")) == P());
  CHECK(*derivative(parse("cantor[g]")) == parse("cantor[g]"));
  CHECK(*derivative(parse("omega(omega(pt))")) == parse("omega(pt)"));
  CHECK(*derivative(parse("cseq(pt)")) == parse("cantor"));
  CHECK(*derivative(parse("cseq(omega(pt))")) == parse("cseq(pt)"));
  CHECK(*derivative(parse("omega[g](pt)")) == parse("pt[g]"));
  CHECK_FALSE(derivative(parse("union(pt,pt)")));
  CHECK(*derivative(parse("union(pt,omega(pt),omega(pt))")) == parse("union(pt,pt)"));
}

TEST_CASE("genus part and end counts") {
  CHECK_FALSE(genus_part(parse("cseq(pt)")));
  CHECK(*genus_part(parse("union(pt,pt[g])")) == parse("pt[g]"));
  CHECK(*genus_part(parse("omega[g](pt)")) == parse("pt[g]"));
  CHECK(count_ends(parse("union(pt,pt[g],pt)"), Marking::planar) == std::optional<std::size_t>(2));
  CHECK(count_ends(parse("union(pt,pt[g],pt)"), Marking::genus) == std::optional<std::size_t>(1));
  CHECK_FALSE(count_ends(parse("omega(pt)")));
  CHECK(count_ends(parse("omega[g](pt)"), Marking::genus) == std::optional<std::size_t>(1));
}

TEST_CASE("ordinal_space") {
  CHECK(ordinal_space(0, 4) == parse("union(pt,pt,pt,pt,pt)"));
  CHECK(ordinal_space(1, 1) == parse("omega(pt)"));
  CHECK(ordinal_space(2, 2) == parse("union(omega(omega(pt)),omega(omega(pt)))"));
}

TEST_CASE("random corpus: canonical form, printing, derivative validity") {
  gen::Rng rng(3);
  for (int i = 0; i < 1200; ++i) {
    const Descriptor d = gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 6)));
    const std::string text = print_descriptor(d);
    CAPTURE(text);
    CHECK(parse_descriptor(text) == d);
    const Descriptor c = canonicalize(d);
    CHECK(canonicalize(c) == c);
    CHECK(count_ends(c) == count_oracle(c));
    CHECK(c.has_genus_end() == d.has_genus_end());
    if (auto dd = derivative(c)) {
      CHECK_NOTHROW(validate(*dd));
      CHECK(dd->height() <= c.height());
    } else {
      CHECK(count_ends(c).has_value());
    }
  }
}
