#include <doctest.h>

#include <set>

#include "endsym/back_and_forth.hpp"
#include "endsym/random_homeo.hpp"
#include "endsym/relation.hpp"
#include "gen.hpp"

using namespace endsym;

namespace {

ModelPtr model(const char* s) { return realize(canonicalize(parse_descriptor(s))); }
Address at(const AddressModel& m, const char* s) { return m.parse_address(s); }

// Depth-d partition size straight from the branching rule on descriptors.
std::size_t count_oracle(const Descriptor& d, std::size_t depth) {
  if (d.kind() == Kind::point) return 1;
  if (depth == 0) return 1;
  switch (d.kind()) {
    case Kind::cantor: return 2 * count_oracle(d, depth - 1);
    case Kind::omega: return count_oracle(d.inner(), depth - 1) + count_oracle(d, depth - 1);
    case Kind::cseq: return count_oracle(d.inner(), depth - 1) + 2 * count_oracle(d, depth - 1);
    default: {
      std::size_t n = 0;
      for (const auto& c : d.children()) n += count_oracle(c, depth - 1);
      return n;
    }
  }
}

// A region as the set of depth-D partition cells it covers.
std::set<Address> cover(const AddressModel& m, const Region& r, std::size_t D) {
  std::set<Address> out;
  for (const auto& c : r)
    for (const auto& s : m.cells_at_depth_under(c, std::max(D, c.size()))) out.insert(s);
  return out;
}

Region random_region(const AddressModel& m, gen::Rng& rng, std::size_t D) {
  Region r;
  for (const auto& c : m.cells_at_depth(1 + gen::below(rng, D)))
    if (gen::below(rng, 3) == 0) r.push_back(c);
  return r;
}

// h restricted to the depth-d partition of `domain` is a bijection onto
// `codomain` that preserves marking content.
void check_bijection(const LazyHomeo& h, const Region& domain, const Region& codomain, std::size_t d) {
  const AddressModel& m = h.model();
  Region images;
  for (const auto& c : domain)
    for (const auto& s : m.cells_at_depth_under(c, std::max(d, c.size()))) {
      const Region img = image_region(h, Region{s}, codomain);
      CHECK_FALSE(img.empty());
      CHECK(disjoint(m, images, img));
      for (const auto& t : img) CHECK(m.has_genus_end(m.type_of(t)) == m.has_genus_end(m.type_of(s)));
      images = unite(m, images, img);
    }
  CHECK(images == normalize(m, codomain));
}

}  // namespace

TEST_CASE("realize and partitions") {
  const auto cantor = model("cantor");
  CHECK(cantor->cells_at_depth(2).size() == 4);
  CHECK(cantor->children(cantor->type_of({})).size() == 2);
  const auto w = model("omega(pt)");
  const auto d1 = w->cells_at_depth(1);
  REQUIRE(d1.size() == 2);
  CHECK(w->render(d1[0]) == "C0");
  CHECK(w->render(d1[1]) == "T");
  std::vector<std::string> d3;
  for (const auto& c : w->cells_at_depth(3)) d3.push_back(w->render(c));
  CHECK(d3 == std::vector<std::string>{"C0", "T.C0", "T.T.C0", "T.T.T"});
  const auto u = model("union(pt,pt,pt)");
  CHECK(u->cells_at_depth(1).size() == 3);
  CHECK(u->cells_at_depth(6).size() == 3);
  CHECK(model("pt")->cells_at_depth(5).size() == 1);
  CHECK(realize(parse_descriptor("cantor")) != nullptr);
  CHECK(cells_at_depth(*cantor, 3).size() == 8);
  CHECK(cells_at_depth(*cantor, 3)[5].depth == 3);
}

TEST_CASE("partition sizes follow the branching rule") {
  gen::Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    const Descriptor d = canonicalize(gen::descriptor(rng, 1 + static_cast<int>(gen::below(rng, 4))));
    const auto m = realize(d);
    CAPTURE(print_descriptor(d));
    for (std::size_t k = 0; k <= 6; ++k) {
      const auto cells = m->cells_at_depth(k);
      CHECK(cells.size() == count_oracle(d, k));
      for (const auto& c : cells) CHECK(m->parse_address(m->render(c)) == c);
    }
  }
}

TEST_CASE("addresses") {
  const auto m = model("cseq(omega(pt))");
  CHECK(m->render(at(*m, "0.C0.T.C0")) == "0.C0.T.C0");
  CHECK(m->local_at(at(*m, "1.C0")) == parse_descriptor("omega(pt)"));
  CHECK(m->is_terminal(at(*m, "C0.C0")));
  CHECK_FALSE(m->valid({0, 0, 0, 0}));
  CHECK_THROWS(m->parse_address("2"));
  CHECK_THROWS(m->parse_address("C0.C0.C0"));
  CHECK(m->partition_cell(at(*m, "0.1.1"), 2) == at(*m, "0.1"));
}

TEST_CASE("maximal end loci") {
  const auto m = model("cseq(pt)");
  const auto y = least_maximal_end(*m, Address{});
  const auto z = greatest_maximal_end(*m, Address{});
  REQUIRE(y);
  REQUIRE(z);
  CHECK(render_locus(*m, *y) == "(0)*");
  CHECK(render_locus(*m, *z) == "(1)*");
  CHECK_FALSE(least_maximal_end(*m, at(*m, "C0")));
  CHECK(y->cell_at(3) == at(*m, "0.0.0"));
  CHECK(y->in_cell(at(*m, "0.0")));
  CHECK_FALSE(y->in_cell(at(*m, "0.1")));
}

TEST_CASE("region operations agree with depth-D covers") {
  gen::Rng rng(12);
  for (const char* s : {"cantor", "cseq(pt)", "union(omega(pt),cantor[g])"}) {
    const auto m = model(s);
    constexpr std::size_t D = 5;
    for (int i = 0; i < 60; ++i) {
      const Region a = normalize(*m, random_region(*m, rng, D));
      const Region b = normalize(*m, random_region(*m, rng, D));
      const auto ca = cover(*m, a, D), cb = cover(*m, b, D);
      std::set<Address> u, n, d, all;
      for (const auto& c : m->cells_at_depth(D)) {
        all.insert(c);
        if (ca.count(c) || cb.count(c)) u.insert(c);
        if (ca.count(c) && cb.count(c)) n.insert(c);
        if (ca.count(c) && !cb.count(c)) d.insert(c);
      }
      CHECK(cover(*m, unite(*m, a, b), D) == u);
      CHECK(cover(*m, intersect(*m, a, b), D) == n);
      CHECK(cover(*m, subtract(*m, a, b), D) == d);
      CHECK(disjoint(*m, a, b) == n.empty());
      CHECK(contains(*m, a, b) == (n == cb));
      std::set<Address> comp;
      for (const auto& c : all)
        if (!ca.count(c)) comp.insert(c);
      CHECK(cover(*m, complement(*m, a), D) == comp);
      CHECK(normalize(*m, unite(*m, a, complement(*m, a))) == Region{Address{}});
    }
  }
}

TEST_CASE("cell_permutation validation") {
  const auto m = model("cseq(pt)");
  PermTable ok{{{at(*m, "C0"), at(*m, "C0")}, {at(*m, "0"), at(*m, "1")}, {at(*m, "1"), at(*m, "0")}}};
  CHECK_NOTHROW(cell_permutation(m, ok));
  PermTable type_clash{{{at(*m, "C0"), at(*m, "0")}, {at(*m, "0"), at(*m, "C0")}, {at(*m, "1"), at(*m, "1")}}};
  CHECK_THROWS_AS(cell_permutation(m, type_clash), HomeoError);
  PermTable gap{{{at(*m, "0"), at(*m, "1")}, {at(*m, "1"), at(*m, "0")}}};
  CHECK_THROWS_AS(cell_permutation(m, gap), HomeoError);
  PermTable overlap{{{at(*m, "C0"), at(*m, "C0")}, {at(*m, "0"), at(*m, "0")}, {at(*m, "1"), at(*m, "1")},
                     {at(*m, "1.0"), at(*m, "1.0")}}};
  CHECK_THROWS_AS(cell_permutation(m, overlap), HomeoError);
}

TEST_CASE("eq_to_depth basics") {
  const auto m = model("cantor");
  const Homeo id = identity(m);
  CHECK(eq_to_depth(id, id, 10));
  const Homeo swap = cell_permutation(m, {{{at(*m, "0"), at(*m, "1")}, {at(*m, "1"), at(*m, "0")}}});
  CHECK_FALSE(eq_to_depth(swap, id, 1));
  CHECK(eq_to_depth(swap, id, 0));
  CHECK(first_disagreement(*swap, *id, 3) == at(*m, "0.0.0"));
  CHECK(eq_to_depth(compose(swap, swap), id, 8));
  CHECK(inverse(id)->is_identity());
  CHECK(eq_to_depth(commutator(swap, id), id, 8));
  CHECK_THROWS_AS(compose(swap, identity(model("cseq(pt)"))), HomeoError);
}

TEST_CASE("group laws and kernels on random permutations") {
  for (const char* s : {"cantor", "cantor[g]", "cseq(pt)", "union(omega(pt),cantor)"}) {
    const auto m = model(s);
    CAPTURE(std::string(s));
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Homeo f = cell_permutation(m, random_cell_permutation(*m, seed));
      const Homeo g = cell_permutation(m, random_cell_permutation(*m, seed + 100));
      const Homeo h = cell_permutation(m, random_cell_permutation(*m, seed + 200));
      const Homeo id = identity(m);
      CHECK(eq_to_depth(compose(f, inverse(f)), id, 8));
      CHECK(eq_to_depth(compose(inverse(f), f), id, 8));
      CHECK(eq_to_depth(compose(compose(f, g), h), compose(f, compose(g, h)), 7));
      CHECK(eq_to_depth(inverse(compose(f, g)), compose(inverse(g), inverse(f)), 7));
      CHECK(eq_to_depth(power(f, 3), compose({f, f, f}), 7));
      CHECK(eq_to_depth(commutator(f, g), compose({f, g, inverse(f), inverse(g)}), 7));
      CHECK(eq_to_depth(*f, *g, 7) == eq_to_depth_serial(*f, *g, 7));
      const Homeo fg = compose(f, g);
      CHECK(cell_relation(*fg, 7) == cell_relation_serial(*fg, 7));
      check_bijection(*fg, Region{Address{}}, Region{Address{}}, 5);
    }
  }
}

TEST_CASE("images refine consistently") {
  const auto m = model("cseq(pt)");
  gen::Rng rng(13);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Homeo f = compose(cell_permutation(m, random_cell_permutation(*m, seed)),
                            cell_permutation(m, random_cell_permutation(*m, seed + 7)));
    for (std::size_t d = 2; d < 7; ++d) {
      const auto cells = m->cells_at_depth(d);
      const Address c = cells[gen::below(rng, cells.size())];
      const auto coarse = image_cells(*f, c, d);
      for (const auto& s : m->cells_at_depth_under(c, d + 1))
        for (const auto& t : image_cells(*f, s, d + 1))
          CHECK(std::find(coarse.begin(), coarse.end(), m->partition_cell(t, d)) != coarse.end());
    }
  }
}

TEST_CASE("piecewise and restrict_to") {
  const auto m = model("cantor");
  const Homeo swap = cell_permutation(m, {{{at(*m, "0"), at(*m, "1")}, {at(*m, "1"), at(*m, "0")}}});
  const Homeo inner = cell_permutation(
      m, {{{at(*m, "0.0"), at(*m, "0.1")}, {at(*m, "0.1"), at(*m, "0.0")}, {at(*m, "1"), at(*m, "1")}}});
  const Homeo r = restrict_to(inner, Region{at(*m, "0")});
  CHECK(eq_to_depth(r, inner, 8));
  CHECK(is_identity_outside(*r, Region{at(*m, "0")}, 8));
  CHECK_FALSE(is_identity_outside(*swap, Region{at(*m, "0")}, 3));
  const Homeo p = piecewise(m, {{Region{at(*m, "0")}, Region{at(*m, "1")}, swap},
                                {Region{at(*m, "1")}, Region{at(*m, "0")}, swap}});
  CHECK(eq_to_depth(p, swap, 8));
  CHECK(image_region(*swap, Region{at(*m, "0.1")}) == Region{at(*m, "1.1")});
}

TEST_CASE("back_and_forth examples") {
  const auto m = model("cantor");
  const Region whole{Address{}}, left{at(*m, "0")};
  CHECK(back_and_forth(m, whole, whole)->is_identity());
  const EndLocus x{{}, {0}};
  const Homeo h = back_and_forth(m, whole, x, left, x);
  CHECK(h->kind() == "canonical_iso");
  check_bijection(*h, whole, left, 6);
  for (std::size_t k = 1; k < 12; ++k) {
    const auto hull = h->forward(x.cell_at(k)).hull();
    if (hull) CHECK(x.in_cell(*hull));
  }

  const auto w = model("cseq(omega(pt))");
  const Region a{at(*w, "0")}, b{at(*w, "1.1")};
  const Homeo g = back_and_forth(w, a, b);
  check_bijection(*g, a, b, 6);
  check_bijection(*inverse(g), b, a, 6);

  const auto q = model("cseq(pt)");
  const Region u{at(*q, "C0"), at(*q, "0")}, v{at(*q, "1")};
  check_bijection(*back_and_forth(q, u, v), u, v, 7);
  CHECK_THROWS_AS(back_and_forth(q, Region{at(*q, "C0")}, v), HomeoError);
  CHECK_THROWS_AS(back_and_forth(model("omega(pt)"), whole, EndLocus{{0}, {}}, whole, EndLocus{{1, 0}, {}}), HomeoError);
}

TEST_CASE("back_and_forth sends the chosen end to the target end") {
  const auto m = model("cantor[g]");
  const EndLocus x{{0, 1}, {1, 0}}, y{{1}, {0, 0, 1}};
  const Homeo h = back_and_forth(m, Region{at(*m, "0")}, x, Region{at(*m, "1")}, y);
  check_bijection(*h, Region{at(*m, "0")}, Region{at(*m, "1")}, 6);
  for (std::size_t k = 1; k < 14; ++k) {
    const auto hull = h->forward(x.cell_at(k)).hull();
    if (hull) CHECK(y.in_cell(*hull));
    const auto back = h->backward(y.cell_at(k)).hull();
    if (back) CHECK(x.in_cell(*back));
  }
  // the relation at depth d refines: every depth-d cell on x maps to cells on y
  for (std::size_t d = 3; d < 9; ++d) {
    const auto imgs = image_cells(*h, x.cell_at(d), d);
    CHECK(std::find(imgs.begin(), imgs.end(), y.cell_at(d)) != imgs.end());
  }
}
