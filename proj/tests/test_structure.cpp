#include <doctest.h>

#include "endsym/factorization.hpp"
#include "endsym/random_homeo.hpp"
#include "endsym/relation.hpp"

using namespace endsym;

namespace {

StandardFormPtr form(const char* s) { return StandardForm::build(canonicalize(parse_descriptor(s))); }
Region cells(const AddressModel& m, std::initializer_list<const char*> xs) {
  Region r;
  for (auto x : xs) r.push_back(m.parse_address(x));
  return normalize(m, r);
}

}  // namespace

TEST_CASE("standard form of the Cantor set") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  CHECK(render_locus(m, sf->y()) == "(0)*");
  CHECK(render_locus(m, sf->z()) == "(1)*");
  // U_i = 0^(1-i)1 for i <= 0 and 1^i 0 for i >= 1
  for (int i = -6; i <= 6; ++i) {
    std::string want;
    const int n = i <= 0 ? 1 - i : i;
    for (int k = 0; k < n; ++k) want += (k ? "." : "") + std::string(i <= 0 ? "0" : "1");
    want += i <= 0 ? ".1" : ".0";
    CAPTURE(i);
    CHECK(sf->chain(i) == cells(m, {want.c_str()}));
  }
}

TEST_CASE("standard form chains partition the space") {
  for (const char* s : {"cantor", "cantor[g]", "cseq(pt)", "cseq(omega(pt))", "cseq[g](omega(pt))"}) {
    CAPTURE(std::string(s));
    const auto sf = form(s);
    const auto& m = *sf->model();
    constexpr int W = 10;
    Region all = {sf->y_ray_cell(-W - 1), sf->z_ray_cell(W + 1)};
    for (int i = -W; i <= W; ++i) {
      const Region u = sf->chain(i);
      CHECK(contains_maximal_end(m, u));
      CHECK(disjoint(m, all, u));
      all = unite(m, all, u);
    }
    CHECK(all == Region{Address{}});
  }
  CHECK(form("cseq(pt)")->chain(0) == cells(*form("cseq(pt)")->model(), {"C0", "0.C0", "0.1"}));
  CHECK_THROWS_AS(form("omega(pt)"), StructureError);
  CHECK_THROWS_AS(form("union(cantor,pt)"), StructureError);
}

TEST_CASE("involutions and the translation") {
  for (const char* s : {"cantor", "cseq(pt)"}) {
    CAPTURE(std::string(s));
    const auto sf = form(s);
    const auto& m = *sf->model();
    const Homeo id = identity(sf->model());
    CHECK(eq_to_depth(compose(sf->tau(), sf->tau()), id, 8));
    CHECK(eq_to_depth(compose(sf->sigma(), sf->sigma()), id, 8));
    CHECK(eq_to_depth(sf->phi(), compose(sf->sigma(), sf->tau()), 8));
    CHECK(image_region(*sf->tau(), sf->chain(0)) == sf->chain(-1));
    CHECK(image_region(*sf->sigma(), sf->chain(0)) == sf->chain(1));
    CHECK(image_region(*sf->phi(), sf->chain(0)) == sf->chain(2));
    CHECK(image_region(*sf->phi(), sf->chain(-3)) == sf->chain(-1));
    CHECK(eq_to_depth(sf->translation(2), compose(sf->phi(), sf->phi()), 8));
    CHECK(eq_to_depth(sf->translation(-1), inverse(sf->phi()), 8));
    // φ moves U_i up by two, so only cells below U_-2 stay on the y side
    for (std::size_t k = 5; k < 12; ++k) {
      CHECK(sf->y().in_cell(*sf->phi()->forward(sf->y().cell_at(k)).hull()));
      CHECK(sf->z().in_cell(*sf->phi()->forward(sf->z().cell_at(k)).hull()));
    }
    (void)m;
  }
}

TEST_CASE("swindle") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  const Homeo id = identity(sf->model());
  CHECK(eq_to_depth(swindle_hat(id, sf), id, 8));
  // swap 0.1.0.0 and 0.1.0.1 inside U_0 = {0.1}
  const Homeo f = cell_permutation(sf->model(), random_supported_permutation(m, sf->chain(0), 3));
  const Homeo hat = swindle_hat(f, sf);
  CHECK(eq_to_depth(commutator(hat, inverse(sf->phi())), f, 8));
  CHECK(is_identity_outside(*hat, unite(m, sf->chain(0), Region{sf->y_ray_cell(-1)}), 8));
  for (int k = 1; k <= 3; ++k) {
    const Homeo moved = compose({sf->translation(-k), f, sf->translation(k)});
    for (const auto& c : sf->chain(-2 * k))
      for (const auto& s : m.cells_at_depth_under(c, c.size() + 3))
        CHECK(image_cells(*hat, s, s.size()) == image_cells(*moved, s, s.size()));
  }
  const Homeo outside = cell_permutation(sf->model(), random_cell_permutation(m, 5));
  CHECK_THROWS_AS(swindle_hat(outside, sf), StructureError);
}

TEST_CASE("half-spaces") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  CHECK(find_halfspace_in(sf->chain(5), *sf).cells == sf->chain(5));
  const Region rest = complement(m, unite(m, sf->chain(0), sf->chain(1)));
  const HalfSpace h = find_halfspace_in(rest, *sf);
  CHECK(is_halfspace(m, h.cells));
  CHECK(contains(m, rest, h.cells));
  CHECK(h.cells == cells(m, {"0.0"}));
  auto [a, b] = split_halfspace(HalfSpace{sf->chain(0)}, *sf);
  CHECK(is_halfspace(m, a.cells));
  CHECK(is_halfspace(m, b.cells));
  CHECK(disjoint(m, a.cells, b.cells));
  CHECK(contains(m, sf->chain(0), unite(m, a.cells, b.cells)));
  auto [c, d] = split_halfspace(a, *sf);
  CHECK(disjoint(m, c.cells, d.cells));

  const auto q = form("cseq(pt)");
  CHECK_THROWS_AS(find_halfspace_in(cells(*q->model(), {"C0"}), *q), StructureError);
  CHECK_FALSE(is_halfspace(*q->model(), Region{Address{}}));
}

TEST_CASE("move_halfspace") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  const Region h3 = complement(m, sf->chain(0));
  const Homeo mv = move_halfspace(sf->chain(2), sf->chain(4), h3, sf->chain(-1), *sf);
  CHECK(image_region(*mv, sf->chain(2)) == sf->chain(4));
  CHECK(is_identity_outside(*mv, h3, 8));
  CHECK(eq_to_depth(compose(mv, inverse(mv)), identity(sf->model()), 8));
  CHECK(move_halfspace(sf->chain(2), sf->chain(2), h3, sf->chain(-1), *sf)->is_identity());
  CHECK_THROWS(move_halfspace(sf->chain(2), sf->chain(4), sf->chain(2), sf->chain(-1), *sf));
}

TEST_CASE("expressions") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  ExprContext ctx(sf);
  ctx.define("s", Json::parse(R"({"op":"perm","table":[{"from":"0","to":"1"},{"from":"1","to":"0"}]})"));
  ctx.define("t", comp_expr({ref_expr("s"), generator_expr("tau"), inv_expr(ref_expr("s"))}));
  CHECK(eq_to_depth(ctx.ref("t"), compose({ctx.ref("s"), sf->tau(), inverse(ctx.ref("s"))}), 8));
  CHECK(eq_to_depth(ctx.eval(Json::parse(R"({"op":"phi"})")), sf->phi(), 8));
  CHECK(parse_perm_table(m, Json::parse(R"([{"from":"0","to":"0"},{"from":"1","to":"1"}])")).entries.size() == 2);
  CHECK(parse_region_json(m, region_json(m, sf->chain(3))) == sf->chain(3));
  CHECK_THROWS_AS(ctx.eval(Json::parse(R"({"op":"nope"})")), ExprError);
  CHECK_THROWS_AS(ctx.eval(Json::parse(R"({"ref":"missing"})")), ExprError);
  ctx.define("loop", ref_expr("loop"));
  CHECK_THROWS_AS(ctx.ref("loop"), ExprError);
  CHECK_THROWS(ctx.eval(Json::parse(R"({"op":"perm","table":[{"from":"0","to":"1"}]})")));
  ExprContext bare(sf->model());
  CHECK_THROWS_AS(bare.eval(generator_expr("tau")), ExprError);
}

TEST_CASE("half-space factorization") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  {
    ExprContext ctx(sf);
    ctx.define("g", Json::parse(R"({"op":"id"})"));
    CHECK(factor_into_halfspace_supported(ctx, "g").empty());
  }
  for (std::uint64_t seed : {0u, 1u, 9u, 43u}) {
    ExprContext ctx(sf);
    ctx.define("g", perm_expr(m, random_cell_permutation(m, seed)));
    const auto fs = factor_into_halfspace_supported(ctx, "g");
    CAPTURE(seed);
    CHECK(fs.size() <= 3);
    std::vector<Homeo> hs;
    for (const auto& f : fs) {
      CHECK(is_halfspace(m, complement(m, f.support)));
      CHECK(is_identity_outside(*ctx.ref(f.name), f.support, 8));
      hs.push_back(ctx.ref(f.name));
    }
    CHECK(eq_to_depth(compose(hs), ctx.ref("g"), 8));
  }
  ExprContext ctx(sf);
  ctx.define("g", generator_expr("phi"));
  const auto fs = factor_into_halfspace_supported(ctx, "g");
  CHECK(fs.size() <= 3);
}

TEST_CASE("factor_into_involutions and certificates") {
  const auto sf = form("cantor");
  const auto& m = *sf->model();
  const Certificate id = factor_into_involutions(sf, Json::parse(R"({"op":"id"})"));
  CHECK(id.pass);
  CHECK(id.word.empty());
  CHECK(id.counts == Counts{0, 0, 0});

  const Certificate phi = factor_into_involutions(sf, generator_expr("phi"));
  CHECK(phi.pass);
  CHECK(phi.counts == Counts{0, 1, 2});

  const Certificate tau = factor_into_involutions(sf, generator_expr("tau"));
  CHECK(tau.counts == Counts{0, 0, 1});

  const Certificate sw = swindle_factor(sf, perm_expr(m, random_supported_permutation(m, sf->chain(0), 1)));
  CHECK(sw.pass);
  CHECK(sw.counts == Counts{1, 2, 4});
  CHECK_THROWS_AS(swindle_factor(sf, perm_expr(m, random_cell_permutation(m, 5))), StructureError);

  const Certificate c = factor_into_involutions(sf, perm_expr(m, random_cell_permutation(m, 43)));
  REQUIRE(c.pass);
  CHECK(c.counts == Counts{3, 6, 12});
  const Json j = to_json(c);
  CHECK(j.at("format") == "cert-v1");
  CHECK(j.at("verdict") == "pass");
  const Certificate back = certificate_from_json(Json::parse(j.dump()));
  CHECK(back.word == c.word);
  CHECK(to_json(back) == j);
  CHECK(verify_certificate(back, 8).pass);

  Certificate bad = back;
  bad.word[5].generator = bad.word[5].generator == "tau" ? "sigma" : "tau";
  const auto v = verify_certificate(bad, 8);
  CHECK_FALSE(v.pass);
  CHECK(v.disagreement.has_value());

  bad = back;
  bad.counts.involutions = 11;
  CHECK_FALSE(verify_certificate(bad, 8).pass);

  bad = back;
  bad.word[0].generator = "phi";
  CHECK_FALSE(verify_certificate(bad, 8).pass);

  Json broken = j;
  broken.erase("word");
  CHECK_THROWS_AS(certificate_from_json(broken), ExprError);
  broken = j;
  broken["format"] = "cert-v0";
  CHECK_THROWS_AS(certificate_from_json(broken), ExprError);
}

TEST_CASE("factorization is deterministic") {
  const auto a = form("cseq(pt)");
  const auto b = form("cseq(pt)");
  const auto& m = *a->model();
  const Json g = perm_expr(m, random_cell_permutation(m, 17));
  CHECK(to_json(factor_into_involutions(a, g)).dump() == to_json(factor_into_involutions(b, g)).dump());
}
