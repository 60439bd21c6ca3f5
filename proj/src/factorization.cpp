#include "endsym/factorization.hpp"

#include "endsym/relation.hpp"

namespace endsym {

namespace {

bool trivial(ExprContext& ctx, const std::string& name, std::size_t depth) {
  return eq_to_depth(*ctx.ref(name), *identity(ctx.model()), depth);
}

// Case H1ᶜ ∩ H2ᶜ holds a half-space: cur = a ∘ b with a supported off H3
// and b supported off H1.
void two_factor_case(ExprContext& ctx, const std::string& cur, std::size_t depth,
                     std::vector<HalfspaceFactor>& out) {
  const auto& sf = ctx.standard_form();
  const AddressModel& m = *ctx.model();
  const Region h1 = sf->chain(0);
  const Region h2 = image_region(*ctx.ref(cur), h1);
  const Region outside = complement(m, unite(m, h1, h2));
  const auto [h3, h4] = split_halfspace(find_halfspace_in(outside, *sf), *sf);
  const Region support_a = complement(m, h3.cells);
  const Region support_b = complement(m, h1);

  ctx.define("phi1", move_expr(m, h2, h1, support_a));
  // φ2 undoes φ1∘cur on H1, φ3 undoes φ2∘φ1∘cur on the rest
  ctx.define("phi2", restrict_expr(m, inv_expr(comp_expr({ref_expr("phi1"), ref_expr(cur)})), h1));
  ctx.define("phi3", restrict_expr(m, inv_expr(comp_expr({ref_expr("phi2"), ref_expr("phi1"), ref_expr(cur)})),
                                   support_b));
  ctx.define("k_a", inv_expr(comp_expr({ref_expr("phi2"), ref_expr("phi1")})));
  ctx.define("k_b", inv_expr(ref_expr("phi3")));
  if (!trivial(ctx, "k_a", depth)) out.push_back({"k_a", support_a});
  if (!trivial(ctx, "k_b", depth)) out.push_back({"k_b", support_b});
}

void add_factor(ExprContext& ctx, const HalfspaceFactor& k, std::size_t n, Certificate& cert) {
  const auto& sf = ctx.standard_form();
  const AddressModel& m = *ctx.model();
  const Region u0 = sf->chain(0);
  const Region support = normalize(m, k.support);
  const std::string suffix = std::to_string(n);
  std::vector<ConjugatorRef> outer;
  std::string f = k.name;
  if (support != u0) {
    const std::string rho = "rho" + suffix;
    ctx.define(rho, bnf_expr(m, {{support, u0}, {complement(m, support), complement(m, u0)}}));
    f = "f" + suffix;
    ctx.define(f, comp_expr({ref_expr(rho), ref_expr(k.name), inv_expr(ref_expr(rho))}));
    outer.push_back({rho, true});
  }
  const std::string hat = "hat" + suffix;
  ctx.define(hat, hat_expr(ref_expr(f)));
  ctx.ref(hat);
  auto with_hat = outer;
  with_hat.push_back({hat, false});
  // ρ^-1 f̂ φ^-1 f̂^-1 φ ρ with φ^-1 = τσ and φ = στ
  cert.word.push_back({"tau", with_hat});
  cert.word.push_back({"sigma", with_hat});
  cert.word.push_back({"sigma", outer});
  cert.word.push_back({"tau", outer});
  cert.factors.push_back({support, k.name, hat, outer});
}

void finish(ExprContext& ctx, Certificate& cert, std::size_t depth) {
  cert.counts = implied_counts(cert);
  cert.definitions = ctx.definitions();
  cert.verified_depth = depth;
  const Homeo target = ctx.ref(cert.target);
  const Homeo product = word_product(ctx, cert.word);
  cert.pass = eq_to_depth(*product, *target, depth);
  if (!cert.pass) {
    if (auto cell = first_disagreement(*product, *target, depth)) cert.disagreement = ctx.model()->render(*cell);
  }
}

bool shortcut(ExprContext& ctx, const Homeo& g, std::size_t depth, Certificate& cert) {
  const auto& sf = ctx.standard_form();
  if (eq_to_depth(*g, *identity(ctx.model()), depth)) return true;
  const std::vector<std::pair<Homeo, std::vector<std::string>>> known{
      {sf->phi(), {"sigma", "tau"}},
      {inverse(sf->phi()), {"tau", "sigma"}},
      {sf->tau(), {"tau"}},
      {sf->sigma(), {"sigma"}},
  };
  for (const auto& [h, gens] : known) {
    if (!eq_to_depth(*g, *h, depth)) continue;
    for (const auto& gen : gens) cert.word.push_back({gen, {}});
    return true;
  }
  return false;
}

}  // namespace

std::vector<HalfspaceFactor> factor_into_halfspace_supported(ExprContext& ctx, const std::string& target,
                                                             std::size_t depth) {
  const auto& sf = ctx.standard_form();
  const AddressModel& m = *ctx.model();
  std::vector<HalfspaceFactor> out;
  if (trivial(ctx, target, depth)) return out;
  const Region h1 = sf->chain(0);
  const Region h2 = image_region(*ctx.ref(target), h1);
  if (contains_maximal_end(m, complement(m, unite(m, h1, h2)))) {
    two_factor_case(ctx, target, depth, out);
    return out;
  }
  const Region inside = subtract(m, h1, h2);
  if (!contains_maximal_end(m, inside)) throw StructureError("no half-space beside H1 and g(H1)");
  // three disjoint half-spaces H3, H4, H5 in H1 \ H2; ψ moves H2 onto H5
  const auto [h3, rest] = split_halfspace(find_halfspace_in(inside, *sf), *sf);
  const auto [h4, h5] = split_halfspace(rest, *sf);
  const Region support = complement(m, h3.cells);
  ctx.define("psi", move_expr(m, h2, h5.cells, support));
  ctx.define("psi_inv", inv_expr(ref_expr("psi")));
  ctx.define("g1", comp_expr({ref_expr("psi"), ref_expr(target)}));
  if (!trivial(ctx, "psi_inv", depth)) out.push_back({"psi_inv", support});
  if (!trivial(ctx, "g1", depth)) two_factor_case(ctx, "g1", depth, out);
  return out;
}

Certificate swindle_factor(const StandardFormPtr& sf, const Json& f, std::size_t depth) {
  Certificate cert;
  cert.descriptor = sf->model()->root();
  cert.target = "f";
  ExprContext ctx(sf);
  ctx.define("f", f);
  if (!is_identity_outside(*ctx.ref("f"), sf->chain(0), depth))
    throw StructureError("swindle input is not supported on U_0");
  if (!trivial(ctx, "f", depth)) add_factor(ctx, {"f", sf->chain(0)}, 1, cert);
  finish(ctx, cert, depth);
  return cert;
}

Certificate factor_into_involutions(const StandardFormPtr& sf, const Json& g, std::size_t depth) {
  Certificate cert;
  cert.descriptor = sf->model()->root();
  cert.target = "g";
  ExprContext ctx(sf);
  ctx.define("g", g);
  if (!shortcut(ctx, ctx.ref("g"), depth, cert)) {
    const auto factors = factor_into_halfspace_supported(ctx, "g", depth);
    for (std::size_t i = 0; i < factors.size(); ++i) add_factor(ctx, factors[i], i + 1, cert);
  }
  finish(ctx, cert, depth);
  return cert;
}

}  // namespace endsym
