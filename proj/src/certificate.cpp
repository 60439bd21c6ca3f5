#include "endsym/certificate.hpp"

#include "endsym/relation.hpp"

namespace endsym {

namespace {

Json conj_json(const std::vector<ConjugatorRef>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back({{"ref", c.ref}, {"inverse", c.inverse}});
  return out;
}

std::vector<ConjugatorRef> parse_conj(const Json& j) {
  if (!j.is_array()) throw ExprError("conjugator must be a list");
  std::vector<ConjugatorRef> out;
  for (const auto& c : j) {
    if (!c.is_object() || !c.contains("ref") || !c.at("ref").is_string())
      throw ExprError("conjugator entry needs a ref");
    out.push_back({c.at("ref").get<std::string>(), c.value("inverse", false)});
  }
  return out;
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ExprError(std::string("certificate lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ExprError(std::string("certificate field '") + key + "' has the wrong type");
  }
}

bool is_translation_pair(const std::vector<WordElement>& w) {
  if (w.size() != 2 || !w[0].conjugator.empty() || !w[1].conjugator.empty()) return false;
  return (w[0].generator == "sigma" && w[1].generator == "tau") ||
         (w[0].generator == "tau" && w[1].generator == "sigma");
}

}  // namespace

Json to_json(const Certificate& c) {
  Json word = Json::array();
  for (const auto& w : c.word)
    word.push_back({{"kind", "involution"}, {"generator", w.generator}, {"conjugator", conj_json(w.conjugator)}});
  Json factors = Json::array();
  const ModelPtr m = c.factors.empty() ? nullptr : realize(c.descriptor);
  for (const auto& f : c.factors) {
    factors.push_back({{"support", region_json(*m, f.support)},
                       {"factor", f.factor},
                       {"commutator", {{"hat", f.hat}, {"translation", "phi"}, {"conjugator", conj_json(f.conjugator)}}}});
  }
  Json out = {{"format", kCertificateFormat},
              {"descriptor", print_descriptor(c.descriptor)},
              {"target", c.target},
              {"definitions", c.definitions},
              {"word", word},
              {"factors", factors},
              {"counts",
               {{"commutators", c.counts.commutators},
                {"translations", c.counts.translations},
                {"involutions", c.counts.involutions}}},
              {"verified_depth", c.verified_depth},
              {"verdict", c.pass ? "pass" : "fail"}};
  if (c.disagreement) out["disagreement"] = *c.disagreement;
  return out;
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw ExprError("certificate must be an object");
  if (get<std::string>(j, "format") != kCertificateFormat) throw ExprError("unsupported certificate format");
  Certificate c;
  try {
    c.descriptor = canonicalize(parse_descriptor(get<std::string>(j, "descriptor")));
  } catch (const std::exception& e) {
    throw ExprError(std::string("certificate descriptor: ") + e.what());
  }
  c.target = get<std::string>(j, "target");
  c.definitions = get<Json>(j, "definitions");
  if (!c.definitions.is_object()) throw ExprError("definitions must be an object");
  const Json word = get<Json>(j, "word");
  if (!word.is_array()) throw ExprError("word must be a list");
  for (const auto& w : word) {
    if (get<std::string>(w, "kind") != "involution") throw ExprError("word element must be an involution");
    c.word.push_back({get<std::string>(w, "generator"), parse_conj(get<Json>(w, "conjugator"))});
  }
  const Json factors = get<Json>(j, "factors");
  if (!factors.is_array()) throw ExprError("factors must be a list");
  const ModelPtr m = realize(c.descriptor);
  for (const auto& f : factors) {
    FactorRecord r;
    r.support = parse_region_json(*m, get<Json>(f, "support"));
    r.factor = get<std::string>(f, "factor");
    const Json comm = get<Json>(f, "commutator");
    r.hat = get<std::string>(comm, "hat");
    r.conjugator = parse_conj(get<Json>(comm, "conjugator"));
    c.factors.push_back(std::move(r));
  }
  const Json counts = get<Json>(j, "counts");
  c.counts = {get<std::size_t>(counts, "commutators"), get<std::size_t>(counts, "translations"),
              get<std::size_t>(counts, "involutions")};
  c.verified_depth = get<std::size_t>(j, "verified_depth");
  const auto verdict = get<std::string>(j, "verdict");
  if (verdict != "pass" && verdict != "fail") throw ExprError("verdict must be pass or fail");
  c.pass = verdict == "pass";
  if (j.contains("disagreement")) c.disagreement = get<std::string>(j, "disagreement");
  return c;
}

Homeo word_element(ExprContext& ctx, const WordElement& w) {
  if (w.generator != "tau" && w.generator != "sigma")
    throw ExprError("unknown generator '" + w.generator + "'");
  const Homeo gen = ctx.eval(generator_expr(w.generator));
  if (w.conjugator.empty()) return gen;
  std::vector<Homeo> c;
  for (const auto& r : w.conjugator) {
    Homeo h = ctx.ref(r.ref);
    c.push_back(r.inverse ? inverse(h) : h);
  }
  const Homeo conj = compose(c);
  return compose({conj, gen, inverse(conj)});
}

Homeo word_product(ExprContext& ctx, const std::vector<WordElement>& word) {
  if (word.empty()) return identity(ctx.model());
  std::vector<Homeo> hs;
  for (const auto& w : word) hs.push_back(word_element(ctx, w));
  return compose(std::move(hs));
}

Counts implied_counts(const Certificate& c) {
  Counts k;
  k.involutions = c.word.size();
  k.commutators = c.factors.size();
  k.translations = 2 * c.factors.size();
  if (c.factors.empty() && is_translation_pair(c.word)) k.translations = 1;
  return k;
}

Verification verify_certificate(const Certificate& c, std::size_t depth) {
  Verification v;
  if (c.counts != implied_counts(c)) {
    v.reason = "counts do not match the word";
    return v;
  }
  if (c.counts.commutators > kFactorBounds.commutators || c.counts.translations > kFactorBounds.translations ||
      c.counts.involutions > kFactorBounds.involutions) {
    v.reason = "counts exceed (3, 6, 12)";
    return v;
  }
  try {
    auto sf = StandardForm::build(c.descriptor);
    ExprContext ctx(sf);
    for (const auto& [name, e] : c.definitions.items()) ctx.define(name, e);
    const Homeo target = ctx.ref(c.target);
    for (const auto& f : c.factors) {
      ctx.ref(f.factor);
      ctx.ref(f.hat);
    }
    const Homeo product = word_product(ctx, c.word);
    if (!eq_to_depth(*product, *target, depth)) {
      v.reason = "word does not recompose to the target at depth " + std::to_string(depth);
      if (auto cell = first_disagreement(*product, *target, depth)) v.disagreement = sf->model()->render(*cell);
      return v;
    }
  } catch (const std::exception& e) {
    v.reason = e.what();
    return v;
  }
  v.pass = true;
  v.reason = "ok";
  return v;
}

}  // namespace endsym
