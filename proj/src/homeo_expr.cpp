#include "endsym/homeo_expr.hpp"

#include "endsym/back_and_forth.hpp"

namespace endsym {

ExprContext::ExprContext(StandardFormPtr sf) : model_(sf->model()), sf_(std::move(sf)) {}

ExprContext::ExprContext(ModelPtr m) : model_(std::move(m)) {}

const StandardFormPtr& ExprContext::standard_form() const {
  if (!sf_) throw ExprError("expression needs a uniformly self-similar space");
  return sf_;
}

void ExprContext::define(const std::string& name, Json expr) {
  if (name.empty()) throw ExprError("empty definition name");
  if (defs_.contains(name)) throw ExprError("duplicate definition '" + name + "'");
  defs_[name] = std::move(expr);
}

Homeo ExprContext::ref(const std::string& name) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  if (!defs_.contains(name)) throw ExprError("undefined reference '" + name + "'");
  if (!evaluating_.insert(name).second) throw ExprError("cyclic definition '" + name + "'");
  Homeo h;
  try {
    h = eval(defs_.at(name));
  } catch (...) {
    evaluating_.erase(name);
    throw;
  }
  evaluating_.erase(name);
  cache_.emplace(name, h);
  return h;
}

namespace {

const Json& field(const Json& e, const char* key) {
  if (!e.is_object() || !e.contains(key)) throw ExprError(std::string("expression lacks '") + key + "'");
  return e.at(key);
}

}  // namespace

Homeo ExprContext::eval(const Json& e) {
  if (!e.is_object()) throw ExprError("expression must be an object");
  if (e.contains("ref")) {
    if (!e.at("ref").is_string()) throw ExprError("ref must be a string");
    return ref(e.at("ref").get<std::string>());
  }
  const Json& opj = field(e, "op");
  if (!opj.is_string()) throw ExprError("op must be a string");
  const std::string op = opj.get<std::string>();
  if (op == "id") return identity(model_);
  if (op == "tau") return standard_form()->tau();
  if (op == "sigma") return standard_form()->sigma();
  if (op == "phi") return standard_form()->phi();
  if (op == "perm") return cell_permutation(model_, parse_perm_table(*model_, e));
  if (op == "inv") return inverse(eval(field(e, "of")));
  if (op == "comp") {
    const Json& of = field(e, "of");
    if (!of.is_array() || of.empty()) throw ExprError("comp needs a non-empty list");
    std::vector<Homeo> hs;
    for (const auto& x : of) hs.push_back(eval(x));
    return compose(std::move(hs));
  }
  if (op == "restrict") return restrict_to(eval(field(e, "of")), parse_region_json(*model_, field(e, "to")));
  if (op == "hat") return swindle_hat(eval(field(e, "of")), standard_form());
  if (op == "bnf") {
    const Json& ps = field(e, "pieces");
    if (!ps.is_array() || ps.empty()) throw ExprError("bnf needs pieces");
    std::vector<Piece> pieces;
    for (const auto& p : ps) {
      Region from = parse_region_json(*model_, field(p, "from"));
      Region to = parse_region_json(*model_, field(p, "to"));
      Homeo h = from == to ? identity(model_) : back_and_forth(model_, from, to);
      pieces.push_back({std::move(from), std::move(to), std::move(h)});
    }
    return piecewise(model_, std::move(pieces));
  }
  throw ExprError("unknown op '" + op + "'");
}

Json address_json(const AddressModel& m, const Address& a) { return m.render(a); }

Address parse_address_json(const AddressModel& m, const Json& j) {
  if (!j.is_string()) throw ExprError("address must be a string");
  try {
    return m.parse_address(j.get<std::string>());
  } catch (const std::invalid_argument& err) {
    throw ExprError(err.what());
  }
}

Json region_json(const AddressModel& m, const Region& r) {
  Json out = Json::array();
  for (const auto& c : r) out.push_back(address_json(m, c));
  return out;
}

Region parse_region_json(const AddressModel& m, const Json& j) {
  if (!j.is_array()) throw ExprError("region must be a list of addresses");
  Region r;
  for (const auto& a : j) r.push_back(parse_address_json(m, a));
  return normalize(m, std::move(r));
}

Json perm_expr(const AddressModel& m, const PermTable& t) {
  Json table = Json::array();
  for (const auto& [a, b] : t.entries) table.push_back({{"from", m.render(a)}, {"to", m.render(b)}});
  return {{"op", "perm"}, {"table", table}};
}

PermTable parse_perm_table(const AddressModel& m, const Json& j) {
  const Json* table = &j;
  if (j.is_object()) table = &field(j, "table");
  if (!table->is_array()) throw ExprError("table must be a list");
  PermTable t;
  for (const auto& row : *table)
    t.entries.emplace_back(parse_address_json(m, field(row, "from")), parse_address_json(m, field(row, "to")));
  return t;
}

Json ref_expr(const std::string& name) { return {{"ref", name}}; }
Json inv_expr(Json e) { return {{"op", "inv"}, {"of", std::move(e)}}; }
Json comp_expr(std::vector<Json> es) { return {{"op", "comp"}, {"of", Json(std::move(es))}}; }
Json restrict_expr(const AddressModel& m, Json e, const Region& r) {
  return {{"op", "restrict"}, {"of", std::move(e)}, {"to", region_json(m, r)}};
}
Json hat_expr(Json e) { return {{"op", "hat"}, {"of", std::move(e)}}; }
Json generator_expr(const std::string& op) { return {{"op", op}}; }

Json bnf_expr(const AddressModel& m, const std::vector<std::pair<Region, Region>>& pieces) {
  Json ps = Json::array();
  for (const auto& [from, to] : pieces) {
    if (from.empty() && to.empty()) continue;
    ps.push_back({{"from", region_json(m, from)}, {"to", region_json(m, to)}});
  }
  return {{"op", "bnf"}, {"pieces", ps}};
}

Json move_expr(const AddressModel& m, const Region& h1, const Region& h2, const Region& h3) {
  if (h1 == h2) return generator_expr("id");
  const Region rest = complement(m, h3);
  return bnf_expr(m, {{h1, h2}, {subtract(m, h3, h1), subtract(m, h3, h2)}, {rest, rest}});
}

}  // namespace endsym
