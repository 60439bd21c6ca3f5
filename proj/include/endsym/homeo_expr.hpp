#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endsym/lazy_homeo.hpp"
#include "endsym/standard_form.hpp"

namespace endsym {

using Json = nlohmann::json;

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Homeomorphism expressions as JSON:
///   {"op":"id"} | {"op":"tau"} | {"op":"sigma"} | {"op":"phi"}
///   {"op":"perm","table":[{"from":<addr>,"to":<addr>},...]}
///   {"op":"inv","of":E} | {"op":"comp","of":[E,...]}   (first factor applied last)
///   {"op":"bnf","pieces":[{"from":[<addr>...],"to":[<addr>...]},...]}
///   {"op":"restrict","of":E,"to":[<addr>...]} | {"op":"hat","of":E}
///   {"ref":<name>}
/// Addresses are rendered token strings; "" is the whole space.
class ExprContext {
 public:
  explicit ExprContext(StandardFormPtr sf);
  /// Without a standard form; tau, sigma, phi and hat are unavailable.
  explicit ExprContext(ModelPtr m);

  const ModelPtr& model() const { return model_; }
  const StandardFormPtr& standard_form() const;

  void define(const std::string& name, Json expr);
  bool defined(const std::string& name) const { return defs_.contains(name); }
  const Json& definitions() const { return defs_; }

  Homeo ref(const std::string& name);
  Homeo eval(const Json& e);

 private:
  ModelPtr model_;
  StandardFormPtr sf_;
  Json defs_ = Json::object();
  std::map<std::string, Homeo> cache_;
  std::set<std::string> evaluating_;
};

Json address_json(const AddressModel& m, const Address& a);
Address parse_address_json(const AddressModel& m, const Json& j);
Json region_json(const AddressModel& m, const Region& r);
Region parse_region_json(const AddressModel& m, const Json& j);

Json perm_expr(const AddressModel& m, const PermTable& t);
/// Accepts {"op":"perm","table":[...]}, {"table":[...]} or a bare array.
PermTable parse_perm_table(const AddressModel& m, const Json& j);

Json ref_expr(const std::string& name);
Json inv_expr(Json e);
Json comp_expr(std::vector<Json> es);
Json restrict_expr(const AddressModel& m, Json e, const Region& r);
Json hat_expr(Json e);
Json generator_expr(const std::string& op);
/// Piecewise back-and-forth map; pieces pair regions (from, to).
Json bnf_expr(const AddressModel& m, const std::vector<std::pair<Region, Region>>& pieces);
/// bnf sending h1 onto h2, (h3 minus h1) onto (h3 minus h2), fixing the rest.
Json move_expr(const AddressModel& m, const Region& h1, const Region& h2, const Region& h3);

}  // namespace endsym
