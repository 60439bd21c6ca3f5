#include "endsym/endspace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <cstdint>

namespace endsym {

Cardinality Cardinality::operator+(const Cardinality& o) const {
  if (kind == Kind::continuum || o.kind == Kind::continuum) return continuum();
  if (kind == Kind::countably_infinite || o.kind == Kind::countably_infinite)
    return countable();
  return finite(count + o.count);
}

Cardinality Cardinality::times_countable() const {
  if (kind == Kind::continuum) return *this;
  if (kind == Kind::finite && count == 0) return *this;
  return countable();
}

std::string to_string(const Cardinality& c) {
  switch (c.kind) {
    case Cardinality::Kind::finite:
      return "finite(" + std::to_string(c.count) + ")";
    case Cardinality::Kind::countably_infinite:
      return "countably_infinite";
    case Cardinality::Kind::continuum:
      return "continuum";
  }
  return "?";
}

CBAnalysis cb_analysis(const Descriptor& d) {
  CBAnalysis out;
  Descriptor cur = canonicalize(d);
  for (std::size_t steps = 1;; ++steps) {
    auto next = derivative(cur);
    if (!next) {
      out.scattered_rank = Ordinal(steps);
      out.top_multiplicity = count_ends(cur).value();
      return out;
    }
    if (*next == cur) {
      out.perfect_kernel = cur;
      return out;
    }
    cur = *next;
  }
}

namespace {

std::optional<Descriptor> nth_derivative(Descriptor d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    auto next = derivative(d);
    if (!next) return std::nullopt;
    d = *next;
  }
  return d;
}

std::size_t finite_rank(const CBAnalysis& cb) {
  return static_cast<std::size_t>(cb.scattered_rank->finite_value());
}

std::string mark_suffix(Marking m) { return m == Marking::genus ? "[g]" : ""; }

}  // namespace

std::string homeomorphism_key(const Descriptor& d, bool* exact) {
  const bool mixed = d.has_genus_end() && d.has_planar_end();
  if (!mixed) {
    const Marking m = d.has_genus_end() ? Marking::genus : Marking::planar;
    const auto cb = cb_analysis(d);
    if (cb.countable())
      return "ord(" + std::to_string(finite_rank(cb)) + "," +
             std::to_string(*cb.top_multiplicity) + ")" + mark_suffix(m);
    if (*cb.perfect_kernel == canonicalize(d)) return "cantor" + mark_suffix(m);
  } else if (exact && cb_analysis(d).countable()) {
    *exact = false;
  }
  switch (d.kind()) {
    case Kind::point:
    case Kind::cantor:
      return print_descriptor(d);
    case Kind::omega:
      return "omega" + mark_suffix(d.marking()) + "(" + homeomorphism_key(d.inner(), exact) + ")";
    case Kind::cseq: {
      // the number of copies attached at each site does not matter
      std::set<std::string> parts;
      if (d.inner().kind() == Kind::finite_union) {
        for (const auto& c : d.inner().children()) parts.insert(homeomorphism_key(c, exact));
      } else {
        parts.insert(homeomorphism_key(d.inner(), exact));
      }
      std::string out = "cseq" + mark_suffix(d.marking()) + "(";
      bool first = true;
      for (const auto& p : parts) {
        if (!first) out += "|";
        out += p;
        first = false;
      }
      return out + ")";
    }
    case Kind::finite_union:
      break;
  }
  std::vector<std::string> parts;
  for (const auto& c : d.children()) parts.push_back(homeomorphism_key(c, exact));
  std::sort(parts.begin(), parts.end());
  std::string out = "union(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out + ")";
}

namespace {

void collect_germs(const Descriptor& d, NodePath& path, bool copies, std::vector<Germ>& out) {
  auto own = [&](Cardinality single) { return copies ? single.times_countable() : single; };
  switch (d.kind()) {
    case Kind::point:
      out.push_back({path, d, homeomorphism_key(d), own(Cardinality::finite(1))});
      return;
    case Kind::cantor:
      out.push_back({path, d, homeomorphism_key(d), Cardinality::continuum()});
      return;
    case Kind::omega:
      out.push_back({path, d, homeomorphism_key(d), own(Cardinality::finite(1))});
      path.push_back(0);
      collect_germs(d.inner(), path, true, out);
      path.pop_back();
      return;
    case Kind::cseq:
      out.push_back({path, d, homeomorphism_key(d), Cardinality::continuum()});
      path.push_back(0);
      collect_germs(d.inner(), path, true, out);
      path.pop_back();
      return;
    case Kind::finite_union:
      for (std::size_t i = 0; i < d.children().size(); ++i) {
        path.push_back(i);
        collect_germs(d.children()[i], path, copies, out);
        path.pop_back();
      }
      return;
  }
}

std::set<std::string> sub_keys(const Descriptor& node) {
  std::set<std::string> keys;
  for (const auto& g : germs(node)) keys.insert(g.key);
  return keys;
}

}  // namespace

std::vector<Germ> germs(const Descriptor& d) {
  std::vector<Germ> out;
  NodePath path;
  collect_germs(d, path, false, out);
  return out;
}

bool ClassPoset::less(std::size_t a, std::size_t b) const {
  return std::find(strict_order.begin(), strict_order.end(), std::pair{a, b}) !=
         strict_order.end();
}

std::vector<std::size_t> ClassPoset::maximal() const {
  std::vector<std::size_t> out;
  for (const auto& c : classes)
    if (c.is_maximal) out.push_back(c.id);
  return out;
}

std::vector<std::size_t> ClassPoset::immediate_predecessors(std::size_t id) const {
  std::vector<std::size_t> out;
  for (const auto& a : classes) {
    if (!less(a.id, id)) continue;
    bool covered = true;
    for (const auto& b : classes)
      if (less(a.id, b.id) && less(b.id, id)) covered = false;
    if (covered) out.push_back(a.id);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> ClassPoset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : classes)
    for (auto p : immediate_predecessors(c.id)) out.emplace_back(p, c.id);
  return out;
}

ClassPoset end_classes(const Descriptor& d_in) {
  const Descriptor d = canonicalize(d_in);
  ClassPoset poset;
  bool exact = true;
  homeomorphism_key(d, &exact);
  poset.exact = exact;

  const auto all = germs(d);
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> key_index;
  for (const auto& g : all) {
    if (key_index.emplace(g.key, keys.size()).second) keys.push_back(g.key);
  }
  const std::size_t k = keys.size();
  // below[i][j]: germs of key i occur inside some germ of key j
  std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));
  for (const auto& g : all) {
    const auto j = key_index.at(g.key);
    for (const auto& sub : sub_keys(g.node)) {
      auto it = key_index.find(sub);
      if (it != key_index.end()) below[it->second][j] = true;
    }
  }
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (below[i][m])
        for (std::size_t j = 0; j < k; ++j)
          if (below[m][j]) below[i][j] = true;

  std::vector<std::size_t> class_of(k, SIZE_MAX);
  for (std::size_t i = 0; i < k; ++i) {
    if (class_of[i] != SIZE_MAX) continue;
    const std::size_t id = poset.classes.size();
    for (std::size_t j = i; j < k; ++j)
      if (j == i || (below[i][j] && below[j][i])) class_of[j] = id;
    EndClass c;
    c.id = id;
    c.cardinality = Cardinality::finite(0);
    poset.classes.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < k; ++i) poset.classes[class_of[i]].member_keys.push_back(keys[i]);
  for (const auto& g : all) {
    auto& c = poset.classes[class_of[key_index.at(g.key)]];
    if (c.key.empty()) {
      c.key = g.key;
      c.representative_locus = g.locus;
      c.representative = g.node;
      c.marking = g.node.marking();
    }
    c.cardinality = c.cardinality + g.cardinality;
  }
  std::set<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (below[i][j] && !below[j][i]) order.emplace(class_of[i], class_of[j]);
  poset.strict_order.assign(order.begin(), order.end());
  for (auto& c : poset.classes) {
    c.is_maximal = std::none_of(poset.strict_order.begin(), poset.strict_order.end(),
                                [&](const auto& p) { return p.first == c.id; });
  }
  return poset;
}

namespace {

bool unmarked_embeds(const std::optional<Descriptor>& a, const std::optional<Descriptor>& b) {
  if (!a) return true;
  if (!b) return false;
  const auto cb_b = cb_analysis(*b);
  if (!cb_b.countable()) return true;
  const auto cb_a = cb_analysis(*a);
  if (!cb_a.countable()) return false;
  const auto top = nth_derivative(canonicalize(*b), finite_rank(cb_a) - 1);
  if (!top) return false;
  const auto n = count_ends(*top);
  return !n || *n >= *cb_a.top_multiplicity;
}

bool planar_embeds(const Descriptor& a, const Descriptor& b) {
  const auto cb_b = cb_analysis(b);
  if (cb_b.perfect_kernel && cb_b.perfect_kernel->has_planar_end()) return true;
  const auto cb_a = cb_analysis(a);
  if (!cb_a.countable()) return false;
  const auto top = nth_derivative(canonicalize(b), finite_rank(cb_a) - 1);
  if (!top) return false;
  const auto n = count_ends(*top, Marking::planar);
  return !n || *n >= *cb_a.top_multiplicity;
}

}  // namespace

bool embeds_near(const Descriptor& a_in, const Descriptor& b_in) {
  const Descriptor a = canonicalize(a_in);
  const Descriptor b = canonicalize(b_in);
  if (!a.has_genus_end()) return planar_embeds(a, b);
  if (!a.has_planar_end()) return unmarked_embeds(a, genus_part(b));
  // mixed markings: F must embed in F, and every germ must be realized
  if (!unmarked_embeds(genus_part(a), genus_part(b))) return false;
  std::set<std::string> b_keys;
  for (const auto& g : germs(b)) b_keys.insert(g.key);
  for (const auto& g : germs(a)) {
    const bool uniform = !(g.node.has_genus_end() && g.node.has_planar_end());
    if (uniform ? !embeds_near(g.node, b) : !b_keys.count(g.key)) return false;
  }
  return true;
}

bool contains_clopen_copy(const Descriptor& b_in, const Descriptor& a_in) {
  const Descriptor a = canonicalize(a_in);
  const Descriptor b = canonicalize(b_in);
  std::map<std::string, std::size_t> needed;
  if (a.kind() == Kind::finite_union) {
    for (const auto& c : a.children()) ++needed[homeomorphism_key(c)];
  } else {
    ++needed[homeomorphism_key(a)];
  }
  std::map<std::string, Cardinality> available;
  for (const auto& g : germs(b)) {
    auto [it, fresh] = available.emplace(g.key, g.cardinality);
    if (!fresh) it->second = it->second + g.cardinality;
  }
  for (const auto& [key, n] : needed) {
    auto it = available.find(key);
    if (it == available.end()) return false;
    if (it->second.kind == Cardinality::Kind::finite && it->second.count < n) return false;
  }
  return true;
}

bool is_stable_neighborhood(const Descriptor& d_in, const NodePath& locus) {
  const Descriptor d = canonicalize(d_in);
  const Descriptor& node = d.at(locus);
  if (node.kind() == Kind::finite_union)
    throw DescriptorError("unknown locus " + render_node_path(locus) + ": not an end type",
                          locus);
  return contains_clopen_copy(node, d);
}

bool is_self_similar(const Descriptor& d_in) {
  const Descriptor d = canonicalize(d_in);
  const auto poset = end_classes(d);
  const auto top = poset.maximal();
  if (top.size() != 1) return false;
  const auto& c = poset.classes[top.front()];
  const bool singleton = c.cardinality == Cardinality::finite(1);
  if (!singleton && c.cardinality.kind != Cardinality::Kind::continuum) return false;
  return is_stable_neighborhood(d, c.representative_locus);
}

bool is_uniformly_self_similar(const Descriptor& d) {
  if (!is_self_similar(d)) return false;
  const auto poset = end_classes(d);
  return poset.classes[poset.maximal().front()].cardinality.kind ==
         Cardinality::Kind::continuum;
}

std::string to_string(const Genus& g) { return g.infinite ? "inf" : std::to_string(g.value); }

ClassificationReport classify_surface(const SurfaceSpec& s) {
  const Descriptor d = canonicalize(s.ends);
  if (s.genus.infinite != d.has_genus_end()) {
    throw DescriptorError(s.genus.infinite
                              ? "infinite genus needs an end accumulated by genus"
                              : "finite genus admits no end accumulated by genus",
                          {});
  }
  ClassificationReport r;
  r.genus = s.genus;
  r.ends = d;
  r.cb = cb_analysis(d);
  r.poset = end_classes(d);
  r.exact = r.poset.exact;
  r.self_similar = is_self_similar(d);
  r.uniformly_self_similar = r.self_similar && is_uniformly_self_similar(d);
  r.surface_self_similar = r.self_similar && s.genus.is_zero_or_infinite();
  r.surface_uniformly_self_similar = r.uniformly_self_similar && s.genus.is_zero_or_infinite();

  r.type1 = count_ends(d, Marking::genus) == std::optional<std::size_t>(1);
  const auto top = r.poset.maximal();
  if (!s.genus.infinite && s.genus.value == 0 && top.size() == 1 &&
      r.poset.classes[top.front()].cardinality == Cardinality::finite(1)) {
    for (auto p : r.poset.immediate_predecessors(top.front()))
      if (r.poset.classes[p].cardinality.kind == Cardinality::Kind::countably_infinite)
        r.type2 = true;
  }

  if (r.surface_uniformly_self_similar) {
    r.verdicts.push_back(
        "uniformly perfect; normally generated by one involution; "
        "≤3 commutators; ≤6 H-translations; ≤12 involutions");
  }
  if (r.type1 || r.type2) {
    r.verdicts.push_back(
        "MCG surjects onto a direct sum of continuum many copies of Q; "
        "not perfect; not generated by torsion; no automatic continuity");
  }
  return r;
}

}  // namespace endsym
