#include "endsym/report.hpp"

#include <sstream>

namespace endsym {

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::point: return "pt";
    case Kind::cantor: return "cantor";
    case Kind::omega: return "omega";
    case Kind::cseq: return "cseq";
    case Kind::finite_union: return "union";
  }
  return "?";
}

const char* color(Marking m) { return m == Marking::genus ? "firebrick" : "steelblue"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string rank_string(const CBAnalysis& cb) {
  return cb.scattered_rank ? print_ordinal(*cb.scattered_rank) : "-";
}

std::string class_line(const EndClass& c) {
  std::ostringstream o;
  o << "class " << c.id << ": " << print_descriptor(c.representative) << " at "
    << render_node_path(c.representative_locus) << ", " << to_string(c.marking) << ", "
    << to_string(c.cardinality) << (c.is_maximal ? ", maximal" : "");
  return o.str();
}

}  // namespace

std::string classify_text(const ClassificationReport& r) {
  std::ostringstream o;
  o << "ends: " << print_descriptor(r.ends) << "\n"
    << "genus: " << to_string(r.genus) << "\n"
    << "countable: " << yes_no(r.cb.countable()) << "\n";
  if (r.cb.countable()) o << "cb rank: " << rank_string(r.cb) << ", multiplicity " << *r.cb.top_multiplicity << "\n";
  o << "maximal classes: " << r.poset.maximal().size() << "\n"
    << "self-similar: " << yes_no(r.surface_self_similar) << "\n"
    << "uniformly-self-similar: " << yes_no(r.surface_uniformly_self_similar) << "\n"
    << "type-1: " << yes_no(r.type1) << "\n"
    << "type-2: " << yes_no(r.type2) << "\n";
  if (!r.exact) o << "note: some classes were separated by structure only\n";
  for (const auto& v : r.verdicts) o << "verdict: " << v << "\n";
  return o.str();
}

Json classify_json(const ClassificationReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.poset.classes)
    classes.push_back({{"id", c.id},
                       {"representative", print_descriptor(c.representative)},
                       {"locus", render_node_path(c.representative_locus)},
                       {"marking", to_string(c.marking)},
                       {"cardinality", to_string(c.cardinality)},
                       {"maximal", c.is_maximal}});
  Json order = Json::array();
  for (const auto& [a, b] : r.poset.strict_order) order.push_back({a, b});
  Json out = {{"ends", print_descriptor(r.ends)},
              {"genus", to_string(r.genus)},
              {"countable", r.cb.countable()},
              {"classes", classes},
              {"order", order},
              {"self_similar", r.surface_self_similar},
              {"uniformly_self_similar", r.surface_uniformly_self_similar},
              {"ends_self_similar", r.self_similar},
              {"ends_uniformly_self_similar", r.uniformly_self_similar},
              {"type1", r.type1},
              {"type2", r.type2},
              {"exact", r.exact},
              {"verdicts", r.verdicts}};
  if (r.cb.countable()) {
    out["cb_rank"] = rank_string(r.cb);
    out["multiplicity"] = *r.cb.top_multiplicity;
  }
  return out;
}

std::string rank_text(const CBAnalysis& cb) {
  std::ostringstream o;
  if (!cb.countable()) {
    o << "uncountable\nperfect kernel: " << print_descriptor(*cb.perfect_kernel) << "\n";
    return o.str();
  }
  o << "rank: " << rank_string(cb) << "\nmultiplicity: " << *cb.top_multiplicity << "\n";
  return o.str();
}

std::string order_text(const ClassPoset& p) {
  std::ostringstream o;
  for (const auto& c : p.classes) o << class_line(c) << "\n";
  for (const auto& [a, b] : p.hasse_edges()) o << a << " < " << b << "\n";
  return o.str();
}

std::string order_dot(const ClassPoset& p) {
  std::ostringstream o;
  o << "digraph classes {\n  rankdir=BT;\n";
  for (const auto& c : p.classes) {
    o << "  c" << c.id << " [label=\"" << print_descriptor(c.representative) << "\\n"
      << to_string(c.cardinality) << "\", color=" << color(c.marking)
      << (c.is_maximal ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& [a, b] : p.hasse_edges()) o << "  c" << a << " -> c" << b << ";\n";
  o << "}\n";
  return o.str();
}

std::string selfsim_label(const Descriptor& d) {
  if (!is_self_similar(d)) return "none";
  return is_uniformly_self_similar(d) ? "uniformly-self-similar" : "self-similar";
}

std::string standard_form_text(const StandardForm& sf, int window) {
  const AddressModel& m = *sf.model();
  std::ostringstream o;
  o << "descriptor: " << print_descriptor(m.root()) << "\n"
    << "y: " << render_locus(m, sf.y()) << "\n"
    << "z: " << render_locus(m, sf.z()) << "\n"
    << "fork: " << (sf.fork().empty() ? std::string("<root>") : m.render(sf.fork())) << "\n";
  for (int i = -window; i <= window; ++i) o << "U" << i << ": " << render_region(m, sf.chain(i)) << "\n";
  return o.str();
}

std::string descriptor_dot(const Descriptor& d) {
  std::ostringstream o;
  std::size_t next = 0;
  auto rec = [&](auto&& self, const Descriptor& n) -> std::size_t {
    const std::size_t id = next++;
    o << "  n" << id << " [label=\"" << kind_name(n.kind()) << "\"";
    if (n.kind() != Kind::finite_union) o << ", color=" << color(n.marking());
    o << "];\n";
    for (const auto& c : n.children()) {
      const std::size_t k = self(self, c);
      o << "  n" << id << " -> n" << k << ";\n";
    }
    return id;
  };
  o << "digraph descriptor {\n";
  rec(rec, d);
  o << "}\n";
  return o.str();
}

}  // namespace endsym
