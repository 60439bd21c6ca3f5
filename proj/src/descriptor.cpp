#include "endsym/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "endsym/ordinal.hpp"

namespace endsym {

const char* to_string(Marking m) { return m == Marking::genus ? "genus" : "planar"; }

std::string render_node_path(const NodePath& p) {
  if (p.empty()) return "/";
  std::string out;
  for (auto i : p) out += "/" + std::to_string(i);
  return out;
}

Descriptor Descriptor::make(Kind k, Marking m, std::vector<Descriptor> children) {
  Node n{k, m, std::move(children), false, false, 0, 0};
  std::size_t h = std::hash<int>{}(static_cast<int>(k) * 2 + static_cast<int>(m));
  switch (k) {
    case Kind::point:
    case Kind::cantor:
      n.has_genus = m == Marking::genus;
      n.has_planar = m == Marking::planar;
      break;
    case Kind::omega:
    case Kind::cseq:
      n.has_genus = m == Marking::genus || n.children[0].has_genus_end();
      n.has_planar = m == Marking::planar || n.children[0].has_planar_end();
      break;
    case Kind::finite_union:
      break;
  }
  for (const auto& c : n.children) {
    if (k == Kind::finite_union) {
      n.has_genus = n.has_genus || c.has_genus_end();
      n.has_planar = n.has_planar || c.has_planar_end();
    }
    n.height = std::max(n.height, c.height() + 1);
    h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  n.hash = h;
  return Descriptor(std::make_shared<const Node>(std::move(n)));
}

Descriptor::Descriptor() : Descriptor(point(Marking::planar)) {}

Descriptor Descriptor::point(Marking m) { return make(Kind::point, m, {}); }
Descriptor Descriptor::cantor(Marking m) { return make(Kind::cantor, m, {}); }
Descriptor Descriptor::omega(Descriptor child, Marking limit) {
  return make(Kind::omega, limit, {std::move(child)});
}
Descriptor Descriptor::cseq(Descriptor child, Marking base) {
  return make(Kind::cseq, base, {std::move(child)});
}
Descriptor Descriptor::finite_union(std::vector<Descriptor> children) {
  if (children.size() < 2)
    throw DescriptorError("union needs at least two components", {});
  return make(Kind::finite_union, Marking::planar, std::move(children));
}

const Descriptor& Descriptor::at(const NodePath& path) const {
  const Descriptor* d = this;
  for (auto i : path) {
    if (i >= d->children().size())
      throw DescriptorError("no descriptor node at " + render_node_path(path), path);
    d = &d->children()[i];
  }
  return *d;
}

std::strong_ordering Descriptor::operator<=>(const Descriptor& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = kind() <=> other.kind(); c != 0) return c;
  if (auto c = marking() <=> other.marking(); c != 0) return c;
  const auto& a = children();
  const auto& b = other.children();
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return a.size() <=> b.size();
}

bool Descriptor::operator==(const Descriptor& other) const {
  if (node_ == other.node_) return true;
  if (hash() != other.hash()) return false;
  return (*this <=> other) == 0;
}

namespace {

void validate_at(const Descriptor& d, NodePath& path) {
  if ((d.kind() == Kind::omega || d.kind() == Kind::cseq) && d.marking() == Marking::planar &&
      d.inner().has_genus_end()) {
    throw DescriptorError("closedness violation at " + render_node_path(path) +
                              ": genus ends accumulate onto a planar end",
                          path);
  }
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    path.push_back(i);
    validate_at(d.children()[i], path);
    path.pop_back();
  }
}

Descriptor canonical_rec(const Descriptor& d) {
  switch (d.kind()) {
    case Kind::point:
    case Kind::cantor:
      return d;
    case Kind::omega:
      return Descriptor::omega(canonical_rec(d.inner()), d.marking());
    case Kind::cseq:
      return Descriptor::cseq(canonical_rec(d.inner()), d.marking());
    case Kind::finite_union:
      break;
  }
  std::vector<Descriptor> flat;
  for (const auto& c : d.children()) {
    Descriptor cc = canonical_rec(c);
    if (cc.kind() == Kind::finite_union)
      flat.insert(flat.end(), cc.children().begin(), cc.children().end());
    else
      flat.push_back(std::move(cc));
  }
  std::vector<Descriptor> merged;
  bool seen_cantor[2] = {false, false};
  for (auto& c : flat) {
    if (c.kind() == Kind::cantor) {
      auto& seen = seen_cantor[static_cast<int>(c.marking())];
      if (seen) continue;
      seen = true;
    }
    merged.push_back(std::move(c));
  }
  std::sort(merged.begin(), merged.end());
  if (merged.size() == 1) return merged.front();
  return Descriptor::finite_union(std::move(merged));
}

std::optional<Descriptor> derivative_rec(const Descriptor& d) {
  switch (d.kind()) {
    case Kind::point:
      return std::nullopt;
    case Kind::cantor:
      return d;
    case Kind::omega: {
      auto c = derivative_rec(d.inner());
      if (!c) return Descriptor::point(d.marking());
      return Descriptor::omega(*c, d.marking());
    }
    case Kind::cseq: {
      auto c = derivative_rec(d.inner());
      if (!c) return Descriptor::cantor(d.marking());
      return Descriptor::cseq(*c, d.marking());
    }
    case Kind::finite_union:
      break;
  }
  std::vector<Descriptor> kept;
  for (const auto& c : d.children())
    if (auto cd = derivative_rec(c)) kept.push_back(*cd);
  if (kept.empty()) return std::nullopt;
  if (kept.size() == 1) return kept.front();
  return Descriptor::finite_union(std::move(kept));
}

}  // namespace

void validate(const Descriptor& d) {
  NodePath path;
  validate_at(d, path);
}

Descriptor canonicalize(const Descriptor& d) {
  validate(d);
  return canonical_rec(d);
}

std::optional<Descriptor> derivative(const Descriptor& d) {
  auto r = derivative_rec(d);
  if (!r) return r;
  return canonical_rec(*r);
}

std::optional<std::size_t> count_ends(const Descriptor& d, std::optional<Marking> m) {
  const bool own = !m || d.marking() == *m;
  switch (d.kind()) {
    case Kind::point:
      return own ? 1 : 0;
    case Kind::cantor:
      if (own) return std::nullopt;
      return 0;
    case Kind::omega: {
      auto c = count_ends(d.inner(), m);
      if (!c || *c > 0) return std::nullopt;
      return own ? 1 : 0;
    }
    case Kind::cseq: {
      auto c = count_ends(d.inner(), m);
      if (own || !c || *c > 0) return std::nullopt;
      return 0;
    }
    case Kind::finite_union:
      break;
  }
  std::size_t total = 0;
  for (const auto& c : d.children()) {
    auto n = count_ends(c, m);
    if (!n) return std::nullopt;
    total += *n;
  }
  return total;
}

std::optional<Descriptor> genus_part(const Descriptor& d) {
  if (!d.has_genus_end()) return std::nullopt;
  switch (d.kind()) {
    case Kind::point:
    case Kind::cantor:
      return d;
    case Kind::omega: {
      auto c = genus_part(d.inner());
      if (!c) return Descriptor::point(Marking::genus);
      return Descriptor::omega(*c, Marking::genus);
    }
    case Kind::cseq: {
      auto c = genus_part(d.inner());
      if (!c) return Descriptor::cantor(Marking::genus);
      return Descriptor::cseq(*c, Marking::genus);
    }
    case Kind::finite_union:
      break;
  }
  std::vector<Descriptor> kept;
  for (const auto& c : d.children())
    if (auto g = genus_part(c)) kept.push_back(*g);
  if (kept.size() == 1) return kept.front();
  return canonical_rec(Descriptor::finite_union(std::move(kept)));
}

Descriptor ordinal_space(std::size_t exponent, std::size_t multiplicity, Marking m) {
  if (multiplicity == 0) throw DescriptorError("ordinal space needs multiplicity >= 1", {});
  if (exponent == 0) {
    std::vector<Descriptor> pts(multiplicity + 1, Descriptor::point(m));
    return Descriptor::finite_union(std::move(pts));
  }
  Descriptor block = Descriptor::point(m);
  for (std::size_t i = 0; i < exponent; ++i) block = Descriptor::omega(block, m);
  if (multiplicity == 1) return block;
  return Descriptor::finite_union(std::vector<Descriptor>(multiplicity, block));
}

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view s) : s_(s) {}

  Descriptor parse_all() {
    Descriptor d = node();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DescriptorError(
        "descriptor syntax error at position " + std::to_string(pos_) + ": " + msg, {});
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Marking marking() {
    if (!accept('[')) return Marking::planar;
    std::string w = word();
    expect(']');
    if (w == "g" || w == "genus") return Marking::genus;
    if (w == "p" || w == "planar") return Marking::planar;
    fail("unknown marking '" + w + "'");
  }

  Descriptor node() {
    const std::size_t start = pos_;
    std::string w = word();
    if (w == "pt") return Descriptor::point(marking());
    if (w == "cantor") return Descriptor::cantor(marking());
    if (w == "omega" || w == "cseq") {
      Marking m = marking();
      expect('(');
      Descriptor c = node();
      expect(')');
      return w == "omega" ? Descriptor::omega(c, m) : Descriptor::cseq(c, m);
    }
    if (w == "union") {
      expect('(');
      std::vector<Descriptor> parts{node()};
      while (accept(',')) parts.push_back(node());
      expect(')');
      if (parts.size() < 2) fail("union needs at least two components");
      return Descriptor::finite_union(std::move(parts));
    }
    if (w == "ord") {
      Marking m = marking();
      expect('(');
      std::size_t depth = 1;
      const std::size_t body = pos_;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth != 0) fail("unterminated ord(...)");
      return ordinal_descriptor(s_.substr(body, pos_ - 1 - body), m);
    }
    pos_ = start;
    fail(w.empty() ? "expected a descriptor" : "unknown constructor '" + w + "'");
  }

  Descriptor ordinal_descriptor(std::string_view text, Marking m) {
    Ordinal g;
    try {
      g = parse_ordinal(text);
    } catch (const OrdinalParseError& e) {
      fail(e.what());
    }
    if (!is_successor(g)) fail("ord(...) needs a successor ordinal");
    // predecessor: drop one from the trailing finite coefficient
    auto terms = g.terms();
    Ordinal pred;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      pred = add(pred, omega_power_times(*terms[i].exponent, terms[i].coefficient));
    if (terms.back().coefficient > 1)
      pred = add(pred, Ordinal::from_natural(terms.back().coefficient - 1));
    if (pred.is_zero()) return Descriptor::point(m);
    if (pred.terms().size() != 1 || !pred.terms()[0].exponent->is_finite())
      fail("ord(...) supports only w^a*n+1 with a finite exponent a");
    const auto a = pred.terms()[0].exponent->finite_value();
    const auto n = pred.terms()[0].coefficient;
    if (a > 64 || n > 4096) fail("ord(...) too large to expand");
    return ordinal_space(static_cast<std::size_t>(a), static_cast<std::size_t>(n), m);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Descriptor parse_descriptor(std::string_view text) {
  Descriptor d = DescriptorParser(text).parse_all();
  validate(d);
  return d;
}

std::string print_descriptor(const Descriptor& d) {
  const std::string mark = d.marking() == Marking::genus ? "[g]" : "";
  switch (d.kind()) {
    case Kind::point:
      return "pt" + mark;
    case Kind::cantor:
      return "cantor" + mark;
    case Kind::omega:
      return "omega" + mark + "(" + print_descriptor(d.inner()) + ")";
    case Kind::cseq:
      return "cseq" + mark + "(" + print_descriptor(d.inner()) + ")";
    case Kind::finite_union:
      break;
  }
  std::string out = "union(";
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    if (i) out += ",";
    out += print_descriptor(d.children()[i]);
  }
  return out + ")";
}

}  // namespace endsym
