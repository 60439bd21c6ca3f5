#include "endsym/address_model.hpp"

#include <algorithm>
#include <boost/functional/hash.hpp>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "endsym/endspace.hpp"

namespace endsym {

std::size_t AddressHash::operator()(const Address& a) const noexcept {
  return boost::hash_range(a.begin(), a.end());
}

bool is_prefix(const Address& prefix, const Address& a) {
  return prefix.size() <= a.size() && std::equal(prefix.begin(), prefix.end(), a.begin());
}

Address concat(const Address& a, const Address& b) {
  Address r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Address suffix_from(const Address& a, std::size_t n) {
  return Address(a.begin() + static_cast<std::ptrdiff_t>(std::min(n, a.size())), a.end());
}

std::shared_ptr<const AddressModel> AddressModel::realize(const Descriptor& d) {
  auto model = std::make_shared<AddressModel>();
  std::unordered_map<Descriptor, int, DescriptorHash> ids;
  auto intern = [&](const Descriptor& local) {
    auto [it, fresh] = ids.emplace(local, static_cast<int>(model->types_.size()));
    if (fresh) model->types_.push_back({local, {}, false});
    return it->second;
  };
  intern(canonicalize(d));
  for (std::size_t t = 0; t < model->types_.size(); ++t) {
    const Descriptor local = model->types_[t].local;
    std::vector<int> kids;
    const int self = static_cast<int>(t);
    switch (local.kind()) {
      case Kind::point:
        break;
      case Kind::cantor:
        kids = {self, self};
        break;
      case Kind::omega:
        kids = {intern(canonicalize(local.inner())), self};
        break;
      case Kind::cseq:
        kids = {intern(canonicalize(local.inner())), self, self};
        break;
      case Kind::finite_union:
        for (const auto& c : local.children()) kids.push_back(intern(c));
        break;
    }
    model->types_[t].children = std::move(kids);
  }

  std::set<std::string> max_keys;
  for (const auto& c : end_classes(model->root()).classes)
    if (c.is_maximal) max_keys.insert(c.member_keys.begin(), c.member_keys.end());
  for (auto& node : model->types_) {
    for (const auto& g : germs(node.local)) {
      if (max_keys.count(g.key)) {
        node.has_maximal = true;
        break;
      }
    }
  }
  return model;
}

int AddressModel::type_of(const Address& a) const {
  int t = 0;
  for (auto step : a) {
    const auto& kids = types_[t].children;
    if (step >= kids.size()) throw std::out_of_range("invalid address");
    t = kids[step];
  }
  return t;
}

bool AddressModel::valid(const Address& a) const {
  int t = 0;
  for (auto step : a) {
    if (step >= types_[t].children.size()) return false;
    t = types_[t].children[step];
  }
  return true;
}

std::string AddressModel::token(int parent_type, std::size_t child) const {
  switch (local(parent_type).kind()) {
    case Kind::omega:
      return child == 0 ? "C0" : "T";
    case Kind::cseq:
      return child == 0 ? "C0" : std::to_string(child - 1);
    default:
      return std::to_string(child);
  }
}

std::string AddressModel::render(const Address& a) const {
  std::string out;
  int t = 0;
  for (auto step : a) {
    if (!out.empty()) out += '.';
    out += token(t, step);
    t = children(t).at(step);
  }
  return out;
}

Address AddressModel::parse_address(std::string_view text) const {
  Address a;
  if (text.empty()) return a;
  int t = 0;
  std::size_t pos = 0;
  while (true) {
    const auto dot = text.find('.', pos);
    const auto tok = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
    const auto& kids = children(t);
    std::size_t i = 0;
    while (i < kids.size() && token(t, i) != tok) ++i;
    if (i == kids.size())
      throw std::invalid_argument("invalid address token '" + std::string(tok) + "' in '" +
                                  std::string(text) + "'");
    a.push_back(static_cast<std::uint8_t>(i));
    t = kids[i];
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return a;
}

std::vector<Address> AddressModel::cells_at_depth_under(const Address& a, std::size_t d) const {
  std::vector<Address> out;
  Address cur = a;
  auto rec = [&](auto&& self, int t) -> void {
    const auto& kids = children(t);
    if (cur.size() >= d || kids.empty()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      cur.push_back(static_cast<std::uint8_t>(i));
      self(self, kids[i]);
      cur.pop_back();
    }
  };
  rec(rec, type_of(a));
  return out;
}

std::vector<Address> AddressModel::cells_at_depth(std::size_t d) const {
  return cells_at_depth_under({}, d);
}

Address AddressModel::partition_cell(const Address& a, std::size_t d) const {
  if (a.size() >= d) return Address(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(d));
  return a;
}

ModelPtr realize(const Descriptor& d) { return AddressModel::realize(d); }

std::vector<Cell> cells_at_depth(const AddressModel& m, std::size_t d) {
  std::vector<Cell> out;
  for (auto& a : m.cells_at_depth(d)) {
    const std::size_t depth = a.size();
    Descriptor local = m.local_at(a);
    out.push_back({std::move(a), depth, std::move(local)});
  }
  return out;
}

std::uint8_t EndLocus::token(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (cycle.empty()) throw std::out_of_range("finite end path");
  return cycle[(i - prefix.size()) % cycle.size()];
}

Address EndLocus::cell_at(std::size_t k) const {
  if (finite()) k = std::min(k, prefix.size());
  Address a(k);
  for (std::size_t i = 0; i < k; ++i) a[i] = token(i);
  return a;
}

bool EndLocus::in_cell(const Address& c) const {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (finite() && i >= prefix.size()) return false;
    if (token(i) != c[i]) return false;
  }
  return true;
}

std::string render_locus(const AddressModel& m, const EndLocus& e) {
  if (e.finite()) return m.render(e.prefix);
  // render the cycle relative to the type reached after the prefix
  std::string head = m.render(e.prefix);
  std::string cyc = m.render(concat(e.prefix, e.cycle)).substr(head.empty() ? 0 : head.size() + 1);
  return head + (head.empty() ? "" : ".") + "(" + cyc + ")*";
}

namespace {

std::optional<EndLocus> descend(const AddressModel& m, const Address& c, bool greatest) {
  int t = m.type_of(c);
  if (!m.has_maximal_end(t)) return std::nullopt;
  Address path = c;
  std::map<int, std::size_t> seen;
  while (true) {
    auto it = seen.find(t);
    if (it != seen.end()) {
      const auto pos = static_cast<std::ptrdiff_t>(it->second);
      return EndLocus{Address(path.begin(), path.begin() + pos), Address(path.begin() + pos, path.end())};
    }
    seen.emplace(t, path.size());
    const auto& kids = m.children(t);
    if (kids.empty()) return EndLocus{path, {}};
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const std::size_t j = greatest ? kids.size() - 1 - i : i;
      if (m.has_maximal_end(kids[j])) {
        pick = j;
        break;
      }
    }
    if (!pick) throw std::logic_error("maximal end flag inconsistent with children");
    path.push_back(static_cast<std::uint8_t>(*pick));
    t = kids[*pick];
  }
}

}  // namespace

std::optional<EndLocus> least_maximal_end(const AddressModel& m, const Address& c) {
  return descend(m, c, false);
}

std::optional<EndLocus> greatest_maximal_end(const AddressModel& m, const Address& c) {
  return descend(m, c, true);
}

}  // namespace endsym
