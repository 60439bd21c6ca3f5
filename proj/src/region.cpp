#include "endsym/region.hpp"

#include <algorithm>

namespace endsym {

Overlap classify(const Region& r, const Address& c) {
  Address probe;
  probe.reserve(c.size());
  for (std::size_t k = 0; k <= c.size(); ++k) {
    if (std::binary_search(r.begin(), r.end(), probe)) return Overlap::inside;
    if (k < c.size()) probe.push_back(c[k]);
  }
  auto it = std::upper_bound(r.begin(), r.end(), c);
  if (it != r.end() && is_prefix(c, *it)) return Overlap::partial;
  return Overlap::outside;
}

namespace {

enum class Op { unite, intersect, subtract };

bool apply(Op op, bool a, bool b) {
  switch (op) {
    case Op::unite:
      return a || b;
    case Op::intersect:
      return a && b;
    case Op::subtract:
      return a && !b;
  }
  return false;
}

// Emits the cells of the combined region under `cur`; returns true when the
// whole of `cur` is in the result, in which case nothing was emitted.
bool combine_rec(const AddressModel& m, const Region& a, const Region& b, Op op, Address& cur,
                 int type, Region& out) {
  const auto sa = classify(a, cur);
  const auto sb = classify(b, cur);
  if (sa != Overlap::partial && sb != Overlap::partial)
    return apply(op, sa == Overlap::inside, sb == Overlap::inside);
  const auto& kids = m.children(type);
  std::vector<bool> full(kids.size());
  const std::size_t mark = out.size();
  bool all = !kids.empty();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    cur.push_back(static_cast<std::uint8_t>(i));
    full[i] = combine_rec(m, a, b, op, cur, kids[i], out);
    cur.pop_back();
    all = all && full[i];
  }
  if (all) {
    out.resize(mark);
    return true;
  }
  // children that were whole go in at their own position
  Region mine(out.begin() + static_cast<std::ptrdiff_t>(mark), out.end());
  out.resize(mark);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (full[i]) {
      Address c = cur;
      c.push_back(static_cast<std::uint8_t>(i));
      mine.push_back(std::move(c));
    }
  }
  std::sort(mine.begin(), mine.end());
  out.insert(out.end(), mine.begin(), mine.end());
  return false;
}

Region combine(const AddressModel& m, const Region& a, const Region& b, Op op) {
  Region out;
  Address cur;
  if (combine_rec(m, a, b, op, cur, 0, out)) return Region{Address{}};
  return out;
}

}  // namespace

Region normalize(const AddressModel& m, Region cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  // drop cells nested in an earlier one
  Region kept;
  for (auto& c : cells) {
    if (!kept.empty() && is_prefix(kept.back(), c)) continue;
    kept.push_back(std::move(c));
  }
  return combine(m, kept, {}, Op::unite);
}

Region unite(const AddressModel& m, const Region& a, const Region& b) {
  return combine(m, a, b, Op::unite);
}

Region intersect(const AddressModel& m, const Region& a, const Region& b) {
  return combine(m, a, b, Op::intersect);
}

Region subtract(const AddressModel& m, const Region& a, const Region& b) {
  return combine(m, a, b, Op::subtract);
}

Region complement(const AddressModel& m, const Region& a) {
  return combine(m, Region{Address{}}, a, Op::subtract);
}

bool disjoint(const AddressModel& m, const Region& a, const Region& b) {
  return intersect(m, a, b).empty();
}

bool contains(const AddressModel& m, const Region& outer, const Region& inner) {
  return subtract(m, inner, outer).empty();
}

bool contains_maximal_end(const AddressModel& m, const Region& r) {
  return std::any_of(r.begin(), r.end(), [&](const Address& c) { return m.has_maximal_end(m.type_of(c)); });
}

std::optional<EndLocus> least_maximal_end(const AddressModel& m, const Region& r) {
  for (const auto& c : r)
    if (auto e = least_maximal_end(m, c)) return e;
  return std::nullopt;
}

std::string render_region(const AddressModel& m, const Region& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    out += r[i].empty() ? "<root>" : m.render(r[i]);
  }
  return out + "}";
}

}  // namespace endsym
