#include "endsym/random_homeo.hpp"

#include <algorithm>
#include <map>

namespace endsym {

namespace {

constexpr int kMatchAttempts = 64;

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Pairs the cells of `from` and `to` by type at random; false when the type
// counts differ.
bool match(const AddressModel& m, const std::vector<Address>& from, std::vector<Address> to,
           std::mt19937_64& rng, PermTable& out) {
  std::map<int, std::vector<Address>> a, b;
  for (const auto& c : from) a[m.type_of(c)].push_back(c);
  for (const auto& c : to) b[m.type_of(c)].push_back(c);
  if (a.size() != b.size()) return false;
  for (const auto& [t, cells] : a)
    if (!b.count(t) || b[t].size() != cells.size()) return false;
  for (auto& [t, cells] : a) {
    auto& targets = b[t];
    for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[below(rng, i)]);
    for (std::size_t i = 0; i < cells.size(); ++i) out.entries.emplace_back(cells[i], targets[i]);
  }
  return true;
}

}  // namespace

std::vector<Address> random_partition(const AddressModel& m, const Region& base, std::size_t expansions,
                                      std::size_t max_depth, std::mt19937_64& rng) {
  std::vector<Address> cells(base.begin(), base.end());
  for (std::size_t k = 0; k < expansions; ++k) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() < max_depth && !m.is_terminal(cells[i])) open.push_back(i);
    if (open.empty()) break;
    const std::size_t pick = open[below(rng, open.size())];
    const Address parent = cells[pick];
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(pick));
    for (std::size_t i = 0; i < m.children(m.type_of(parent)).size(); ++i) {
      Address c = parent;
      c.push_back(static_cast<std::uint8_t>(i));
      cells.push_back(std::move(c));
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

namespace {

PermTable random_on(const AddressModel& m, const Region& base, std::size_t max_depth, std::mt19937_64& rng) {
  const std::size_t expansions = 1 + below(rng, 6);
  const auto from = random_partition(m, base, expansions, max_depth, rng);
  for (int attempt = 0; attempt < kMatchAttempts; ++attempt) {
    PermTable t;
    if (match(m, from, random_partition(m, base, expansions, max_depth, rng), rng, t)) return t;
  }
  PermTable t;
  match(m, from, from, rng, t);
  return t;
}

}  // namespace

PermTable random_cell_permutation(const AddressModel& m, std::uint64_t seed, std::size_t max_depth) {
  std::mt19937_64 rng(seed);
  return random_on(m, Region{Address{}}, max_depth, rng);
}

PermTable random_supported_permutation(const AddressModel& m, const Region& support_in, std::uint64_t seed,
                                       std::size_t extra_depth) {
  std::mt19937_64 rng(seed);
  const Region support = normalize(m, support_in);
  std::size_t deepest = 0;
  for (const auto& c : support) deepest = std::max(deepest, c.size());
  PermTable t = random_on(m, support, deepest + extra_depth, rng);
  for (const auto& c : complement(m, support)) t.entries.emplace_back(c, c);
  return t;
}

}  // namespace endsym
