#include "tourep/set_system.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <numeric>
#include <stdexcept>

namespace tourep {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

Bits to_bits(const std::vector<int>& member, int ground) {
  Bits b(static_cast<std::size_t>(ground));
  for (int e : member) {
    if (e < 0 || e >= ground) throw std::out_of_range("set element outside the ground set");
    b.set(static_cast<std::size_t>(e));
  }
  return b;
}

std::vector<Bits> all_bits(const SetSystem& family) {
  std::vector<Bits> bits;
  bits.reserve(family.members.size());
  for (const auto& m : family.members) bits.push_back(to_bits(m, family.ground_size));
  return bits;
}

class Packer {
 public:
  Packer(std::vector<Bits> bits, std::size_t enough) : bits_(std::move(bits)), enough_(enough) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> order(bits_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return bits_[a].count() < bits_[b].count(); });
    // Greedy by size gives the first incumbent.
    Bits used(bits_.empty() ? 0 : bits_.front().size());
    for (std::size_t i : order)
      if (!bits_[i].intersects(used)) {
        best_.push_back(i);
        used |= bits_[i];
      }
    if (enough_ == 0 || best_.size() < enough_) {
      std::vector<std::size_t> current;
      search(order, current);
    }
    if (enough_ != 0 && best_.size() > enough_) best_.resize(enough_);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  bool done() const { return enough_ != 0 && best_.size() >= enough_; }

  // Min of: covered elements over the smallest candidate, and the size of a
  // greedy hitting set of the candidates (a packing needs one element each).
  std::size_t upper_bound(const std::vector<std::size_t>& candidates) const {
    if (candidates.empty()) return 0;
    Bits covered = bits_[candidates.front()];
    std::size_t smallest = covered.count();
    for (std::size_t c : candidates) {
      covered |= bits_[c];
      smallest = std::min(smallest, bits_[c].count());
    }
    if (smallest == 0) return candidates.size();
    std::size_t bound = std::min(candidates.size(), covered.count() / smallest);
    std::vector<std::size_t> open = candidates;
    std::size_t hits = 0;
    while (!open.empty() && hits < bound) {
      std::vector<std::size_t> degree(covered.size(), 0);
      for (std::size_t m : open)
        for (auto e = bits_[m].find_first(); e != Bits::npos; e = bits_[m].find_next(e)) ++degree[e];
      const auto pick = static_cast<std::size_t>(std::max_element(degree.begin(), degree.end()) - degree.begin());
      std::erase_if(open, [&](std::size_t m) { return bits_[m].test(pick); });
      ++hits;
    }
    return std::min(bound, hits);
  }

  // Branch on the free element lying in the fewest candidates: one of them is
  // chosen, or the element stays unused.
  void search(const std::vector<std::size_t>& candidates, std::vector<std::size_t>& current) {
    if (current.size() > best_.size()) best_ = current;
    if (done() || candidates.empty() || current.size() + upper_bound(candidates) <= best_.size()) return;
    std::vector<std::size_t> degree(bits_[candidates.front()].size(), 0);
    for (std::size_t m : candidates)
      for (auto e = bits_[m].find_first(); e != Bits::npos; e = bits_[m].find_next(e)) ++degree[e];
    std::size_t pivot = Bits::npos;
    for (std::size_t e = 0; e < degree.size(); ++e)
      if (degree[e] > 0 && (pivot == Bits::npos || degree[e] < degree[pivot])) pivot = e;
    if (pivot == Bits::npos) {
      // Only empty members left; they are disjoint from everything.
      if (current.size() + candidates.size() > best_.size()) {
        best_ = current;
        best_.insert(best_.end(), candidates.begin(), candidates.end());
      }
      return;
    }
    for (std::size_t m : candidates) {
      if (!bits_[m].test(pivot)) continue;
      std::vector<std::size_t> rest;
      for (std::size_t q : candidates)
        if (!bits_[q].intersects(bits_[m])) rest.push_back(q);
      current.push_back(m);
      search(rest, current);
      current.pop_back();
      if (done()) return;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q : candidates)
      if (!bits_[q].test(pivot)) rest.push_back(q);
    search(rest, current);
  }

  std::vector<Bits> bits_;
  std::size_t enough_;
  std::vector<std::size_t> best_;
};

class Hitter {
 public:
  Hitter(std::vector<Bits> bits, Bits allowed, std::size_t at_least)
      : bits_(std::move(bits)), allowed_(std::move(allowed)), at_least_(at_least) {
    for (auto& b : bits_) {
      b &= allowed_;
      if (b.none()) throw std::invalid_argument("a member avoids every candidate element");
    }
    // Small members first makes the greedy packing bound tighter.
    std::stable_sort(bits_.begin(), bits_.end(), [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
  }

  std::vector<int> run() {
    // Greedy max-degree incumbent.
    std::vector<std::size_t> open(bits_.size());
    std::iota(open.begin(), open.end(), 0);
    std::vector<int> greedy;
    while (!open.empty()) {
      int pick = max_degree(open);
      greedy.push_back(pick);
      std::erase_if(open, [&](std::size_t m) { return bits_[m].test(static_cast<std::size_t>(pick)); });
    }
    best_ = greedy;
    if (best_.size() > at_least_) {
      std::vector<std::size_t> all(bits_.size());
      std::iota(all.begin(), all.end(), 0);
      std::vector<int> current;
      search(all, current);
    }
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  int max_degree(const std::vector<std::size_t>& open) const {
    std::vector<int> degree(allowed_.size(), 0);
    for (std::size_t m : open)
      for (auto e = bits_[m].find_first(); e != Bits::npos; e = bits_[m].find_next(e)) ++degree[e];
    return static_cast<int>(std::max_element(degree.begin(), degree.end()) - degree.begin());
  }

  // Pairwise disjoint open members each need their own element.
  std::size_t lower_bound(const std::vector<std::size_t>& open) const {
    Bits used(allowed_.size());
    std::size_t count = 0;
    for (std::size_t m : open)
      if (!bits_[m].intersects(used)) {
        used |= bits_[m];
        ++count;
      }
    return count;
  }

  void search(const std::vector<std::size_t>& open, std::vector<int>& current) {
    if (best_.size() <= at_least_) return;
    if (open.empty()) {
      if (current.size() < best_.size()) best_ = current;
      return;
    }
    if (current.size() + lower_bound(open) >= best_.size()) return;
    // Branch on the elements of the smallest open member, highest degree first.
    std::size_t pivot = open.front();
    for (std::size_t m : open)
      if (bits_[m].count() < bits_[pivot].count()) pivot = m;
    std::vector<int> choices;
    for (auto e = bits_[pivot].find_first(); e != Bits::npos; e = bits_[pivot].find_next(e))
      choices.push_back(static_cast<int>(e));
    std::vector<int> degree(allowed_.size(), 0);
    for (std::size_t m : open)
      for (int e : choices)
        if (bits_[m].test(static_cast<std::size_t>(e))) ++degree[e];
    std::stable_sort(choices.begin(), choices.end(), [&](int a, int b) { return degree[a] > degree[b]; });
    for (int e : choices) {
      std::vector<std::size_t> rest;
      for (std::size_t m : open)
        if (!bits_[m].test(static_cast<std::size_t>(e))) rest.push_back(m);
      current.push_back(e);
      search(rest, current);
      current.pop_back();
    }
  }

  std::vector<Bits> bits_;
  Bits allowed_;
  std::size_t at_least_;
  std::vector<int> best_;
};

}  // namespace

SetSystem inclusion_minimal(const SetSystem& family) {
  const auto bits = all_bits(family);
  std::vector<std::size_t> order(bits.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return bits[a].count() < bits[b].count(); });
  std::vector<char> keep(bits.size(), 0);
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool dominated = false;
    for (std::size_t j : kept)
      if (bits[j].is_subset_of(bits[i])) {
        dominated = true;
        break;
      }
    if (!dominated) {
      keep[i] = 1;
      kept.push_back(i);
    }
  }
  SetSystem out{family.ground_size, {}};
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (keep[i]) out.members.push_back(family.members[i]);
  return out;
}

std::vector<std::size_t> max_disjoint_members(const SetSystem& family, std::size_t enough) {
  if (family.members.empty()) return {};
  return Packer(all_bits(family), enough).run();
}

std::vector<int> min_hitting_set(const SetSystem& family, const std::vector<int>& candidates, std::size_t at_least) {
  if (family.members.empty()) return {};
  Bits allowed(static_cast<std::size_t>(family.ground_size));
  if (candidates.empty())
    allowed.set();
  else
    allowed = to_bits(candidates, family.ground_size);
  return Hitter(all_bits(family), std::move(allowed), at_least).run();
}

}  // namespace tourep
