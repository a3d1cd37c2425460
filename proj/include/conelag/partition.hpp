#pragma once

// Integer partitions m = (m_1 >= ... >= m_r >= 0) of fixed length r.

#include <algorithm>
#include <compare>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelag {

struct Partition {
  std::vector<int> parts;  // always length r, trailing zeros kept

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0) throw std::invalid_argument("negative partition part");
      if (i > 0 && parts[i] > parts[i - 1]) throw std::invalid_argument("partition parts must be non-increasing");
    }
  }

  static Partition zero(int r) { return Partition(std::vector<int>(r, 0)); }

  int rank() const { return static_cast<int>(parts.size()); }
  int weight() const {
    int w = 0;
    for (int p : parts) w += p;
    return w;
  }
  int length() const {
    return static_cast<int>(std::count_if(parts.begin(), parts.end(), [](int p) { return p > 0; }));
  }
  int operator[](std::size_t i) const { return parts[i]; }

  /// Order: weight first, then lexicographic on the parts.
  std::strong_ordering operator<=>(const Partition& o) const {
    if (auto c = weight() <=> o.weight(); c != 0) return c;
    return parts <=> o.parts;
  }
  bool operator==(const Partition& o) const = default;

  /// Partition with m_j shifted by delta, if the result stays non-increasing and >= 0.
  bool shifted(int j, int delta, Partition& out) const {
    std::vector<int> p = parts;
    p[j] += delta;
    if (p[j] < 0) return false;
    if (j > 0 && p[j] > p[j - 1]) return false;
    if (j + 1 < static_cast<int>(p.size()) && p[j] < p[j + 1]) return false;
    out = Partition(std::move(p));
    return true;
  }

  /// Containment n <= m componentwise.
  bool contains(const Partition& n) const {
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (n.parts[i] > parts[i]) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << ')';
    return os.str();
  }
};

/// Parses "2,1,0" or "(2,1)"; pads with zeros up to rank r.
inline Partition parse_partition(const std::string& text, int r) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') s.push_back(c);
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("bad partition: " + text);
    std::size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad partition: " + text);
    parts.push_back(v);
  }
  if (parts.empty()) parts.push_back(0);
  while (static_cast<int>(parts.size()) > r && parts.back() == 0) parts.pop_back();
  if (static_cast<int>(parts.size()) > r) throw std::invalid_argument("partition longer than rank: " + text);
  parts.resize(r, 0);
  return Partition(std::move(parts));
}

namespace detail {

inline void partitions_of(int k, int max_part, int slots, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(k, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(k - p, p, slots - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Partitions of exactly k with at most r parts, lexicographically ascending.
inline std::vector<Partition> partitions_of_weight(int r, int k) {
  std::vector<std::vector<int>> raw;
  std::vector<int> cur;
  detail::partitions_of(k, k, r, cur, raw);
  std::vector<Partition> out;
  for (auto& p : raw) {
    p.resize(r, 0);
    out.emplace_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All partitions with at most r parts and weight <= D, by weight then lexicographic.
inline std::vector<Partition> partitions(int r, int D) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  if (D < 0) throw std::invalid_argument("degree bound must be nonnegative");
  std::vector<Partition> out;
  for (int k = 0; k <= D; ++k) {
    auto w = partitions_of_weight(r, k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

}  // namespace conelag
