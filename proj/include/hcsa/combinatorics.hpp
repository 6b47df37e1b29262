#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hcsa/errors.hpp"

namespace hcsa {

/// Which cyclotomic family a module belongs to; fixes the number of strict components (0, 1 or 2).
enum class Flavor { zero, s, ss };

inline int strict_component_count(Flavor f) {
  switch (f) {
    case Flavor::zero:
      return 0;
    case Flavor::s:
      return 1;
    case Flavor::ss:
      return 2;
  }
  return 0;
}

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::zero:
      return "zero";
    case Flavor::s:
      return "s";
    case Flavor::ss:
      return "ss";
  }
  return "?";
}

inline Flavor parse_flavor(const std::string& text) {
  if (text == "zero" || text == "0") return Flavor::zero;
  if (text == "s") return Flavor::s;
  if (text == "ss") return Flavor::ss;
  throw ParseError("unknown flavor '" + text + "'");
}

/// Weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  [[nodiscard]] int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  [[nodiscard]] int length() const { return static_cast<int>(parts.size()); }
  [[nodiscard]] bool valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) return false;
      if (i + 1 < parts.size() && parts[i] < parts[i + 1]) return false;
    }
    return true;
  }
  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Strictly decreasing positive parts; drawn shifted, row i starting at column i.
struct StrictPartition {
  std::vector<int> parts;

  [[nodiscard]] int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  [[nodiscard]] int length() const { return static_cast<int>(parts.size()); }
  [[nodiscard]] bool valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) return false;
      if (i + 1 < parts.size() && parts[i] <= parts[i + 1]) return false;
    }
    return true;
  }
  friend bool operator==(const StrictPartition&, const StrictPartition&) = default;
  friend auto operator<=>(const StrictPartition&, const StrictPartition&) = default;
};

/// A cell of a multipartition diagram. Columns are absolute: a strict row i occupies columns i..i+len-1.
/// `component` indexes strict components first (0-, 0+ order for two of them), then ordinary ones.
struct Box {
  int row = 1;
  int col = 1;
  int component = 0;

  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

class Multipartition {
 public:
  Multipartition() = default;
  Multipartition(Flavor flavor, std::vector<StrictPartition> strict, std::vector<Partition> ordinary)
      : flavor_(flavor), strict_(std::move(strict)), ordinary_(std::move(ordinary)) {
    if (static_cast<int>(strict_.size()) != strict_component_count(flavor_))
      throw InvalidParameter("wrong number of strict components for flavor " + to_string(flavor_));
    for (const auto& p : strict_)
      if (!p.valid()) throw InvalidParameter("strict component is not strictly decreasing");
    for (const auto& p : ordinary_)
      if (!p.valid()) throw InvalidParameter("ordinary component is not a partition");
    build_boxes();
  }

  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] const std::vector<StrictPartition>& strict() const { return strict_; }
  [[nodiscard]] const std::vector<Partition>& ordinary() const { return ordinary_; }
  [[nodiscard]] int m() const { return static_cast<int>(ordinary_.size()); }
  [[nodiscard]] int size() const { return static_cast<int>(boxes_.size()); }
  [[nodiscard]] int component_count() const { return static_cast<int>(strict_.size() + ordinary_.size()); }
  [[nodiscard]] bool is_strict_component(int c) const { return c < static_cast<int>(strict_.size()); }

  /// Row lengths of component c.
  [[nodiscard]] const std::vector<int>& rows_of(int c) const {
    return is_strict_component(c) ? strict_[c].parts : ordinary_[c - strict_.size()].parts;
  }

  /// Label used for residues: "0", "0-", "0+" for strict components and "1".."m" for ordinary ones.
  [[nodiscard]] std::string component_label(int c) const {
    if (is_strict_component(c)) {
      if (flavor_ == Flavor::s) return "0";
      return c == 0 ? "0-" : "0+";
    }
    return std::to_string(c - static_cast<int>(strict_.size()) + 1);
  }

  /// Boxes in row-reading order: components in order, rows top to bottom, left to right.
  [[nodiscard]] const std::vector<Box>& boxes() const { return boxes_; }

  [[nodiscard]] std::optional<int> box_index(const Box& b) const {
    auto it = index_.find(b);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] bool contains(const Box& b) const { return index_.count(b) > 0; }

  /// Cells (a, a) of the strict components.
  [[nodiscard]] std::vector<Box> diagonal_boxes() const {
    std::vector<Box> out;
    for (const auto& b : boxes_)
      if (is_strict_component(b.component) && b.row == b.col) out.push_back(b);
    return out;
  }

  [[nodiscard]] int diagonal_count() const {
    int n = 0;
    for (const auto& p : strict_) n += p.length();
    return n;
  }

  friend bool operator==(const Multipartition& a, const Multipartition& b) {
    return a.flavor_ == b.flavor_ && a.strict_ == b.strict_ && a.ordinary_ == b.ordinary_;
  }
  friend bool operator<(const Multipartition& a, const Multipartition& b) {
    if (a.flavor_ != b.flavor_) return a.flavor_ < b.flavor_;
    if (a.strict_ != b.strict_) return a.strict_ < b.strict_;
    return a.ordinary_ < b.ordinary_;
  }

 private:
  void build_boxes() {
    boxes_.clear();
    index_.clear();
    for (int c = 0; c < component_count(); ++c) {
      const auto& rows = rows_of(c);
      const bool shifted = is_strict_component(c);
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const int row = i + 1;
        const int first = shifted ? row : 1;
        for (int j = 0; j < rows[i]; ++j) {
          Box b{row, first + j, c};
          index_[b] = static_cast<int>(boxes_.size());
          boxes_.push_back(b);
        }
      }
    }
  }

  Flavor flavor_ = Flavor::zero;
  std::vector<StrictPartition> strict_;
  std::vector<Partition> ordinary_;
  std::vector<Box> boxes_;
  std::map<Box, int> index_;
};

/// Standard filling of a multipartition by 1..n. Entries are stored 1-based.
class StandardTableau {
 public:
  StandardTableau() = default;

  /// entry_of_box[b] is the entry in shape.boxes()[b]. Throws InvalidParameter unless standard.
  StandardTableau(std::shared_ptr<const Multipartition> shape, std::vector<int> entry_of_box)
      : shape_(std::move(shape)), entry_of_box_(std::move(entry_of_box)) {
    const int n = shape_->size();
    if (static_cast<int>(entry_of_box_.size()) != n) throw InvalidParameter("filling has the wrong size");
    box_of_entry_.assign(static_cast<std::size_t>(n), -1);
    for (int b = 0; b < n; ++b) {
      const int e = entry_of_box_[b];
      if (e < 1 || e > n || box_of_entry_[e - 1] != -1) throw InvalidParameter("filling is not a bijection");
      box_of_entry_[e - 1] = b;
    }
    if (!is_standard()) throw InvalidParameter("filling is not standard");
  }

  /// Row-reading tableau: 1..n inserted by rows starting from the first component.
  StandardTableau(const Multipartition& shape, std::vector<int> entry_of_box)
      : StandardTableau(std::make_shared<const Multipartition>(shape), std::move(entry_of_box)) {}

  static StandardTableau initial(std::shared_ptr<const Multipartition> shape) {
    std::vector<int> e(static_cast<std::size_t>(shape->size()));
    std::iota(e.begin(), e.end(), 1);
    return StandardTableau(std::move(shape), std::move(e));
  }
  static StandardTableau initial(const Multipartition& shape) {
    return initial(std::make_shared<const Multipartition>(shape));
  }

  [[nodiscard]] const Multipartition& shape() const { return *shape_; }
  [[nodiscard]] const std::shared_ptr<const Multipartition>& shared_shape() const { return shape_; }
  [[nodiscard]] int size() const { return static_cast<int>(entry_of_box_.size()); }
  [[nodiscard]] int entry(const Box& b) const { return entry_of_box_.at(*shape_->box_index(b)); }
  [[nodiscard]] int entry_at(int box_index) const { return entry_of_box_[box_index]; }
  [[nodiscard]] const Box& box_of(int entry) const { return shape_->boxes()[box_of_entry_.at(entry - 1)]; }
  [[nodiscard]] int box_index_of(int entry) const { return box_of_entry_.at(entry - 1); }
  [[nodiscard]] const std::vector<int>& entries() const { return entry_of_box_; }

  /// s_i admissible: swapping i and i+1 keeps the filling standard.
  [[nodiscard]] bool is_admissible(int i) const {
    const Box& a = box_of(i);
    const Box& b = box_of(i + 1);
    if (a.component != b.component) return true;
    return a.row != b.row && a.col != b.col;
  }

  friend bool operator==(const StandardTableau& a, const StandardTableau& b) {
    return a.entry_of_box_ == b.entry_of_box_;
  }
  friend bool operator<(const StandardTableau& a, const StandardTableau& b) {
    return a.entry_of_box_ < b.entry_of_box_;
  }

 private:
  [[nodiscard]] bool is_standard() const {
    for (int b = 0; b < static_cast<int>(entry_of_box_.size()); ++b) {
      const Box& x = shape_->boxes()[b];
      const int e = entry_of_box_[b];
      if (auto left = shape_->box_index({x.row, x.col - 1, x.component}); left && entry_of_box_[*left] > e)
        return false;
      if (auto up = shape_->box_index({x.row - 1, x.col, x.component}); up && entry_of_box_[*up] > e) return false;
    }
    return true;
  }

  std::shared_ptr<const Multipartition> shape_;
  std::vector<int> entry_of_box_;
  std::vector<int> box_of_entry_;
};

namespace detail {

inline void partitions_rec(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition{cur});
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline void strict_rec(int n, int max_part, std::vector<int>& cur, std::vector<StrictPartition>& out) {
  if (n == 0) {
    out.push_back(StrictPartition{cur});
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    strict_rec(n - p, p - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Partitions of n, reverse lexicographic ((n) first).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(n, n, cur, out);
  return out;
}

inline std::vector<StrictPartition> strict_partitions_of(int n) {
  std::vector<StrictPartition> out;
  std::vector<int> cur;
  detail::strict_rec(n, n, cur, out);
  return out;
}

/// All m-multipartitions of n.
inline std::vector<std::vector<Partition>> multipartitions_of(int m, int n) {
  std::vector<std::vector<Partition>> out;
  if (m == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  for (int a = n; a >= 0; --a)
    for (const auto& head : partitions_of(a))
      for (auto& tail : multipartitions_of(m - 1, n - a)) {
        tail.insert(tail.begin(), head);
        out.push_back(std::move(tail));
      }
  return out;
}

/// Every multipartition of the flavor with m ordinary components and total size n, in a fixed order.
inline std::vector<Multipartition> enumerate_multipartitions(Flavor flavor, int m, int n) {
  std::vector<Multipartition> out;
  const int ns = strict_component_count(flavor);
  std::vector<StrictPartition> strict;
  auto rec = [&](auto&& self, int k, int remaining) -> void {
    if (k == ns) {
      for (auto& ord : multipartitions_of(m, remaining)) out.emplace_back(flavor, strict, std::move(ord));
      return;
    }
    for (int a = remaining; a >= 0; --a)
      for (const auto& sp : strict_partitions_of(a)) {
        strict.push_back(sp);
        self(self, k + 1, remaining - a);
        strict.pop_back();
      }
  };
  rec(rec, 0, n);
  return out;
}

/// Backtracking insertion of 1..n; the initial (row-reading) tableau comes first.
inline std::vector<StandardTableau> enumerate_standard_tableaux(const Multipartition& shape_in) {
  auto shared = std::make_shared<const Multipartition>(shape_in);
  const Multipartition& shape = *shared;
  const int n = shape.size();
  const auto& boxes = shape.boxes();
  std::vector<int> filling(static_cast<std::size_t>(n), 0);
  std::vector<StandardTableau> out;
  auto addable = [&](int b) {
    if (filling[b] != 0) return false;
    const Box& x = boxes[b];
    if (auto left = shape.box_index({x.row, x.col - 1, x.component}); left && filling[*left] == 0) return false;
    if (auto up = shape.box_index({x.row - 1, x.col, x.component}); up && filling[*up] == 0) return false;
    return true;
  };
  auto rec = [&](auto&& self, int k) -> void {
    if (k > n) {
      out.emplace_back(shared, filling);
      return;
    }
    for (int b = 0; b < n; ++b) {
      if (!addable(b)) continue;
      filling[b] = k;
      self(self, k + 1);
      filling[b] = 0;
    }
  };
  rec(rec, 1);
  return out;
}

/// Entries sitting on diagonal cells of strict components.
inline std::set<int> diagonal_positions(const StandardTableau& t) {
  std::set<int> out;
  for (const auto& b : t.shape().diagonal_boxes()) out.insert(t.entry(b));
  return out;
}

/// s_i t; throws NotAdmissible when the result would not be standard.
inline StandardTableau apply_transposition(const StandardTableau& t, int i) {
  if (i < 1 || i >= t.size()) throw InvalidParameter("transposition index out of range");
  if (!t.is_admissible(i)) throw NotAdmissible("s_" + std::to_string(i) + " is not admissible");
  std::vector<int> e = t.entries();
  std::swap(e[t.box_index_of(i)], e[t.box_index_of(i + 1)]);
  return StandardTableau(t.shared_shape(), std::move(e));
}

/// Word k_1, k_2, ... (in application order) with t = s_{k_last} ... s_{k_1} t^lambda,
/// every prefix standard, found by breadth-first search.
inline std::vector<int> admissible_path(const StandardTableau& t) {
  const StandardTableau start = StandardTableau::initial(t.shared_shape());
  std::map<std::vector<int>, std::pair<std::vector<int>, int>> parent;
  std::deque<StandardTableau> queue{start};
  parent[start.entries()] = {{}, 0};
  while (!queue.empty()) {
    StandardTableau cur = queue.front();
    queue.pop_front();
    if (cur == t) break;
    for (int i = 1; i < cur.size(); ++i) {
      if (!cur.is_admissible(i)) continue;
      StandardTableau next = apply_transposition(cur, i);
      if (parent.count(next.entries())) continue;
      parent[next.entries()] = {cur.entries(), i};
      queue.push_back(std::move(next));
    }
  }
  std::vector<int> word;
  std::vector<int> key = t.entries();
  while (key != start.entries()) {
    auto it = parent.find(key);
    if (it == parent.end()) throw Error("tableau unreachable from the initial tableau");
    word.push_back(it->second.second);
    key = it->second.first;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

/// Number of entry pairs ordered differently in t and t^lambda.
inline int inversion_count(const StandardTableau& t) {
  int inv = 0;
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (t.entry_at(a) > t.entry_at(b)) ++inv;
  return inv;
}

/// Permutation tau (tau[k-1] = tau(k)) with t = tau . t^lambda, i.e. tau(k) = t(box holding k in t^lambda).
inline std::vector<int> permutation_from_initial(const StandardTableau& t) {
  std::vector<int> tau(static_cast<std::size_t>(t.size()));
  for (int b = 0; b < t.size(); ++b) tau[b] = t.entry_at(b);
  return tau;
}

/// |Std| by removing the largest entry recursively (memoized on the diagram).
inline std::uint64_t count_standard_tableaux(const Multipartition& shape) {
  using Key = std::vector<std::vector<int>>;
  std::map<Key, std::uint64_t> memo;
  const int ns = static_cast<int>(shape.strict().size());
  auto rec = [&](auto&& self, Key& rows) -> std::uint64_t {
    bool empty = true;
    for (const auto& r : rows)
      if (!r.empty()) empty = false;
    if (empty) return 1;
    if (auto it = memo.find(rows); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (int c = 0; c < static_cast<int>(rows.size()); ++c) {
      auto& r = rows[c];
      for (int i = 0; i < static_cast<int>(r.size()); ++i) {
        const bool last = i + 1 == static_cast<int>(r.size());
        // Removing the last cell of row i keeps a valid (strict) shape.
        bool ok;
        if (c < ns)
          ok = last ? true : r[i] - 1 > r[i + 1];
        else
          ok = last ? true : r[i] - 1 >= r[i + 1];
        if (!ok) continue;
        --r[i];
        bool popped = false;
        if (r[i] == 0) {
          r.pop_back();
          popped = true;
        }
        total += self(self, rows);
        if (popped) r.push_back(0);
        ++r[i];
      }
    }
    memo[rows] = total;
    return total;
  };
  Key rows;
  for (int c = 0; c < shape.component_count(); ++c) rows.push_back(shape.rows_of(c));
  return rec(rec, rows);
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t b = 1;
  for (int j = 1; j <= k; ++j) b = b * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return b;
}

/// Checks sum |Std(lambda)|^2 = n! m^n over m-multipartitions and
/// sum 2^(n - len) |Std(xi)|^2 = n! over strict partitions xi of n.
inline bool check_rsk_identities(int n, int m) {
  std::uint64_t lhs = 0;
  for (const auto& mp : enumerate_multipartitions(Flavor::zero, m, n)) {
    std::uint64_t c = count_standard_tableaux(mp);
    lhs += c * c;
  }
  std::uint64_t rhs = factorial(n);
  for (int k = 0; k < n; ++k) rhs *= static_cast<std::uint64_t>(m);
  if (m == 0 && n == 0) rhs = 1;
  if (lhs != rhs) return false;

  std::uint64_t strict_sum = 0;
  for (const auto& xi : strict_partitions_of(n)) {
    Multipartition shape(Flavor::s, {xi}, {});
    std::uint64_t c = count_standard_tableaux(shape);
    strict_sum += (std::uint64_t{1} << (n - xi.length())) * c * c;
  }
  return strict_sum == factorial(n);
}

/// |Std| of a two-strict-component shape as a product of binomials and component counts.
inline std::uint64_t factorized_std_count(const Multipartition& shape) {
  const int n = shape.size();
  const int a = shape.strict()[0].size();
  const int b = shape.strict()[1].size();
  Multipartition minus(Flavor::s, {shape.strict()[0]}, {});
  Multipartition plus(Flavor::s, {shape.strict()[1]}, {});
  Multipartition rest(Flavor::zero, {}, shape.ordinary());
  return binomial(n, n - a - b) * binomial(a + b, a) * count_standard_tableaux(minus) *
         count_standard_tableaux(plus) * count_standard_tableaux(rest);
}

}  // namespace hcsa
