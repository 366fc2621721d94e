#pragma once

#include "exploded/number.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace exploded {

/// Finite poset stored by its covering relation.
class Poset {
 public:
  Poset() = default;
  explicit Poset(std::vector<std::string> elements) : elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;
    up_.resize(elements_.size());
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }

  std::size_t index_of(const std::string& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw InvalidArgument("poset: unknown element '" + e + "'");
    return it->second;
  }

  /// Declare that `larger` covers `smaller`.
  void add_cover(const std::string& smaller, const std::string& larger) {
    auto i = index_of(smaller), j = index_of(larger);
    if (std::find(up_[i].begin(), up_[i].end(), j) == up_[i].end()) up_[i].push_back(j);
  }

  /// (smaller, larger) pairs in deterministic order.
  std::vector<std::pair<std::string, std::string>> covers() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < up_.size(); ++i)
      for (auto j : up_[i]) out.emplace_back(elements_[i], elements_[j]);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool leq(const std::string& a, const std::string& b) const {
    auto s = index_of(a), t = index_of(b);
    if (s == t) return true;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : up_[x]) {
        if (y == t) return true;
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  std::vector<std::string> minimal_elements() const {
    std::vector<bool> has_below(size(), false);
    for (std::size_t i = 0; i < up_.size(); ++i)
      for (auto j : up_[i]) has_below[j] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (!has_below[i]) out.push_back(elements_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> maximal_elements() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (up_[i].empty()) out.push_back(elements_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> covered_by(const std::string& e) const {
    std::vector<std::string> out;
    auto j = index_of(e);
    for (std::size_t i = 0; i < up_.size(); ++i)
      if (std::find(up_[i].begin(), up_[i].end(), j) != up_[i].end()) out.push_back(elements_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_dot(const std::string& name = "poset") const {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=BT;\n";
    auto sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) os << "  \"" << escape(e) << "\";\n";
    for (const auto& [a, b] : covers()) os << "  \"" << escape(a) << "\" -> \"" << escape(b) << "\";\n";
    os << "}\n";
    return os.str();
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  }

  std::vector<std::string> elements_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> up_;
};

}  // namespace exploded
