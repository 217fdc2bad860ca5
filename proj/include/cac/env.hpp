#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cac/term.hpp"

namespace cac {

// Ordered list of type declarations x1:T1, ..., xn:Tn. Later declarations
// shadow earlier ones with the same name.
class TypingEnv {
 public:
  using Entry = std::pair<std::string, Term>;

  TypingEnv() = default;
  TypingEnv(std::initializer_list<Entry> init) : entries_(init) {}

  void push(std::string name, Term type) { entries_.emplace_back(std::move(name), std::move(type)); }
  void pop() { entries_.pop_back(); }

  const Term* lookup(const std::string& name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }

  NameSet names() const {
    NameSet out;
    for (const auto& [x, t] : entries_) out.insert(x);
    return out;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const TypingEnv&) const = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace cac
