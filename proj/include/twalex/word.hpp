#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "twalex/error.hpp"

namespace twalex {

/// A word in a free group. Letters are signed 1-based generator indices;
/// a negative letter denotes the inverse generator.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(int letter) { letters_.push_back(letter); }

  /// Largest generator index used, 0 for the empty word.
  int max_generator() const noexcept {
    int m = 0;
    for (int l : letters_) m = std::max(m, std::abs(l));
    return m;
  }

  Word inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& l : out) l = -l;
    return Word(std::move(out));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<int> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

/// Cancels adjacent inverse pairs until none remain.
inline Word free_reduce(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

/// Free product of two words, reduced.
inline Word reduced_product(const Word& a, const Word& b) { return free_reduce(a * b); }

/// Renders a word with the given generator names (one lowercase letter per
/// generator); inverses print uppercase. The empty word prints as "1".
inline std::string to_string(const Word& w, std::string_view names) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (int l : w) {
    const auto idx = static_cast<std::size_t>(std::abs(l) - 1);
    if (idx >= names.size()) throw DomainError("letter outside the generator alphabet");
    const char c = names[idx];
    out.push_back(l > 0 ? c : static_cast<char>(c - 'a' + 'A'));
  }
  return out;
}

/// Parses a contiguous string of letters ("abAB") against generator names.
/// Whitespace is ignored. Throws DomainError on an unknown letter.
inline Word parse_word(std::string_view text, std::string_view names) {
  Word w;
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    const bool upper = c >= 'A' && c <= 'Z';
    const char lower = upper ? static_cast<char>(c - 'A' + 'a') : c;
    const auto pos = names.find(lower);
    if ((!upper && (c < 'a' || c > 'z')) || pos == std::string_view::npos) {
      throw DomainError(std::string("unknown generator letter '") + c + "'");
    }
    const int idx = static_cast<int>(pos) + 1;
    w.push_back(upper ? -idx : idx);
  }
  return w;
}

}  // namespace twalex
