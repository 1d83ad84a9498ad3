#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/laurent.hpp"
#include "twalex/presentation.hpp"
#include "twalex/word.hpp"

namespace twalex {

/// Elementary Nielsen move on the image tuple of a free-group automorphism.
struct NielsenMove {
  enum class Kind { Swap, Invert, Multiply };
  Kind kind;
  std::size_t i;      // 1-based
  std::size_t j = 0;  // 1-based; unused by Invert

  static NielsenMove swap(std::size_t i, std::size_t j) { return {Kind::Swap, i, j}; }
  static NielsenMove invert(std::size_t i) { return {Kind::Invert, i, 0}; }
  /// x_i <- x_i x_j
  static NielsenMove multiply(std::size_t i, std::size_t j) { return {Kind::Multiply, i, j}; }

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

/// Automorphism of the free group of rank k, given by the images of x_1..x_k.
struct FreeAutomorphism {
  std::size_t rank = 0;
  std::vector<Word> images;

  /// k x k exponent-sum matrix: entry (i, j) is the exponent sum of x_j in h(x_i).
  std::vector<std::vector<std::int64_t>> abelianization() const {
    std::vector<std::vector<std::int64_t>> h(rank, std::vector<std::int64_t>(rank, 0));
    for (std::size_t i = 0; i < rank; ++i) {
      for (int l : images[i]) h[i][static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    }
    return h;
  }
};

/// Applies moves left to right to the identity image tuple.
inline FreeAutomorphism compose_nielsen(const std::vector<NielsenMove>& moves, std::size_t rank) {
  FreeAutomorphism h;
  h.rank = rank;
  for (std::size_t i = 1; i <= rank; ++i) h.images.push_back(Word{static_cast<int>(i)});
  auto check = [&](std::size_t idx) {
    if (idx < 1 || idx > rank) throw DomainError("Nielsen move index " + std::to_string(idx) + " out of range");
  };
  for (const auto& m : moves) {
    check(m.i);
    switch (m.kind) {
      case NielsenMove::Kind::Swap:
        check(m.j);
        std::swap(h.images[m.i - 1], h.images[m.j - 1]);
        break;
      case NielsenMove::Kind::Invert:
        h.images[m.i - 1] = h.images[m.i - 1].inverse();
        break;
      case NielsenMove::Kind::Multiply:
        check(m.j);
        if (m.i == m.j) throw DomainError("x_i <- x_i x_i is not an automorphism");
        h.images[m.i - 1] = reduced_product(h.images[m.i - 1], h.images[m.j - 1]);
        break;
    }
  }
  return h;
}

/// Parses a move list such as "x1<-x1x2; swap x1 x2; inv x2".
inline std::vector<NielsenMove> parse_moves(std::string_view text) {
  std::vector<NielsenMove> out;
  auto index_of = [&](std::string_view tok) -> std::size_t {
    if (tok.size() < 2 || tok[0] != 'x') throw ValidationError("bad generator '" + std::string(tok) + "' in moves");
    std::size_t v = 0;
    for (char c : tok.substr(1)) {
      if (c < '0' || c > '9') throw ValidationError("bad generator '" + std::string(tok) + "' in moves");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  std::string all(text);
  std::istringstream in(all);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto toks = detail::split_ws(item);
    if (toks.empty()) continue;
    if (toks[0] == "swap" && toks.size() == 3) {
      out.push_back(NielsenMove::swap(index_of(toks[1]), index_of(toks[2])));
    } else if (toks[0] == "inv" && toks.size() == 2) {
      out.push_back(NielsenMove::invert(index_of(toks[1])));
    } else {
      std::string joined;
      for (const auto& t : toks) joined += t;
      const auto arrow = joined.find("<-");
      if (arrow == std::string::npos) throw ValidationError("unrecognised move '" + item + "'");
      const std::string lhs = joined.substr(0, arrow);
      const std::string rhs = joined.substr(arrow + 2);
      const auto second = rhs.find('x', 1);
      if (rhs.substr(0, lhs.size()) != lhs || second != lhs.size()) {
        throw ValidationError("move '" + item + "' must have the form xi<-xixj");
      }
      out.push_back(NielsenMove::multiply(index_of(lhs), index_of(rhs.substr(second))));
    }
  }
  return out;
}

inline constexpr std::size_t kMaxTorusRank = 25;

/// The mapping-torus presentation <x_1..x_k, s | s x_i s^-1 h(x_i)^-1>,
/// with phi(s) = 1, phi(x_i) = 0 and norm max(k - 1, 0). Free generators
/// are named a, b, c, ... and the stable letter takes the next letter.
inline GroupPresentation mapping_torus(const FreeAutomorphism& h, std::string name = {}) {
  if (h.rank == 0) throw DomainError("mapping torus needs rank at least 1");
  if (h.rank > kMaxTorusRank) {
    throw DomainError("rank " + std::to_string(h.rank) + " exceeds the letter budget of " +
                      std::to_string(kMaxTorusRank));
  }
  GroupPresentation p;
  p.name = name.empty() ? "torus" : std::move(name);
  for (std::size_t i = 0; i < h.rank; ++i) p.names.push_back(static_cast<char>('a' + i));
  p.names.push_back(static_cast<char>('a' + h.rank));
  const int s = static_cast<int>(h.rank) + 1;
  for (std::size_t i = 0; i < h.rank; ++i) {
    Word r{s, static_cast<int>(i) + 1, -s};
    p.relators.push_back(free_reduce(r * h.images[i].inverse()));
  }
  p.phi.assign(h.rank + 1, 0);
  p.phi.back() = 1;
  p.closed = false;
  p.thurston_norm = static_cast<std::int64_t>(h.rank) - 1;
  validate(p);
  return p;
}

/// det(t I - H) for the abelianized monodromy H, by Laplace expansion over
/// column subsets (independent of the elimination code path).
inline LaurentPoly untwisted_oracle(const FreeAutomorphism& h) {
  const auto mat = h.abelianization();
  const std::size_t k = h.rank;
  if (k > 20) throw DomainError("untwisted oracle limited to rank 20");
  auto entry = [&](std::size_t r, std::size_t c) {
    LaurentPoly e = LaurentPoly::constant(-mat[r][c]);
    if (r == c) e += LaurentPoly::t(1);
    return e;
  };
  // minors[S] = determinant of rows 0..|S|-1 against the column set S.
  std::map<std::uint32_t, LaurentPoly> minors{{0u, LaurentPoly::constant(1)}};
  for (std::size_t row = 0; row < k; ++row) {
    std::map<std::uint32_t, LaurentPoly> next;
    for (const auto& [set, val] : minors) {
      if (val.is_zero()) continue;
      for (std::size_t c = 0; c < k; ++c) {
        const std::uint32_t bit = 1u << c;
        if (set & bit) continue;
        // Sign: number of chosen columns greater than c.
        const int above = std::popcount(set >> (c + 1));
        LaurentPoly term = val * entry(row, c);
        if (above % 2) term = -term;
        next[set | bit] += term;
      }
    }
    minors = std::move(next);
  }
  return minors[(1u << k) - 1];
}

}  // namespace twalex
