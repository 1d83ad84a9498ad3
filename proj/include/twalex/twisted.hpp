#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/fingrp.hpp"
#include "twalex/laurent.hpp"
#include "twalex/polymat.hpp"
#include "twalex/presentation.hpp"
#include "twalex/word.hpp"

namespace twalex {

/// Element of the integer group ring of a free group: freely reduced words
/// with nonzero integer coefficients.
class GroupRingElement {
 public:
  GroupRingElement() = default;

  static GroupRingElement of(const Word& w, std::int64_t c = 1) {
    GroupRingElement e;
    e.add(w, c);
    return e;
  }

  void add(const Word& w, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(free_reduce(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Word, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out;
    for (const auto& [u, c] : a.terms_) {
      for (const auto& [v, d] : b.terms_) out.add(u * v, c * d);
    }
    return out;
  }

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::map<Word, std::int64_t> terms_;
};

/// Fox derivative d w / d x_j (j is 1-based):
/// d(uv) = du + u dv, d x_j = 1, d x_j^-1 = -x_j^-1.
inline GroupRingElement fox_derivative(const Word& w, int j) {
  GroupRingElement out;
  Word prefix;
  for (int l : w) {
    if (l == j) {
      out.add(prefix, 1);
      prefix.push_back(l);
    } else if (l == -j) {
      prefix.push_back(l);
      out.add(prefix, -1);
    } else {
      prefix.push_back(l);
    }
  }
  return out;
}

/// A permutation matrix times a single power of t, kept symbolically as a
/// group element (acting by left multiplication) and an exponent.
struct MonomialMatrix {
  Element element = FiniteGroup::identity();
  std::int64_t exponent = 0;
};

/// The representation alpha (x) phi: g -> t^{phi(g)} * regular_rep(alpha(g))
/// for a fixed presentation and homomorphism to a finite group.
class TwistedRep {
 public:
  TwistedRep(const GroupPresentation& p, const FiniteGroup& g, Homomorphism hom)
      : presentation_(&p), group_(&g), hom_(std::move(hom)) {
    if (hom_.images.size() != p.gen_count()) throw DomainError("homomorphism does not match the presentation");
    for (std::size_t i = 0; i < p.gen_count(); ++i) generators_.push_back({hom_.images[i], p.phi[i]});
  }

  const GroupPresentation& presentation() const noexcept { return *presentation_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  const Homomorphism& hom() const noexcept { return hom_; }
  std::size_t block_size() const noexcept { return group_->order(); }

  /// Cached image of generator i (0-based).
  const MonomialMatrix& generator(std::size_t i) const { return generators_.at(i); }

  /// Image of a word as a monomial matrix.
  MonomialMatrix image(const Word& w) const {
    MonomialMatrix m;
    for (int l : w) {
      const auto& gen = generators_[static_cast<std::size_t>(std::abs(l) - 1)];
      if (l > 0) {
        m.element = group_->mult(m.element, gen.element);
        m.exponent += gen.exponent;
      } else {
        m.element = group_->mult(m.element, group_->inverse(gen.element));
        m.exponent -= gen.exponent;
      }
    }
    return m;
  }

  /// Dense form of a monomial matrix.
  PolyMatrix to_matrix(const MonomialMatrix& m) const {
    const std::size_t n = block_size();
    PolyMatrix out(n, n);
    for (Element h = 0; h < n; ++h) out(group_->mult(m.element, h), h) = LaurentPoly::t(m.exponent);
    return out;
  }

 private:
  const GroupPresentation* presentation_;
  const FiniteGroup* group_;
  Homomorphism hom_;
  std::vector<MonomialMatrix> generators_;
};

/// Sum of coefficient * (image of word) over the terms of e; an n x n matrix.
inline PolyMatrix apply_rep(const TwistedRep& rep, const GroupRingElement& e) {
  const std::size_t n = rep.block_size();
  // Collect per-entry exponent -> coefficient before building polynomials.
  std::vector<std::map<std::int64_t, std::int64_t>> acc(n * n);
  for (const auto& [w, c] : e.terms()) {
    const auto m = rep.image(w);
    for (Element h = 0; h < n; ++h) {
      const std::size_t row = rep.group().mult(m.element, h);
      acc[row * n + h][m.exponent] += c;
    }
  }
  PolyMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t col = 0; col < n; ++col) {
      for (const auto& [exp, c] : acc[r * n + col]) out(r, col).add_term(mpz_class(static_cast<long>(c)), exp);
    }
  }
  return out;
}

/// Block matrix whose (i, j) block is apply_rep(d r_i / d x_j); size
/// (relators * n) x (generators * n).
inline PolyMatrix jacobian(const TwistedRep& rep) {
  const auto& p = rep.presentation();
  const std::size_t n = rep.block_size();
  PolyMatrix out(p.relators.size() * n, p.gen_count() * n);
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (std::size_t j = 0; j < p.gen_count(); ++j) {
      out.place(i * n, j * n, apply_rep(rep, fox_derivative(p.relators[i], static_cast<int>(j) + 1)));
    }
  }
  return out;
}

/// The n x (g n) boundary matrix [ rep(x_1) - I | ... | rep(x_g) - I ].
inline PolyMatrix boundary_row(const TwistedRep& rep) {
  const std::size_t n = rep.block_size();
  const std::size_t g = rep.presentation().gen_count();
  PolyMatrix out(n, g * n);
  const auto id = PolyMatrix::identity(n);
  for (std::size_t j = 0; j < g; ++j) out.place(0, j * n, rep.to_matrix(rep.generator(j)) - id);
  return out;
}

/// Order of the degree-0 twisted module, read off its permutation structure.
///
/// The module is free abelian on G x Z modulo (h, k) ~ (alpha(x_j) h, k + phi(x_j)),
/// with t shifting k. Each orbit of the subgroup generated by the
/// (alpha(x_j), phi(x_j)) contributes t^d - 1, where d generates the
/// phi-values of closed loops in that orbit's Schreier graph.
inline LaurentPoly delta0(const TwistedRep& rep) {
  const auto& g = rep.group();
  const std::size_t n = g.order();
  const std::size_t ngen = rep.presentation().gen_count();
  std::vector<std::optional<std::int64_t>> label(n);
  LaurentPoly out = LaurentPoly::constant(1);
  for (Element root = 0; root < n; ++root) {
    if (label[root]) continue;
    label[root] = 0;
    std::vector<Element> stack{root};
    std::int64_t d = 0;
    while (!stack.empty()) {
      const Element h = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < ngen; ++j) {
        const auto& gen = rep.generator(j);
        const Element next = g.mult(gen.element, h);
        const std::int64_t reach = *label[h] + gen.exponent;
        if (!label[next]) {
          label[next] = reach;
          stack.push_back(next);
        } else {
          d = std::gcd(d, reach - *label[next]);
        }
      }
    }
    if (d == 0) return {};  // phi vanishes on the orbit: H0 has a free summand
    out *= LaurentPoly::t(d) - LaurentPoly::constant(1);
  }
  return canonical_form(out);
}

/// Delta_0 as the gcd of all n x n minors of boundary_row(rep). Exponential
/// in the group order; for cross-checking delta0 on small groups.
inline LaurentPoly delta0_by_minors(const TwistedRep& rep) {
  const auto m = boundary_row(rep);
  return gcd_set(all_maximal_minors(m, rep.block_size()));
}

/// det(rep(x_j) - I) up to a unit: the product of t^{phi(x_j) l} - 1 over
/// the cycles (all of length l = ord(alpha(x_j))) of left multiplication.
inline LaurentPoly generator_denominator(const TwistedRep& rep, std::size_t j) {
  const auto& gen = rep.generator(j);
  if (gen.exponent == 0) return {};
  const std::size_t len = rep.group().element_order(gen.element);
  const std::size_t cycles = rep.block_size() / len;
  const std::int64_t e = std::abs(gen.exponent) * static_cast<std::int64_t>(len);
  const LaurentPoly factor = LaurentPoly::t(e) - LaurentPoly::constant(1);
  LaurentPoly out = LaurentPoly::constant(1);
  for (std::size_t c = 0; c < cycles; ++c) out *= factor;
  return out;
}

struct AlexanderResult {
  LaurentPoly delta0;
  LaurentPoly delta1;          // canonical form; zero is a vanishing certificate
  std::size_t column_used = 0; // 0-based generator index
  std::size_t group_order = 1;
  std::int64_t div = 1;
  bool monic = false;
  std::optional<std::int64_t> span;
};

/// Generator indices j with phi(x_j) != 0, ascending.
inline std::vector<std::size_t> admissible_columns(const GroupPresentation& p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p.gen_count(); ++j) {
    if (p.phi[j] != 0) out.push_back(j);
  }
  return out;
}

/// Delta_1 from the deficiency-one identity with block column j deleted:
/// Delta_1 = det(M_j) * Delta_0 / det(rep(x_j) - I). Canonical form.
inline LaurentPoly delta1_at_column(const TwistedRep& rep, std::size_t j, const LaurentPoly& d0,
                                    const PolyMatrix& jac) {
  const auto& p = rep.presentation();
  if (p.deficiency() != 1) throw DomainError("twisted Delta_1 requires a deficiency-one presentation");
  if (p.phi.at(j) == 0) throw DomainError("column is not admissible: phi vanishes on the generator");
  const auto minor = delete_block_column(jac, j, rep.block_size());
  const auto det = determinant(minor);
  if (det.is_zero()) return {};
  const auto quotient = exact_divide(det * d0, generator_denominator(rep, j));
  if (!quotient) {
    throw InternalError("Delta_1 assembly: det(M_j) * Delta_0 is not divisible by det(rep(x_j) - I)");
  }
  return canonical_form(*quotient);
}

inline LaurentPoly delta1_at_column(const TwistedRep& rep, std::size_t j) {
  return delta1_at_column(rep, j, delta0(rep), jacobian(rep));
}

/// Full twisted Alexander data for one homomorphism, using the first
/// admissible column.
inline AlexanderResult delta1(const TwistedRep& rep) {
  const auto& p = rep.presentation();
  const auto cols = admissible_columns(p);
  if (cols.empty()) throw DomainError("no admissible column: phi vanishes on every generator");
  AlexanderResult r;
  r.column_used = cols.front();
  r.group_order = rep.block_size();
  r.div = divisibility(p, rep.group(), rep.hom());
  r.delta0 = delta0(rep);
  r.delta1 = delta1_at_column(rep, r.column_used, r.delta0, jacobian(rep));
  r.monic = is_monic(r.delta1);
  if (!r.delta1.is_zero()) r.span = span_degree(r.delta1);
  return r;
}

}  // namespace twalex
