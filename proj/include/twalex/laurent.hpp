#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twalex/error.hpp"

namespace twalex {

/// Integer Laurent polynomial sum_{i=k}^{l} a_i t^i with arbitrary-precision
/// coefficients.
///
/// Stored as the lowest exponent k plus the dense coefficient run
/// a_k..a_l. Nonzero values always have a_k != 0 and a_l != 0; the zero
/// polynomial is the empty run with min_exp 0, so structural equality is
/// value equality.
class LaurentPoly {
 public:
  using Coeff = mpz_class;

  LaurentPoly() = default;

  /// The monomial c * t^exp.
  explicit LaurentPoly(Coeff c, std::int64_t exp = 0) {
    if (c != 0) {
      min_exp_ = exp;
      coeffs_.push_back(std::move(c));
    }
  }

  static LaurentPoly constant(long c) { return LaurentPoly(Coeff(c)); }
  static LaurentPoly monomial(long c, std::int64_t exp) { return LaurentPoly(Coeff(c), exp); }
  static LaurentPoly t(std::int64_t exp = 1) { return LaurentPoly(Coeff(1), exp); }

  /// Builds from a coefficient run starting at min_exp; trims zeros.
  static LaurentPoly from_coeffs(std::int64_t min_exp, std::vector<Coeff> coeffs) {
    LaurentPoly p;
    p.min_exp_ = min_exp;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
  }

  static LaurentPoly from_ints(std::int64_t min_exp, std::initializer_list<long> coeffs) {
    std::vector<Coeff> c;
    for (long v : coeffs) c.emplace_back(v);
    return from_coeffs(min_exp, std::move(c));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t min_exp() const noexcept { return min_exp_; }
  std::int64_t max_exp() const noexcept {
    return coeffs_.empty() ? 0 : min_exp_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
  /// Number of stored coefficients (span + 1, or 0 for zero).
  std::size_t length() const noexcept { return coeffs_.size(); }

  Coeff coeff(std::int64_t e) const {
    if (is_zero() || e < min_exp_ || e > max_exp()) return 0;
    return coeffs_[static_cast<std::size_t>(e - min_exp_)];
  }
  const Coeff& top_coeff() const {
    if (is_zero()) throw DomainError("zero polynomial has no top coefficient");
    return coeffs_.back();
  }
  const Coeff& bottom_coeff() const {
    if (is_zero()) throw DomainError("zero polynomial has no bottom coefficient");
    return coeffs_.front();
  }

  /// Multiplication by t^k.
  LaurentPoly shifted(std::int64_t k) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.min_exp_ += k;
    return p;
  }

  /// The substitution t -> t^-1.
  LaurentPoly reflected() const {
    if (is_zero()) return {};
    return from_coeffs(-max_exp(), std::vector<Coeff>(coeffs_.rbegin(), coeffs_.rend()));
  }

  /// Non-negative gcd of the coefficients; 0 for the zero polynomial.
  Coeff content() const {
    Coeff g = 0;
    for (const auto& c : coeffs_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  /// Divides out the content; the sign is kept.
  LaurentPoly primitive_part() const {
    const Coeff g = content();
    if (g == 0 || g == 1) return *this;
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return add_scaled(o, 1); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return add_scaled(o, -1); }

  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  LaurentPoly& operator*=(const Coeff& c) {
    if (c == 0) {
      *this = {};
    } else {
      for (auto& a : coeffs_) a *= c;
    }
    return *this;
  }

  /// Adds c * t^e in place.
  void add_term(const Coeff& c, std::int64_t e) {
    if (c == 0) return;
    if (is_zero()) {
      min_exp_ = e;
      coeffs_.assign(1, c);
      return;
    }
    if (e < min_exp_) {
      coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(min_exp_ - e), Coeff(0));
      min_exp_ = e;
    } else if (e > max_exp()) {
      coeffs_.resize(static_cast<std::size_t>(e - min_exp_) + 1, Coeff(0));
    }
    coeffs_[static_cast<std::size_t>(e - min_exp_)] += c;
    trim();
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Coeff& c) { return a *= c; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
      }
    }
    return from_coeffs(a.min_exp_ + b.min_exp_, std::move(out));
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_;
  }

 private:
  LaurentPoly& add_scaled(const LaurentPoly& o, int sign) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = sign > 0 ? o : -o;
      return *this;
    }
    const std::int64_t lo = std::min(min_exp_, o.min_exp_);
    const std::int64_t hi = std::max(max_exp(), o.max_exp());
    if (lo < min_exp_) coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(min_exp_ - lo), Coeff(0));
    min_exp_ = lo;
    coeffs_.resize(static_cast<std::size_t>(hi - lo) + 1, Coeff(0));
    const auto off = static_cast<std::size_t>(o.min_exp_ - lo);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
      if (sign > 0) {
        coeffs_[off + i] += o.coeffs_[i];
      } else {
        coeffs_[off + i] -= o.coeffs_[i];
      }
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      min_exp_ = 0;
      return;
    }
    std::size_t end = coeffs_.size();
    while (coeffs_[end - 1] == 0) --end;
    coeffs_.resize(end);
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      min_exp_ += static_cast<std::int64_t>(lead);
    }
  }

  std::int64_t min_exp_ = 0;
  std::vector<Coeff> coeffs_;
};

/// Highest minus lowest exponent. Throws DomainError on zero.
inline std::int64_t span_degree(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no degree");
  return p.max_exp() - p.min_exp();
}

/// Top coefficient is +-1. The zero polynomial is never monic.
inline bool is_monic(const LaurentPoly& p) {
  if (p.is_zero()) return false;
  return abs(p.top_coeff()) == 1;
}

/// Representative of p * (+-t^k) with min_exp 0 and positive top coefficient.
inline LaurentPoly canonical_form(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  LaurentPoly q = p.shifted(-p.min_exp());
  return sgn(q.top_coeff()) < 0 ? -q : q;
}

/// p = +-t^k * q for some integer k.
inline bool unit_equal(const LaurentPoly& p, const LaurentPoly& q) {
  return canonical_form(p) == canonical_form(q);
}

/// Returns r with p = q * r, or nullopt when q does not divide p in Z[t^{+-1}].
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.is_zero()) return LaurentPoly{};
  const auto& num = p.coeffs();
  const auto& den = q.coeffs();
  if (num.size() < den.size()) return std::nullopt;
  if (den.size() == 1) {
    std::vector<mpz_class> out(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (!mpz_divisible_p(num[i].get_mpz_t(), den[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(out[i].get_mpz_t(), num[i].get_mpz_t(), den[0].get_mpz_t());
    }
    return LaurentPoly::from_coeffs(p.min_exp() - q.min_exp(), std::move(out));
  }
  std::vector<mpz_class> rem = num;
  const std::size_t n = den.size();
  const std::size_t qlen = num.size() - n + 1;
  std::vector<mpz_class> quot(qlen);
  const mpz_class& lead = den.back();
  for (std::size_t i = qlen; i-- > 0;) {
    mpz_class& top = rem[i + n - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    mpz_divexact(quot[i].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (std::size_t k = 0; k < n; ++k) {
      mpz_submul(rem[i + k].get_mpz_t(), quot[i].get_mpz_t(), den[k].get_mpz_t());
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (rem[k] != 0) return std::nullopt;
  }
  return LaurentPoly::from_coeffs(p.min_exp() - q.min_exp(), std::move(quot));
}

namespace detail {

// Primitive pseudo-remainder sequence on ordinary polynomials (coefficient
// runs, lowest degree first, nonzero leading entry). Inputs primitive.
inline std::vector<mpz_class> primitive_gcd(std::vector<mpz_class> a, std::vector<mpz_class> b) {
  auto make_primitive = [](std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
      for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
  };
  auto strip = [](std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // r = prem(a, b)
    std::vector<mpz_class> r = a;
    const mpz_class lb = b.back();
    while (r.size() >= b.size()) {
      const mpz_class lr = r.back();
      const std::size_t shift = r.size() - b.size();
      for (auto& c : r) c *= lb;
      for (std::size_t k = 0; k < b.size(); ++k) r[shift + k] -= lr * b[k];
      strip(r);
      make_primitive(r);
    }
    a = std::move(b);
    b = std::move(r);
    make_primitive(b);
  }
  make_primitive(a);
  return a;
}

}  // namespace detail

/// gcd in Z[t^{+-1}], canonical form. gcd(0, 0) = 0.
inline LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero()) return canonical_form(q);
  if (q.is_zero()) return canonical_form(p);
  mpz_class content = 0;
  mpz_gcd(content.get_mpz_t(), p.content().get_mpz_t(), q.content().get_mpz_t());
  auto pp = canonical_form(p).primitive_part();
  auto qq = canonical_form(q).primitive_part();
  auto g = detail::primitive_gcd(pp.coeffs(), qq.coeffs());
  return canonical_form(LaurentPoly::from_coeffs(0, std::move(g)) * content);
}

/// gcd of a list; the zero polynomial for an empty list or all zeros.
inline LaurentPoly gcd_set(std::span<const LaurentPoly> ps) {
  LaurentPoly g;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? canonical_form(p) : gcd(g, p);
    if (g.length() == 1 && g.top_coeff() == 1) break;
  }
  return g;
}

/// Terms in decreasing exponent order, e.g. "2t^2 - 3t + 2", "t^-1 + 1".
inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const std::int64_t e = p.min_exp() + static_cast<std::int64_t>(i);
    const bool neg = sgn(c[i]) < 0;
    const mpz_class mag = abs(c[i]);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (e == 0 || mag != 1) out += mag.get_str();
    if (e != 0) {
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << to_string(p); }

/// Reads the format produced by to_string ("t^4 + t^2 + 1", "-2t^-1 + 3").
/// A '*' between coefficient and t is accepted.
inline LaurentPoly parse_laurent(std::string_view text) {
  LaurentPoly p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto digits = [&] {
    const std::size_t s = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    return text.substr(s, i - s);
  };
  skip();
  if (text.substr(i) == "0") return p;
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw DomainError("expected '+' or '-' in polynomial '" + std::string(text) + "'");
    }
    first = false;
    mpz_class coef = 1;
    const auto num = digits();
    if (!num.empty()) coef = mpz_class(std::string(num));
    if (i < text.size() && text[i] == '*') ++i;
    std::int64_t e = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        int esign = 1;
        if (i < text.size() && text[i] == '-') {
          esign = -1;
          ++i;
        }
        const auto ed = digits();
        if (ed.empty()) throw DomainError("missing exponent in '" + std::string(text) + "'");
        e = esign * std::stoll(std::string(ed));
      }
    } else if (num.empty()) {
      throw DomainError("malformed term in '" + std::string(text) + "'");
    }
    p.add_term(coef * sign, e);
  }
  return p;
}

}  // namespace twalex
