#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/polymat.hpp"
#include "twalex/presentation.hpp"
#include "twalex/word.hpp"

namespace twalex {

/// Permutation of {0, ..., degree-1}; printed and parsed 1-based in cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint16_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
      if (v >= images_.size() || seen[v]) throw DomainError("not a permutation");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<std::uint16_t> img(degree);
    std::iota(img.begin(), img.end(), std::uint16_t{0});
    return Permutation(std::move(img));
  }

  /// Parses disjoint 1-based cycles such as "(1 2 3)(4 5)"; "()" or "" is the identity.
  static Permutation parse(std::string_view text, std::size_t degree) {
    std::vector<std::uint16_t> img(degree);
    std::iota(img.begin(), img.end(), std::uint16_t{0});
    std::vector<bool> used(degree, false);
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip();
    while (i < text.size()) {
      if (text[i] != '(') throw DomainError("malformed permutation '" + std::string(text) + "'");
      ++i;
      std::vector<std::size_t> cycle;
      while (true) {
        skip();
        if (i >= text.size()) throw DomainError("unterminated cycle in '" + std::string(text) + "'");
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::size_t v = 0;
        const std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
        if (i == start || v < 1 || v > degree) {
          throw DomainError("point out of range in permutation '" + std::string(text) + "'");
        }
        if (used[v - 1]) throw DomainError("cycles in '" + std::string(text) + "' are not disjoint");
        used[v - 1] = true;
        cycle.push_back(v - 1);
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        img[cycle[k]] = static_cast<std::uint16_t>(cycle[(k + 1) % cycle.size()]);
      }
      skip();
    }
    return Permutation(std::move(img));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint16_t>& images() const noexcept { return images_; }
  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  /// Function composition: (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DomainError("composing permutations of different degree");
    std::vector<std::uint16_t> img(a.degree());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = a.images_[b.images_[i]];
    Permutation p;
    p.images_ = std::move(img);
    return p;
  }

  Permutation inverse() const {
    std::vector<std::uint16_t> img(images_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[images_[i]] = static_cast<std::uint16_t>(i);
    Permutation p;
    p.images_ = std::move(img);
    return p;
  }

  /// 1-based disjoint cycle notation; the identity prints as "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s] || images_[s] == s) continue;
      out += "(";
      std::size_t v = s;
      bool first = true;
      do {
        if (!first) out += " ";
        out += std::to_string(v + 1);
        seen[v] = true;
        first = false;
        v = images_[v];
      } while (v != s);
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint16_t> images_;
};

/// Index into a group's element table.
using Element = std::uint32_t;

inline constexpr std::size_t kMaxGroupOrder = 360;

/// A finite permutation group with its full element and multiplication
/// tables. Element 0 is the identity; the rest follow breadth-first
/// discovery order from the generators.
class FiniteGroup {
 public:
  static FiniteGroup close(std::size_t degree, std::vector<Permutation> generators, std::string name = {},
                           bool solvable = true) {
    if (degree == 0) throw DomainError("group degree must be positive");
    for (const auto& g : generators) {
      if (g.degree() != degree) throw DomainError("generator degree does not match group degree");
    }
    FiniteGroup grp;
    grp.degree_ = degree;
    grp.generators_ = std::move(generators);
    grp.name_ = std::move(name);
    grp.solvable_ = solvable;
    grp.elements_.push_back(Permutation::identity(degree));
    grp.index_.emplace(grp.elements_[0], 0);
    for (std::size_t head = 0; head < grp.elements_.size(); ++head) {
      for (const auto& g : grp.generators_) {
        Permutation next = grp.elements_[head] * g;
        if (grp.index_.contains(next)) continue;
        if (grp.elements_.size() >= kMaxGroupOrder) {
          throw DomainError("group order exceeds the supported maximum of " + std::to_string(kMaxGroupOrder));
        }
        grp.index_.emplace(next, static_cast<Element>(grp.elements_.size()));
        grp.elements_.push_back(std::move(next));
      }
    }
    const std::size_t n = grp.elements_.size();
    grp.mult_.resize(n * n);
    grp.inv_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        grp.mult_[x * n + y] = grp.index_.at(grp.elements_[x] * grp.elements_[y]);
      }
      grp.inv_[x] = grp.index_.at(grp.elements_[x].inverse());
    }
    return grp;
  }

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  const std::string& name() const noexcept { return name_; }
  bool solvable() const noexcept { return solvable_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  static constexpr Element identity() noexcept { return 0; }
  const Permutation& element(Element x) const { return elements_.at(x); }
  std::optional<Element> index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Element mult(Element x, Element y) const { return mult_[static_cast<std::size_t>(x) * order() + y]; }
  Element inverse(Element x) const { return inv_[x]; }

  std::size_t element_order(Element x) const {
    std::size_t k = 1;
    for (Element y = x; y != identity(); y = mult(y, x)) ++k;
    return k;
  }

 private:
  std::size_t degree_ = 0;
  std::string name_;
  bool solvable_ = true;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::map<Permutation, Element> index_;
  std::vector<Element> mult_;
  std::vector<Element> inv_;
};

/// Breadth-first closure wrapper matching the catalog data: degree plus generators.
inline FiniteGroup close_group(std::size_t degree, std::vector<Permutation> generators, std::string name = {}) {
  return FiniteGroup::close(degree, std::move(generators), std::move(name));
}

/// Generator images of a homomorphism from a presented group.
struct Homomorphism {
  std::vector<Element> images;
  bool surjective = false;

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

inline Element eval_word(const FiniteGroup& g, std::span<const Element> images, const Word& w) {
  Element acc = FiniteGroup::identity();
  for (int l : w) {
    const Element x = images[static_cast<std::size_t>(std::abs(l) - 1)];
    acc = g.mult(acc, l > 0 ? x : g.inverse(x));
  }
  return acc;
}

inline Element eval_word(const FiniteGroup& g, const Homomorphism& hom, const Word& w) {
  return eval_word(g, hom.images, w);
}

/// Elements of the subgroup generated by `gens`, identity first.
inline std::vector<Element> subgroup_closure(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Element> out{FiniteGroup::identity()};
  seen[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Element x : gens) {
      const Element y = g.mult(out[head], x);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

/// All homomorphisms from the presented group to g (or only the
/// surjective ones), by backtracking over generator images with each
/// relator checked as soon as all its generators are assigned. Output is
/// lexicographic in the image tuples.
inline std::vector<Homomorphism> enumerate_homs(const GroupPresentation& p, const FiniteGroup& g, bool epi_only) {
  const std::size_t ngens = p.gen_count();
  std::vector<std::vector<const Word*>> check_at(ngens + 1);
  for (const auto& r : p.relators) check_at[static_cast<std::size_t>(r.max_generator())].push_back(&r);

  std::vector<Homomorphism> out;
  std::vector<Element> images(ngens, 0);
  auto relators_hold = [&](std::size_t depth) {
    for (const Word* r : check_at[depth]) {
      if (eval_word(g, images, *r) != FiniteGroup::identity()) return false;
    }
    return true;
  };
  if (!relators_hold(0)) return out;

  // Iterative depth-first search; depth = number of assigned generators.
  std::vector<std::size_t> next(ngens + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == ngens) {
      const bool onto = subgroup_closure(g, images).size() == g.order();
      if (onto || !epi_only) out.push_back({images, onto});
      if (depth == 0) break;
      --depth;
      continue;
    }
    if (next[depth] >= g.order()) {
      next[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    images[depth] = static_cast<Element>(next[depth]++);
    if (relators_hold(depth + 1)) ++depth;
  }
  return out;
}

/// Left multiplication by x as a permutation of element indices: h -> x h.
inline std::vector<Element> left_multiplication(const FiniteGroup& g, Element x) {
  std::vector<Element> out(g.order());
  for (Element h = 0; h < g.order(); ++h) out[h] = g.mult(x, h);
  return out;
}

/// |G| x |G| 0/1 matrix of left multiplication by x: entry (x h, h) is 1.
inline PolyMatrix regular_rep(const FiniteGroup& g, Element x) {
  PolyMatrix m(g.order(), g.order());
  for (Element h = 0; h < g.order(); ++h) m(g.mult(x, h), h) = LaurentPoly::constant(1);
  return m;
}

/// Positive generator of phi(Ker alpha) in Z.
///
/// Explores the image subgroup breadth-first along g -> g * alpha(x_i),
/// labelling each reached element with the phi-value of its tree path.
/// Every non-tree edge contributes a Schreier generator of Ker alpha whose
/// phi-value is label(g) + phi(x_i) - label(g').
inline std::int64_t divisibility(const GroupPresentation& p, const FiniteGroup& g, const Homomorphism& hom) {
  bool nontrivial = false;
  for (auto v : p.phi) nontrivial = nontrivial || v != 0;
  if (!nontrivial) throw DomainError("phi is identically zero");

  std::vector<std::optional<std::int64_t>> label(g.order());
  label[0] = 0;
  std::deque<Element> queue{FiniteGroup::identity()};
  std::int64_t d = 0;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < hom.images.size(); ++i) {
      const Element y = g.mult(x, hom.images[i]);
      const std::int64_t reach = *label[x] + p.phi[i];
      if (!label[y]) {
        label[y] = reach;
        queue.push_back(y);
      } else {
        d = std::gcd(d, reach - *label[y]);
      }
    }
  }
  if (d == 0) throw InternalError("phi vanishes on a finite-index subgroup");
  return d;
}

/// The homomorphism c * alpha(-) * c^-1.
inline Homomorphism conjugate(const FiniteGroup& g, const Homomorphism& hom, Element c) {
  Homomorphism out = hom;
  const Element ci = g.inverse(c);
  for (auto& x : out.images) x = g.mult(g.mult(c, x), ci);
  return out;
}

/// Keeps one homomorphism per inner-automorphism class: the
/// lexicographically smallest image tuple. Input order is preserved.
inline std::vector<Homomorphism> inner_class_representatives(const FiniteGroup& g,
                                                             const std::vector<Homomorphism>& homs) {
  std::vector<Homomorphism> out;
  for (const auto& h : homs) {
    bool minimal = true;
    for (Element c = 1; c < g.order() && minimal; ++c) {
      minimal = !(conjugate(g, h, c).images < h.images);
    }
    if (minimal) out.push_back(h);
  }
  return out;
}

/// Re-targets a homomorphism onto its image: returns the image subgroup as
/// its own FiniteGroup and the corresponding epimorphism.
inline std::pair<FiniteGroup, Homomorphism> onto_image(const FiniteGroup& g, const Homomorphism& hom) {
  std::vector<Permutation> gens;
  for (Element x : hom.images) gens.push_back(g.element(x));
  auto sub = FiniteGroup::close(g.degree(), gens, "img(" + g.name() + ")", g.solvable());
  Homomorphism h;
  for (Element x : hom.images) h.images.push_back(*sub.index_of(g.element(x)));
  h.surjective = true;
  return {std::move(sub), std::move(h)};
}

/// Renders images as "a=(1 2),b=()".
inline std::string hom_to_string(const FiniteGroup& g, const Homomorphism& hom, std::string_view names) {
  std::string out;
  for (std::size_t i = 0; i < hom.images.size(); ++i) {
    if (i) out += ",";
    out += names[i];
    out += "=" + g.element(hom.images[i]).to_cycles();
  }
  return out;
}

/// Parses "a=(1 2),b=(1 2)" against a group. Every generator must be given
/// exactly once and every image must lie in the group.
inline Homomorphism parse_hom(std::string_view spec, const FiniteGroup& g, std::string_view names) {
  std::vector<std::optional<Element>> images(names.size());
  std::size_t i = 0;
  while (i < spec.size()) {
    while (i < spec.size() && (spec[i] == ' ' || spec[i] == ',')) ++i;
    if (i >= spec.size()) break;
    const char gen = spec[i];
    const auto pos = names.find(gen);
    if (pos == std::string_view::npos) throw ValidationError(std::string("unknown generator '") + gen + "' in hom");
    ++i;
    while (i < spec.size() && spec[i] == ' ') ++i;
    if (i >= spec.size() || spec[i] != '=') throw ValidationError("expected '=' after generator in hom");
    ++i;
    const std::size_t start = i;
    while (i < spec.size() && spec[i] != '=' ) ++i;
    // Back up to the comma preceding the next "x=" if one was found.
    std::size_t end = i;
    if (i < spec.size()) {
      end = spec.rfind(',', i);
      if (end == std::string_view::npos || end < start) throw ValidationError("malformed hom spec");
      i = end;
    }
    const auto perm = Permutation::parse(spec.substr(start, end - start), g.degree());
    const auto idx = g.index_of(perm);
    if (!idx) throw ValidationError("image of '" + std::string(1, gen) + "' is not in group " + g.name());
    if (images[pos]) throw ValidationError("generator '" + std::string(1, gen) + "' assigned twice");
    images[pos] = *idx;
  }
  Homomorphism hom;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (!images[k]) throw ValidationError("no image given for generator '" + std::string(1, names[k]) + "'");
    hom.images.push_back(*images[k]);
  }
  hom.surjective = subgroup_closure(g, hom.images).size() == g.order();
  return hom;
}

/// Throws ValidationError naming the first relator the images violate.
inline void check_relators(const GroupPresentation& p, const FiniteGroup& g, const Homomorphism& hom) {
  for (const auto& r : p.relators) {
    if (eval_word(g, hom, r) != FiniteGroup::identity()) {
      throw ValidationError("relator " + to_string(r, p.names) + " is not sent to the identity");
    }
  }
}

/// Parses a catalog group file:
///
///     group S3
///     degree 3
///     solvable 1
///     gen (1 2)
///     gen (1 2 3)
inline FiniteGroup parse_group(std::string_view text) {
  std::string name;
  std::optional<std::size_t> degree;
  bool solvable = true;
  std::vector<std::pair<std::size_t, std::string>> gens;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::split_ws(detail::strip_comment(line));
    if (toks.empty()) continue;
    if (toks[0] == "group") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'group <name>'");
      name = toks[1];
    } else if (toks[0] == "degree") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'degree <n>'");
      const auto v = detail::parse_int(toks[1], lineno);
      if (v < 1 || v > 1000) throw ParseError(lineno, "degree out of range");
      degree = static_cast<std::size_t>(v);
    } else if (toks[0] == "solvable") {
      if (toks.size() != 2 || (toks[1] != "0" && toks[1] != "1")) throw ParseError(lineno, "expected 'solvable 0|1'");
      solvable = toks[1] == "1";
    } else if (toks[0] == "gen") {
      gens.emplace_back(lineno, line.substr(line.find("gen") + 3));
    } else {
      throw ParseError(lineno, "unknown keyword '" + toks[0] + "'");
    }
  }
  if (!degree) throw ParseError(lineno, "missing degree line");
  std::vector<Permutation> perms;
  for (const auto& [ln, text_gen] : gens) {
    try {
      perms.push_back(Permutation::parse(text_gen, *degree));
    } catch (const DomainError& e) {
      throw ParseError(ln, e.what());
    }
  }
  return FiniteGroup::close(*degree, std::move(perms), name, solvable);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FiniteGroup load_group(const std::filesystem::path& path) {
  try {
    return parse_group(read_file(path));
  } catch (const ParseError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

/// Loads every *.grp file in a directory, sorted by (order, name).
inline std::vector<FiniteGroup> load_catalog(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ValidationError("catalog directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".grp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FiniteGroup> out;
  for (const auto& f : files) out.push_back(load_group(f));
  std::stable_sort(out.begin(), out.end(), [](const FiniteGroup& a, const FiniteGroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.name() < b.name();
  });
  return out;
}

}  // namespace twalex
