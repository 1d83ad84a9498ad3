#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/word.hpp"

namespace twalex {

/// A finite presentation together with a class phi: pi -> Z and the
/// manifold data the fibering criterion consumes.
///
/// Generators are named by single lowercase letters; word letters index
/// into `names` (1-based). Relators are stored freely reduced.
struct GroupPresentation {
  std::string name;
  std::string names;                   // one letter per generator
  std::vector<Word> relators;
  std::vector<std::int64_t> phi;       // phi value of each generator
  bool closed = false;                 // b3 = 1 when true
  std::optional<std::int64_t> thurston_norm;

  std::size_t gen_count() const noexcept { return names.size(); }
  std::int64_t deficiency() const noexcept {
    return static_cast<std::int64_t>(names.size()) -
           static_cast<std::int64_t>(relators.size());
  }
  int b3() const noexcept { return closed ? 1 : 0; }
};

/// Sum over letters of sign * phi(generator).
inline std::int64_t phi_of_word(const GroupPresentation& p, const Word& w) {
  std::int64_t total = 0;
  for (int l : w) {
    const auto idx = static_cast<std::size_t>(std::abs(l) - 1);
    if (idx >= p.phi.size()) throw DomainError("word uses a generator outside the presentation");
    total += l > 0 ? p.phi[idx] : -p.phi[idx];
  }
  return total;
}

/// Checks the invariants every engine entry point relies on: relators
/// killed by phi, phi non-trivial, deficiency one.
inline void validate(const GroupPresentation& p) {
  if (p.names.empty()) throw ValidationError("presentation has no generators");
  if (p.names.size() > 26) throw ValidationError("more than 26 generators");
  if (p.phi.size() != p.names.size()) throw ValidationError("phi must assign a value to every generator");
  for (std::size_t i = 0; i < p.names.size(); ++i) {
    const char c = p.names[i];
    if (c < 'a' || c > 'z') throw ValidationError(std::string("generator name '") + c + "' outside a-z");
    if (p.names.find(c) != i) throw ValidationError(std::string("duplicate generator '") + c + "'");
  }
  for (const auto& r : p.relators) {
    if (r.empty()) throw ValidationError("relator reduces to the empty word");
    if (r.max_generator() > static_cast<int>(p.names.size())) {
      throw ValidationError("relator uses an undeclared generator");
    }
    if (const auto v = phi_of_word(p, r); v != 0) {
      throw ValidationError("phi is " + std::to_string(v) + " on relator " + to_string(r, p.names) +
                            "; phi must vanish on every relator");
    }
  }
  bool nontrivial = false;
  for (auto v : p.phi) nontrivial = nontrivial || v != 0;
  if (!nontrivial) throw ValidationError("phi is trivial on every generator");
  if (p.deficiency() != 1) {
    throw ValidationError("deficiency is " + std::to_string(p.deficiency()) +
                          "; the engine requires generators - relators = 1");
  }
  if (p.thurston_norm && *p.thurston_norm < 0) throw ValidationError("norm must be non-negative");
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Drops everything from the first '#' on.
inline std::string_view strip_comment(std::string_view line) { return line.substr(0, line.find('#')); }

inline std::int64_t parse_int(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace detail

/// Parses the line-oriented presentation format:
///
///     # comment (also allowed after a directive)
///     group <name>
///     gens a b
///     rel a b a B A B        (or contiguous: rel abaBAB)
///     phi a 1
///     norm 1
///     closed 0
///
/// Missing phi entries default to 0. The result is validated.
inline GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p;
  bool have_gens = false;
  std::vector<bool> phi_seen;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = detail::split_ws(detail::strip_comment(line));
    if (toks.empty()) continue;
    const std::string& key = toks[0];
    if (key == "group") {
      if (toks.size() < 2) throw ParseError(lineno, "group needs a name");
      p.name = line.substr(line.find(toks[1]));
      while (!p.name.empty() && (p.name.back() == ' ' || p.name.back() == '\r')) p.name.pop_back();
    } else if (key == "gens") {
      if (have_gens) throw ParseError(lineno, "duplicate gens line");
      if (toks.size() < 2) throw ParseError(lineno, "gens needs at least one generator");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& g = toks[i];
        if (g.size() != 1 || g[0] < 'a' || g[0] > 'z') {
          throw ParseError(lineno, "generator name '" + g + "' must be a single letter a-z");
        }
        if (p.names.find(g[0]) != std::string::npos) throw ParseError(lineno, "duplicate generator '" + g + "'");
        p.names.push_back(g[0]);
      }
      p.phi.assign(p.names.size(), 0);
      phi_seen.assign(p.names.size(), false);
      have_gens = true;
    } else if (key == "rel") {
      if (!have_gens) throw ParseError(lineno, "rel before gens");
      if (toks.size() < 2) throw ParseError(lineno, "empty relator");
      std::string letters;
      for (std::size_t i = 1; i < toks.size(); ++i) letters += toks[i];
      Word w;
      try {
        w = parse_word(letters, p.names);
      } catch (const DomainError& e) {
        throw ParseError(lineno, e.what());
      }
      p.relators.push_back(free_reduce(w));
    } else if (key == "phi") {
      if (!have_gens) throw ParseError(lineno, "phi before gens");
      if (toks.size() != 3) throw ParseError(lineno, "expected 'phi <gen> <integer>'");
      const auto pos = toks[1].size() == 1 ? p.names.find(toks[1][0]) : std::string::npos;
      if (pos == std::string::npos) throw ParseError(lineno, "phi for unknown generator '" + toks[1] + "'");
      if (phi_seen[pos]) throw ParseError(lineno, "duplicate phi for '" + toks[1] + "'");
      phi_seen[pos] = true;
      p.phi[pos] = detail::parse_int(toks[2], lineno);
    } else if (key == "norm") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'norm <integer>'");
      const auto v = detail::parse_int(toks[1], lineno);
      if (v < 0) throw ParseError(lineno, "norm must be non-negative");
      p.thurston_norm = v;
    } else if (key == "closed") {
      if (toks.size() != 2 || (toks[1] != "0" && toks[1] != "1")) {
        throw ParseError(lineno, "expected 'closed 0' or 'closed 1'");
      }
      p.closed = toks[1] == "1";
    } else {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (!have_gens) throw ParseError(lineno, "missing gens line");
  validate(p);
  return p;
}

/// Writes a presentation in the format read by parse_presentation.
inline std::string serialize(const GroupPresentation& p) {
  std::ostringstream out;
  if (!p.name.empty()) out << "group " << p.name << '\n';
  out << "gens";
  for (char c : p.names) out << ' ' << c;
  out << '\n';
  for (const auto& r : p.relators) out << "rel " << to_string(r, p.names) << '\n';
  for (std::size_t i = 0; i < p.names.size(); ++i) out << "phi " << p.names[i] << ' ' << p.phi[i] << '\n';
  if (p.thurston_norm) out << "norm " << *p.thurston_norm << '\n';
  out << "closed " << (p.closed ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace twalex
