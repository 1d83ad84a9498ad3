#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "twalex/criterion.hpp"
#include "twalex/presentation.hpp"

namespace twalex {

/// Coefficients go out as JSON integers; values beyond 64 bits are written
/// as decimal strings so nothing is ever rounded.
inline nlohmann::json laurent_to_json(const LaurentPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) {
    if (c.fits_slong_p()) {
      coeffs.push_back(c.get_si());
    } else {
      coeffs.push_back(c.get_str());
    }
  }
  return {{"min_exp", p.min_exp()}, {"coeffs", coeffs}};
}

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string phi_string(const GroupPresentation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.gen_count(); ++i) {
    if (i) out += " ";
    out += p.names[i];
    out += "=" + std::to_string(p.phi[i]);
  }
  return out;
}

}  // namespace detail

inline nlohmann::json quotient_to_json(const QuotientReport& q) {
  return {
      {"group", q.group},
      {"order", q.order},
      {"hom", q.hom},
      {"div", q.div},
      {"delta1", laurent_to_json(q.delta1)},
      {"monic", q.monic},
      {"span", detail::opt_json(q.span)},
      {"expected_span", detail::opt_json(q.expected_span)},
      {"norm_lower_bound", detail::opt_json(q.norm_lower_bound)},
      {"status", q.status ? nlohmann::json(std::string(to_string(*q.status))) : nlohmann::json(nullptr)},
  };
}

inline nlohmann::json sweep_to_json(const GroupPresentation& p, const SweepResult& r) {
  nlohmann::json phi = nlohmann::json::object();
  for (std::size_t i = 0; i < p.gen_count(); ++i) phi[std::string(1, p.names[i])] = p.phi[i];
  nlohmann::json quotients = nlohmann::json::array();
  for (const auto& q : r.quotients) quotients.push_back(quotient_to_json(q));
  return {
      {"manifold", p.name},
      {"phi", phi},
      {"norm", detail::opt_json(p.thurston_norm)},
      {"b3", p.b3()},
      {"verdict", std::string(to_string(r.verdict.outcome))},
      {"witness", detail::opt_json(r.verdict.witness)},
      {"bound", r.verdict.bound},
      {"solvable_only", r.verdict.solvable_only},
      {"caveats", r.verdict.caveats},
      {"quotients", quotients},
  };
}

/// Plain "key: value" rendering with the same fields as the JSON form.
inline std::string sweep_to_text(const GroupPresentation& p, const SweepResult& r) {
  auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string("none"); };
  std::ostringstream out;
  out << "manifold: " << p.name << '\n'
      << "phi: " << detail::phi_string(p) << '\n'
      << "norm: " << opt(p.thurston_norm) << '\n'
      << "b3: " << p.b3() << '\n'
      << "verdict: " << to_string(r.verdict.outcome) << '\n'
      << "witness: " << opt(r.verdict.witness) << '\n'
      << "bound: " << r.verdict.bound << '\n'
      << "solvable_only: " << (r.verdict.solvable_only ? "true" : "false") << '\n'
      << "caveats:\n";
  for (const auto& c : r.verdict.caveats) out << "  - " << c << '\n';
  out << "quotients:\n";
  for (std::size_t i = 0; i < r.quotients.size(); ++i) {
    const auto& q = r.quotients[i];
    out << "  - [" << i << "]\n"
        << "    group: " << q.group << '\n'
        << "    order: " << q.order << '\n'
        << "    hom: " << q.hom << '\n'
        << "    div: " << q.div << '\n'
        << "    delta1: " << to_string(q.delta1) << '\n'
        << "    monic: " << (q.monic ? "true" : "false") << '\n'
        << "    span: " << opt(q.span) << '\n'
        << "    expected_span: " << opt(q.expected_span) << '\n'
        << "    norm_lower_bound: " << opt(q.norm_lower_bound) << '\n'
        << "    status: " << (q.status ? std::string(to_string(*q.status)) : std::string("none")) << '\n';
  }
  return out.str();
}

}  // namespace twalex
