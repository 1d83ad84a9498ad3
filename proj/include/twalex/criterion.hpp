#pragma once

#include <atomic>
#include <cstdint>
#include <algorithm>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "twalex/error.hpp"
#include "twalex/fingrp.hpp"
#include "twalex/presentation.hpp"
#include "twalex/twisted.hpp"

namespace twalex {

enum class QuotientStatus { Pass, FailNonmonic, FailDegree, FailVanishing };

inline std::string_view to_string(QuotientStatus s) {
  switch (s) {
    case QuotientStatus::Pass: return "PASS";
    case QuotientStatus::FailNonmonic: return "FAIL_NONMONIC";
    case QuotientStatus::FailDegree: return "FAIL_DEGREE";
    case QuotientStatus::FailVanishing: return "FAIL_VANISHING";
  }
  return "?";
}

/// Property (M) evaluation of one (group, homomorphism) pair. In norm-free
/// mode `status` and `expected_span` are empty and `norm_lower_bound`
/// carries the bound implied by the span instead.
struct QuotientReport {
  std::string group;
  std::size_t order = 1;
  std::string hom;  // "a=(1 2),b=(1 2)"
  std::int64_t div = 1;
  LaurentPoly delta1;
  bool monic = false;
  std::optional<std::int64_t> span;
  std::optional<std::int64_t> expected_span;
  std::optional<QuotientStatus> status;
  std::optional<std::int64_t> norm_lower_bound;

  bool failed() const noexcept { return status && *status != QuotientStatus::Pass; }
};

/// Monic and span = |G| * norm + (1 + b3) * div. Vanishing dominates,
/// then monicness (norm-independent), then the degree equality.
inline QuotientReport property_m(const AlexanderResult& result, std::optional<std::int64_t> norm, int b3) {
  if (!norm) throw ValidationError("Property (M) needs the Thurston norm of phi (add a 'norm' line)");
  if (*norm < 0) throw ValidationError("norm must be non-negative");
  QuotientReport q;
  q.order = result.group_order;
  q.div = result.div;
  q.delta1 = result.delta1;
  q.monic = result.monic;
  q.span = result.span;
  q.expected_span = static_cast<std::int64_t>(result.group_order) * *norm + (1 + b3) * result.div;
  if (result.delta1.is_zero()) {
    q.status = QuotientStatus::FailVanishing;
  } else if (!result.monic) {
    q.status = QuotientStatus::FailNonmonic;
  } else if (*result.span != *q.expected_span) {
    q.status = QuotientStatus::FailDegree;
  } else {
    q.status = QuotientStatus::Pass;
  }
  return q;
}

/// Norm-free evaluation: the smallest integer norm compatible with the
/// degree equality, ceil((span - (1 + b3) div) / |G|), floored at 0.
inline QuotientReport norm_free_report(const AlexanderResult& result, int b3) {
  QuotientReport q;
  q.order = result.group_order;
  q.div = result.div;
  q.delta1 = result.delta1;
  q.monic = result.monic;
  q.span = result.span;
  if (result.span) {
    const std::int64_t num = *result.span - (1 + b3) * result.div;
    const auto den = static_cast<std::int64_t>(result.group_order);
    const std::int64_t ceil = num <= 0 ? 0 : (num + den - 1) / den;
    q.norm_lower_bound = ceil;
  }
  return q;
}

enum class Outcome { NotFibered, ConsistentWithFibered, NoVerdict };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::NotFibered: return "NOT_FIBERED";
    case Outcome::ConsistentWithFibered: return "CONSISTENT_WITH_FIBERED";
    case Outcome::NoVerdict: return "NO_VERDICT";
  }
  return "?";
}

struct SweepOptions {
  std::size_t max_order = 24;
  bool solvable_only = false;
  bool retarget_images = false;  // also use non-surjective homs, each onto its image
  bool exhaustive = false;       // keep going after the first failure
  unsigned workers = 1;
};

struct Verdict {
  Outcome outcome = Outcome::NoVerdict;
  std::optional<std::size_t> witness;  // index into SweepResult::quotients
  std::size_t bound = 0;
  bool solvable_only = false;
  std::vector<std::string> caveats;
};

struct SweepResult {
  Verdict verdict;
  std::vector<QuotientReport> quotients;
};

inline constexpr std::string_view kSolvableCaveat =
    "solvable-only mode: a CONSISTENT_WITH_FIBERED verdict is evidence only if pi_1(N) is residually "
    "finite solvable; this hypothesis is assumed, not checked";
inline constexpr std::string_view kDegenerateCaveat =
    "the presentation has a single generator and no relators (a free group of rank one); such "
    "inputs lie outside the manifold-pair hypotheses and the verdict carries no topological meaning";
inline constexpr std::string_view kNormCaveat =
    "FAIL_DEGREE results depend on the supplied Thurston norm; FAIL_NONMONIC and FAIL_VANISHING do not";

namespace detail {

/// Runs f(i) for i in [0, count) on up to `workers` threads.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct WorkItem {
  const FiniteGroup* group;
  Homomorphism hom;
};

}  // namespace detail

/// One work item per epimorphism class (inner automorphisms) of each
/// catalog group passing the filters, in (order, name, hom) order.
/// Re-targeted image groups are stored in `owned`.
inline std::vector<std::vector<detail::WorkItem>> plan_sweep(const GroupPresentation& p,
                                                             const std::vector<FiniteGroup>& catalog,
                                                             const SweepOptions& opt,
                                                             std::vector<std::unique_ptr<FiniteGroup>>& owned) {
  std::vector<std::vector<detail::WorkItem>> plan;
  for (const auto& g : catalog) {
    if (g.order() > opt.max_order) continue;
    if (opt.solvable_only && !g.solvable()) continue;
    std::vector<detail::WorkItem> items;
    const auto homs = enumerate_homs(p, g, !opt.retarget_images);
    for (const auto& h : inner_class_representatives(g, homs)) {
      if (h.surjective) {
        items.push_back({&g, h});
      } else {
        auto [sub, epi] = onto_image(g, h);
        owned.push_back(std::make_unique<FiniteGroup>(std::move(sub)));
        items.push_back({owned.back().get(), std::move(epi)});
      }
    }
    plan.push_back(std::move(items));
  }
  return plan;
}

inline QuotientReport evaluate_quotient(const GroupPresentation& p, const FiniteGroup& g, const Homomorphism& hom,
                                        bool with_norm) {
  const TwistedRep rep(p, g, hom);
  const auto result = delta1(rep);
  auto q = with_norm ? property_m(result, p.thurston_norm, p.b3()) : norm_free_report(result, p.b3());
  q.group = g.name();
  q.hom = hom_to_string(g, hom, p.names);
  return q;
}

namespace detail {

inline SweepResult run_sweep(const GroupPresentation& p, const std::vector<FiniteGroup>& catalog,
                             const SweepOptions& opt, bool with_norm) {
  validate(p);
  if (opt.max_order < 1) throw ValidationError("max order must be at least 1");
  std::vector<std::unique_ptr<FiniteGroup>> owned;
  const auto plan = plan_sweep(p, catalog, opt, owned);
  if (plan.empty()) throw ValidationError("catalog is empty after applying the order and solvability filters");

  SweepResult out;
  out.verdict.bound = opt.max_order;
  out.verdict.solvable_only = opt.solvable_only;
  if (opt.solvable_only) out.verdict.caveats.emplace_back(kSolvableCaveat);
  if (p.gen_count() == 1 && p.relators.empty()) out.verdict.caveats.emplace_back(kDegenerateCaveat);
  if (with_norm) out.verdict.caveats.emplace_back(kNormCaveat);

  for (const auto& items : plan) {
    std::vector<QuotientReport> reports(items.size());
    parallel_for(items.size(), opt.workers, [&](std::size_t i) {
      reports[i] = evaluate_quotient(p, *items[i].group, items[i].hom, with_norm);
    });
    for (auto& r : reports) {
      const bool failed = r.failed();
      out.quotients.push_back(std::move(r));
      if (failed && !out.verdict.witness) out.verdict.witness = out.quotients.size() - 1;
      if (failed && !opt.exhaustive) break;
    }
    if (out.verdict.witness && !opt.exhaustive) break;
  }
  if (with_norm) {
    out.verdict.outcome = out.verdict.witness ? Outcome::NotFibered : Outcome::ConsistentWithFibered;
  }
  return out;
}

}  // namespace detail

/// Sweeps the catalog by ascending group order, evaluating Property (M)
/// on one epimorphism per inner-automorphism class. Stops at the first
/// failure unless `exhaustive` is set. Requires the presentation's norm.
inline SweepResult sweep(const GroupPresentation& p, const std::vector<FiniteGroup>& catalog,
                         const SweepOptions& opt = {}) {
  if (!p.thurston_norm) throw ValidationError("the fibering sweep needs the Thurston norm of phi (add a 'norm' line)");
  return detail::run_sweep(p, catalog, opt, true);
}

/// Norm-free variant: per-quotient norm lower bounds and monicness, no verdict.
inline SweepResult norm_survey(const GroupPresentation& p, const std::vector<FiniteGroup>& catalog,
                               SweepOptions opt = {}) {
  opt.exhaustive = true;
  return detail::run_sweep(p, catalog, opt, false);
}

}  // namespace twalex
