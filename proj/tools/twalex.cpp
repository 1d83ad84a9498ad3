#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "twalex/twalex.hpp"

#ifndef TWALEX_CATALOG_DIR
#define TWALEX_CATALOG_DIR "catalog"
#endif

namespace {

using namespace twalex;
namespace fs = std::filesystem;

constexpr int kExitConsistent = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotFibered = 2;

struct RunConfig {
  std::string input;
  std::string catalog = TWALEX_CATALOG_DIR;
  std::size_t max_order = 24;
  bool solvable_only = false;
  bool epi_only = false;
  bool retarget_images = false;
  bool exhaustive = false;
  std::string report = "text";
  unsigned workers = 1;
};

GroupPresentation load_presentation(const std::string& path) {
  try {
    return parse_presentation(read_file(path));
  } catch (const ParseError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

int cmd_check(const RunConfig& cfg) {
  const auto p = load_presentation(cfg.input);
  const auto catalog = load_catalog(cfg.catalog);
  SweepOptions opt;
  opt.max_order = cfg.max_order;
  opt.solvable_only = cfg.solvable_only;
  opt.retarget_images = cfg.retarget_images && !cfg.epi_only;
  opt.exhaustive = cfg.exhaustive;
  opt.workers = cfg.workers;
  const auto result = p.thurston_norm ? sweep(p, catalog, opt) : norm_survey(p, catalog, opt);
  if (cfg.report == "json") {
    std::cout << sweep_to_json(p, result).dump(2) << '\n';
  } else {
    std::cout << sweep_to_text(p, result);
  }
  return result.verdict.outcome == Outcome::NotFibered ? kExitNotFibered : kExitConsistent;
}

nlohmann::json alex_json(const GroupPresentation& p, const FiniteGroup& g, const Homomorphism& hom) {
  const TwistedRep rep(p, g, hom);
  const auto r = delta1(rep);
  return {
      {"group", g.name()},
      {"order", g.order()},
      {"hom", hom_to_string(g, hom, p.names)},
      {"surjective", hom.surjective},
      {"column", std::string(1, p.names[r.column_used])},
      {"div", r.div},
      {"delta0", to_string(r.delta0)},
      {"delta1", to_string(r.delta1)},
      {"delta1_coeffs", laurent_to_json(r.delta1)},
      {"monic", r.monic},
      {"span", r.span ? nlohmann::json(*r.span) : nlohmann::json(nullptr)},
  };
}

void print_record(const nlohmann::json& rec, const std::string& report, bool last) {
  if (report == "json") return;
  for (const auto& key : {"group", "order", "hom", "surjective", "column", "div", "delta0", "delta1", "monic",
                          "span"}) {
    const auto& v = rec.at(key);
    std::cout << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  if (!last) std::cout << '\n';
}

int cmd_alex(const RunConfig& cfg, const std::string& group_file, const std::string& hom_spec) {
  const auto p = load_presentation(cfg.input);
  const auto g = load_group(group_file);
  std::vector<Homomorphism> homs;
  if (!hom_spec.empty()) {
    auto hom = parse_hom(hom_spec, g, p.names);
    check_relators(p, g, hom);
    homs.push_back(std::move(hom));
  } else {
    homs = inner_class_representatives(g, enumerate_homs(p, g, true));
    if (homs.empty()) throw ValidationError("no epimorphism onto " + g.name());
  }
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < homs.size(); ++i) {
    auto rec = alex_json(p, g, homs[i]);
    print_record(rec, cfg.report, i + 1 == homs.size());
    all.push_back(std::move(rec));
  }
  if (cfg.report == "json") std::cout << all.dump(2) << '\n';
  return 0;
}

int cmd_homs(const RunConfig& cfg, const std::string& group_file) {
  const auto p = load_presentation(cfg.input);
  const auto g = load_group(group_file);
  const auto homs = enumerate_homs(p, g, cfg.epi_only);
  const auto reps = inner_class_representatives(g, homs);
  std::size_t epis = 0, epi_classes = 0;
  for (const auto& h : homs) epis += h.surjective;
  for (const auto& h : reps) epi_classes += h.surjective;

  // Each hom points at the listing index of its class representative.
  std::map<std::vector<Element>, std::size_t> rep_index;
  for (std::size_t i = 0; i < homs.size(); ++i) rep_index.emplace(homs[i].images, i);
  nlohmann::json listing = nlohmann::json::array();
  for (const auto& h : homs) {
    auto least = h.images;
    for (Element c = 1; c < g.order(); ++c) least = std::min(least, conjugate(g, h, c).images);
    listing.push_back({{"hom", hom_to_string(g, h, p.names)},
                       {"surjective", h.surjective},
                       {"class", rep_index.at(least)}});
  }
  if (cfg.report == "json") {
    nlohmann::json out = {{"group", g.name()},   {"order", g.order()},         {"homs", homs.size()},
                          {"epis", epis},        {"epi_classes", epi_classes}, {"listing", listing}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "group: " << g.name() << '\n'
            << "order: " << g.order() << '\n'
            << "homs: " << homs.size() << '\n'
            << "epis: " << epis << '\n'
            << "epi_classes: " << epi_classes << '\n';
  for (std::size_t i = 0; i < listing.size(); ++i) {
    const auto& e = listing[i];
    std::cout << "  [" << i << "] " << e["hom"].get<std::string>()
              << " surjective=" << (e["surjective"].get<bool>() ? "true" : "false")
              << " class=" << e["class"].get<std::size_t>() << '\n';
  }
  return 0;
}

int cmd_torus(std::size_t rank, const std::string& moves, const std::string& output, const std::string& name) {
  if (rank > kMaxTorusRank) {
    throw ValidationError("rank " + std::to_string(rank) + " exceeds the letter budget of " +
                          std::to_string(kMaxTorusRank));
  }
  if (rank == 0) throw ValidationError("rank must be positive");
  const auto h = compose_nielsen(parse_moves(moves), rank);
  const auto text = serialize(mapping_torus(h, name));
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw ValidationError("cannot write " + output);
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Alexander polynomials and the fibering criterion over finite quotients"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string group_file, hom_spec, moves, output, torus_name;
  std::size_t rank = 2;

  auto* check = app.add_subcommand("check", "Sweep the group catalog and evaluate Property (M)");
  check->add_option("input", cfg.input, "Presentation file")->required();
  check->add_option("--catalog", cfg.catalog, "Directory of *.grp files");
  check->add_option("--max-order", cfg.max_order, "Largest group order to sweep")->check(CLI::Range(1, 100000));
  check->add_flag("--solvable-only", cfg.solvable_only, "Only solvable groups");
  check->add_flag("--epi-only", cfg.epi_only, "Only epimorphisms (the default; overrides --retarget-images)");
  check->add_flag("--retarget-images", cfg.retarget_images, "Also use non-surjective homs, each onto its image");
  check->add_flag("--exhaustive", cfg.exhaustive, "Do not stop at the first failing quotient");
  check->add_option("--report", cfg.report, "text or json")->check(CLI::IsMember({"text", "json"}));
  check->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 256));

  auto* alex = app.add_subcommand("alex", "Twisted Alexander polynomial for one group and homomorphism");
  alex->add_option("input", cfg.input, "Presentation file")->required();
  alex->add_option("--group", group_file, "Group file")->required();
  alex->add_option("--hom", hom_spec, "Generator images, e.g. \"a=(1 2),b=(1 2)\"; default: every epi class");
  alex->add_option("--report", cfg.report, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* homs = app.add_subcommand("homs", "List homomorphisms to a finite group");
  homs->add_option("input", cfg.input, "Presentation file")->required();
  homs->add_option("--group", group_file, "Group file")->required();
  homs->add_flag("--epi-only", cfg.epi_only, "Only epimorphisms");
  homs->add_option("--report", cfg.report, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* torus = app.add_subcommand("torus", "Write a mapping-torus presentation");
  torus->add_option("--rank", rank, "Rank of the free fiber group")->required();
  torus->add_option("--moves", moves, "Nielsen moves, e.g. \"x1<-x1x2; swap x1 x2; inv x2\"");
  torus->add_option("-o,--output", output, "Output file (default stdout)");
  torus->add_option("--name", torus_name, "Presentation name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*alex) return cmd_alex(cfg, group_file, hom_spec);
    if (*homs) return cmd_homs(cfg, group_file);
    if (*torus) return cmd_torus(rank, moves, output, torus_name);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
