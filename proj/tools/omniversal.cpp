// omniversal: command-line front end for the library.
//
// Exit codes: 0 ok, 1 failure or verdict mismatch, 2 usage, 3 incomplete
// (some length timed out).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "omni/classify.hpp"
#include "omni/constructions.hpp"
#include "omni/error.hpp"
#include "omni/extension.hpp"
#include "omni/group.hpp"
#include "omni/report.hpp"

using namespace omni;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kIncomplete = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetOpts {
  std::uint64_t nodes = 0;
  double secs = 0;
  int jobs = 1;

  void add(CLI::App* app) {
    app->add_option("--budget-nodes", nodes, "node limit per search (0 = none)");
    app->add_option("--budget-secs", secs, "wall-clock limit per search, seconds");
    app->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }

  // explicit flags win; otherwise the per-order default, which n >= 17 lacks
  SearchBudget resolve(int order) const {
    if (nodes == 0 && secs <= 0) {
      auto d = SearchBudget::default_for(order);
      if (!d) throw UsageError("order " + std::to_string(order) + " needs --budget-secs");
      return *d;
    }
    SearchBudget b;
    b.node_limit = nodes;
    b.wall_limit = std::chrono::milliseconds(static_cast<long>(secs * 1000));
    return b;
  }
};

struct CacheOpts {
  bool off = false;
  std::string dir;

  void add(CLI::App* app) {
    app->add_flag("--no-cache", off, "always recompute");
    app->add_option("--cache-dir", dir, "cache directory (default $OMNI_CACHE_DIR)");
  }
};

struct FamilyOpts {
  std::string family;
  int m = 1, q = 0;
  std::string group;

  void add(CLI::App* app) {
    app->add_option("--family", family, "l-star | m-star | order8-mu8 | order8-two | cayley")
        ->required()
        ->check(CLI::IsMember({"l-star", "m-star", "order8-mu8", "order8-two", "cayley"}));
    app->add_option("--m", m, "family parameter m");
    app->add_option("--q", q, "family parameter q (l-star)");
    app->add_option("--group", group, "catalog group (cayley)");
  }

  LatinSquare square() const {
    if (family == "l-star") return build_l_star({m, q});
    if (family == "m-star") return build_m_star(m);
    if (family == "order8-mu8") return exceptional_order8(Order8Example::mu8);
    if (family == "order8-two") return exceptional_order8(Order8Example::two_lengths);
    if (group.empty()) throw UsageError("--family cayley needs --group");
    return cayley_table(find_group(group));
  }

  PartialTransversal witness(int length) const {
    if (family == "l-star") return l_star_witness({m, q}, length);
    if (family == "m-star") return m_star_witness(m, length);
    const SearchResult r = find_maximal_of_length(square(), length, SearchBudget::unlimited());
    if (!r.witness) throw Error(Errc::precondition, "no maximal partial transversal of that length");
    return *r.witness;
  }
};

class Run {
 public:
  Run(int argc, char** argv) {
    m_.command_line.assign(argv, argv + argc);
    m_.started = utc_now();
  }

  RunManifest& manifest() { return m_; }

  RunManifest finished() {
    m_.finished = utc_now();
    return m_;
  }

 private:
  RunManifest m_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path);
  out << text;
}

void emit_json(const std::string& path, const json& j) {
  if (path == "-") std::cout << j.dump(2) << '\n';
  else write_text(path, j.dump(2) + "\n");
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad list entry '" + tok + "'");
    }
  }
  return out;
}

Mask element_mask(const Group& g, const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) {
    if (x < 0 || x >= g.order()) throw UsageError("element " + std::to_string(x) + " out of range");
    m |= bit(x);
  }
  return m;
}

// ---- squares and spectra ----

int cmd_construct(const FamilyOpts& f, const std::string& out) {
  const LatinSquare l = f.square();
  if (out == "-") {
    write_square(std::cout, l);
  } else {
    save_square(out, l);
    std::cout << square_hash(l) << '\n';
  }
  return kOk;
}

int cmd_witness(const FamilyOpts& f, int length, const std::string& out) {
  const LatinSquare l = f.square();
  const PartialTransversal t = f.witness(length);
  verify_maximal_witness(l, t, length);
  emit_json(out, witness_json(t, square_hash(l)));
  return kOk;
}

SpectrumReport cached_spectrum(const LatinSquare& l, const SearchBudget& budget, int jobs, const CacheOpts& c) {
  std::optional<ReportCache> cache;
  if (!c.off) cache.emplace(c.dir.empty() ? ReportCache::default_dir() : std::filesystem::path(c.dir));
  if (cache)
    if (auto hit = cache->lookup(square_hash(l), budget)) return *hit;
  SpectrumOptions o;
  o.budget = budget;
  o.jobs = jobs;
  SpectrumReport r = spectrum(l, o);
  if (cache) cache->store(r, budget);
  return r;
}

LatinSquare square_input(const std::string& file, const std::string& group) {
  if (!file.empty() && !group.empty()) throw UsageError("give a square file or --group, not both");
  if (!group.empty()) return cayley_table(find_group(group));
  if (file.empty()) throw UsageError("a square file or --group is required");
  return load_square(file);
}

SpectrumReport run_spectrum(Run& run, const LatinSquare& l, const BudgetOpts& b, const CacheOpts& c) {
  run.manifest().budget = b.resolve(l.order());
  run.manifest().jobs = b.jobs;
  run.manifest().input_hashes = {square_hash(l)};
  const SpectrumReport r = cached_spectrum(l, run.manifest().budget, b.jobs, c);
  std::cout << render_spectrum_strip(r) << '\n' << spectrum_legend() << "\nverdict: " << verdict_text(r) << '\n';
  return r;
}

int cmd_spectrum(Run& run, const LatinSquare& l, const BudgetOpts& b, const CacheOpts& c, const std::string& json_out,
                 const std::string& svg_out) {
  const SpectrumReport r = run_spectrum(run, l, b, c);
  if (!json_out.empty()) emit_json(json_out, report_json(r, run.finished()));
  if (!svg_out.empty()) write_text(svg_out, render_spectrum_svg(r));
  return r.complete() ? kOk : kIncomplete;
}

int cmd_certify(Run& run, const LatinSquare& l, const BudgetOpts& b, const CacheOpts& c, const std::string& expect,
                int mu) {
  const SpectrumReport r = run_spectrum(run, l, b, c);
  if (!r.verdict) return kIncomplete;
  bool ok = expect == to_string(r.verdict->kind);
  if (ok && mu > 0) ok = r.verdict->kind == Verdict::Kind::near_omniversal && r.verdict->mu == mu;
  std::cout << (ok ? "certified " : "mismatch: expected ") << expect;
  if (mu > 0) std::cout << " mu=" << mu;
  std::cout << '\n';
  return ok ? kOk : kFail;
}

int cmd_square_validate(const std::string& file) {
  const LatinSquare l = load_square(file);
  std::cout << "valid order=" << l.order() << " hash=" << square_hash(l) << '\n';
  return kOk;
}

int cmd_square_species(int order, const std::string& dir, const std::string& json_out) {
  if (order < 1 || order > 6) throw UsageError("species enumeration supports orders 1..6");
  const auto census = species_census(order);
  if (!dir.empty()) std::filesystem::create_directories(dir);
  json all = json::array();
  std::map<std::string, int> tally;
  std::cout << "| species | reduced squares | spectrum | verdict |\n|---|---|---|---|\n";
  for (std::size_t i = 0; i < census.size(); ++i) {
    const SpeciesClass& s = census[i];
    SpectrumOptions o;
    const SpectrumReport r = spectrum(s.representative, o);
    ++tally[verdict_text(r)];
    std::cout << "| " << i << " | " << s.reduced_count << " | " << render_spectrum_strip(r) << " | " << verdict_text(r)
              << " |\n";
    if (!dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "species-%02zu.txt", i);
      save_square((std::filesystem::path(dir) / name).string(), s.representative);
    }
    all.push_back({{"species", i}, {"reduced_count", s.reduced_count}, {"report", report_json(r)}});
  }
  std::cout << "\n" << census.size() << " species";
  for (const auto& [k, v] : tally) std::cout << ", " << v << " " << k;
  std::cout << '\n';
  if (!json_out.empty()) emit_json(json_out, {{"schema_version", kSchemaVersion}, {"order", order}, {"species", all}});
  return kOk;
}

int cmd_embed_check(const std::string& file, int n) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::io, "cannot open " + file);
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) throw Error(Errc::malformed, "expected 'rows cols' header");
  std::vector<std::vector<int>> r(rows, std::vector<int>(cols));
  for (auto& row : r)
    for (int& x : row)
      if (!(in >> x)) throw Error(Errc::malformed, "truncated matrix");
  const bool ok = ryser_embeddable(r, n);
  std::cout << (ok ? "embeddable" : "not embeddable") << " in order " << n << '\n';
  return ok ? kOk : kFail;
}

// ---- groups ----

int cmd_groups_list(int order) {
  for (const Group& g : catalog(order)) std::cout << g.name() << '\t' << describe(invariants(g)) << '\n';
  return kOk;
}

int cmd_groups_export(const std::string& name, const std::string& out) {
  const Group g = find_group(name);
  if (out == "-") {
    write_group(std::cout, g);
  } else {
    std::ofstream f(out);
    if (!f) throw Error(Errc::io, "cannot write " + out);
    write_group(f, g);
  }
  return kOk;
}

struct ClassifyRun {
  std::vector<std::pair<std::string, SpectrumReport>> rows;
  bool complete = true;
};

// Groups are classified concurrently, each with a single-worker search, so
// witnesses do not depend on --jobs.
ClassifyRun classify_groups(const std::vector<Group>& groups, const SearchBudget& budget, int jobs, bool cross_check) {
  ClassifyRun out;
  out.rows.resize(groups.size());
  ClassifyOptions o;
  o.budget = budget;
  o.cross_check = cross_check;
  std::vector<std::string> errors(groups.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::size_t i = 0; i < groups.size(); ++i) {
    try {
      out.rows[i] = {groups[i].name(), classify_group(groups[i], o)};
    } catch (const std::exception& e) {
      errors[i] = groups[i].name() + ": " + e.what();
    }
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw Error(Errc::witness_verification_failed, e);
  for (const auto& [name, r] : out.rows) out.complete = out.complete && r.complete();
  return out;
}

json classification_json(const ClassifyRun& c, const RunManifest& m) {
  json groups = json::array();
  for (const auto& [name, r] : c.rows) groups.push_back({{"group", name}, {"report", report_json(r)}});
  return {{"schema_version", kSchemaVersion}, {"groups", groups}, {"manifest", to_json(m)}};
}

int cmd_groups_classify(Run& run, int order, const std::string& name, const BudgetOpts& b, bool cross_check,
                        const std::string& json_out) {
  std::vector<Group> groups;
  if (name.empty()) {
    groups = catalog(order);
  } else {
    groups.push_back(find_group(name));
    if (order != 0 && groups.front().order() != order) throw UsageError(name + " does not have order " + std::to_string(order));
    order = groups.front().order();
  }
  run.manifest().budget = b.resolve(order);
  run.manifest().jobs = b.jobs;
  for (const Group& g : groups) run.manifest().input_hashes.push_back(square_hash(cayley_table(g)));
  const ClassifyRun c = classify_groups(groups, run.manifest().budget, b.jobs, cross_check);
  std::cout << classification_markdown(c.rows);
  if (!json_out.empty()) emit_json(json_out, classification_json(c, run.finished()));
  return c.complete ? kOk : kIncomplete;
}

int cmd_groups_classify_all(Run& run, int max_order, const BudgetOpts& b, bool cross_check, const std::string& md_out,
                            const std::string& json_out) {
  if (max_order < 1 || max_order > 24) throw UsageError("--max-order must be in 1..24");
  run.manifest().budget = b.resolve(max_order);
  run.manifest().jobs = b.jobs;
  // the per-order default budget applies when no flag is given
  ClassifyRun all;
  for (int n = 1; n <= max_order; ++n) {
    ClassifyRun c = classify_groups(catalog(n), b.resolve(n), b.jobs, cross_check);
    all.complete = all.complete && c.complete;
    for (auto& row : c.rows) all.rows.push_back(std::move(row));
  }
  const std::string md = classification_markdown(all.rows);
  std::cout << md;
  if (!md_out.empty()) write_text(md_out, md);
  if (!json_out.empty()) emit_json(json_out, classification_json(all, run.finished()));
  return all.complete ? kOk : kIncomplete;
}

// ---- product sets ----

int cmd_extend(const std::string& name, const std::string& rows, const std::string& cols, bool as_json) {
  const Group g = find_group(name);
  const Mask x = element_mask(g, parse_list(rows)), y = element_mask(g, parse_list(cols));
  if (x == 0 || y == 0) throw UsageError("--rows and --cols must be non-empty");
  const ProductWindow w = product_window(g, x, y);
  const auto sub = extend_general(g, x, y);
  json j = {{"group", g.name()},
            {"rows", elements_of(x)},
            {"cols", elements_of(y)},
            {"symbols", elements_of(w.z)},
            {"m", w.m()},
            {"alpha", double(popcount(x)) / w.m()},
            {"beta", double(popcount(y)) / w.m()}};
  j["subsquare"] = sub ? json{{"rows", elements_of(sub->rows)}, {"cols", elements_of(sub->cols)}} : json(nullptr);
  if (g.is_abelian()) {
    const auto ab = extend_abelian(g, x, y);
    j["abelian_subsquare"] = ab ? json{{"rows", elements_of(ab->rows)}, {"cols", elements_of(ab->cols)}} : json(nullptr);
    j["kneser"] = kneser_check(g, x, y);
  }
  if (has(x, 0)) j["olson"] = olson_check(g, x, y) == OlsonCase::absorbing ? "absorbing" : "bounded";
  if (as_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "m=" << w.m() << " symbols=" << j["symbols"].dump() << '\n';
    if (sub) std::cout << "contained in subsquare rows=" << j["subsquare"]["rows"].dump()
                       << " cols=" << j["subsquare"]["cols"].dump() << '\n';
    else std::cout << "no m x m subsquare found\n";
  }
  return kOk;
}

// Random windows with alpha > 1/2 and beta > 2/3 in non-abelian groups,
// built inside a coset block aHb and thinned at random.
int cmd_conjecture41(int trials, std::uint64_t seed, int order_max, const std::string& out) {
  std::vector<Group> groups;
  for (int n = 6; n <= order_max; ++n)
    for (Group& g : catalog(n))
      if (!g.is_abelian()) groups.push_back(std::move(g));
  if (groups.empty()) throw UsageError("no non-abelian groups up to that order");
  std::vector<std::vector<Subgroup>> subs;
  for (const Group& g : groups) {
    std::vector<Subgroup> s;
    for (Subgroup& h : all_subgroups(g))
      if (h.order() >= 2) s.push_back(std::move(h));
    subs.push_back(std::move(s));
  }
  std::ofstream file;
  std::ostream* log = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw Error(Errc::io, "cannot write " + out);
    log = &file;
  }
  int tested = 0, failures = 0;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(ss);
    const std::size_t gi = std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng);
    const Group& g = groups[gi];
    const Subgroup& h = subs[gi][std::uniform_int_distribution<std::size_t>(0, subs[gi].size() - 1)(rng)];
    const int a = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
    const int b = std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
    std::vector<int> ah, hb;
    for (int e : h.elements) {
      ah.push_back(g.mul(a, e));
      hb.push_back(g.mul(e, b));
    }
    std::shuffle(ah.begin(), ah.end(), rng);
    std::shuffle(hb.begin(), hb.end(), rng);
    const int k = h.order();
    const int nx = std::uniform_int_distribution<int>(k / 2 + 1, k)(rng);
    const int ny = std::uniform_int_distribution<int>(2 * k / 3 + 1, k)(rng);
    const Mask x = mask_of(std::vector<int>(ah.begin(), ah.begin() + nx));
    const Mask y = mask_of(std::vector<int>(hb.begin(), hb.begin() + ny));
    const int m = popcount(product_set(g, x, y));
    const bool hyp = 2 * nx > m && 3 * ny > 2 * m;
    json rec = {{"trial", t}, {"group", g.name()}, {"rows", elements_of(x)}, {"cols", elements_of(y)},
                {"m", m},     {"hypothesis", hyp}};
    if (hyp) {
      ++tested;
      const bool ext = extend_general(g, x, y).has_value();
      rec["extended"] = ext;
      if (!ext) {
        ++failures;
        rec["potential_counterexample"] = true;
      }
    }
    *log << rec.dump() << '\n';
  }
  std::cerr << trials << " trials, " << tested << " met the hypothesis, " << failures << " not extended\n";
  return kOk;
}

int usage_code(Errc c) {
  switch (c) {
    case Errc::precondition:
    case Errc::length_out_of_range:
    case Errc::unknown_group:
    case Errc::bad_order:
      return kUsage;
    default:
      return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal partial transversals of Latin squares"};
  app.require_subcommand(1);
  Run run(argc, argv);

  FamilyOpts fam_c, fam_w;
  std::string out_c = "-", out_w = "-";
  int length = 0;
  auto* construct = app.add_subcommand("construct", "write a square of a known family");
  fam_c.add(construct);
  construct->add_option("-o,--output", out_c, "square file ('-' for stdout)");
  auto* witness = app.add_subcommand("witness", "verified maximal partial transversal of a family square");
  fam_w.add(witness);
  witness->add_option("--length", length, "length")->required();
  witness->add_option("-o,--output", out_w, "witness JSON ('-' for stdout)");

  std::string file, group, json_out, svg_out, expect;
  int mu = 0;
  BudgetOpts budget;
  CacheOpts cache;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "lengths of maximal partial transversals");
  spectrum_cmd->add_option("file", file, "square file");
  spectrum_cmd->add_option("--group", group, "use a catalog group's Cayley table");
  budget.add(spectrum_cmd);
  cache.add(spectrum_cmd);
  spectrum_cmd->add_option("--json", json_out, "report JSON ('-' for stdout)");
  spectrum_cmd->add_option("--svg", svg_out, "SVG strip");
  auto* certify = app.add_subcommand("certify", "check a square's verdict");
  certify->add_option("file", file, "square file");
  certify->add_option("--group", group, "use a catalog group's Cayley table");
  budget.add(certify);
  cache.add(certify);
  certify->add_option("--expect", expect, "omniversal | near-omniversal | other")
      ->required()
      ->check(CLI::IsMember({"omniversal", "near-omniversal", "other"}));
  certify->add_option("--mu", mu, "expected missing length");

  auto* square = app.add_subcommand("square", "square files and species");
  square->require_subcommand(1);
  std::string vfile;
  auto* validate = square->add_subcommand("validate", "check a square file");
  validate->add_option("file", vfile)->required();
  int sp_order = 6;
  std::string sp_dir, sp_json;
  auto* species = square->add_subcommand("species", "species census with spectra");
  species->add_option("--order", sp_order, "order (<= 6)");
  species->add_option("-o,--output-dir", sp_dir, "write one representative per species");
  species->add_option("--json", sp_json, "census JSON");

  auto* groups = app.add_subcommand("groups", "the group catalog");
  groups->require_subcommand(1);
  int list_order = 0;
  auto* list = groups->add_subcommand("list", "catalog groups of one order");
  list->add_option("--order", list_order)->required()->check(CLI::Range(1, 24));
  std::string exp_name, exp_out = "-";
  auto* exportc = groups->add_subcommand("export", "write a group file");
  exportc->add_option("--name", exp_name)->required();
  exportc->add_option("-o,--output", exp_out);
  int cl_order = 0;
  std::string cl_name, cl_json;
  bool cross = false;
  BudgetOpts cl_budget;
  auto* classify = groups->add_subcommand("classify", "classify the Cayley tables of one order");
  classify->add_option("--order", cl_order)->check(CLI::Range(1, 24));
  classify->add_option("--name", cl_name, "a single catalog group");
  cl_budget.add(classify);
  classify->add_flag("--cross-check", cross, "also run direct search on band lengths");
  classify->add_option("--json", cl_json, "classification JSON");
  int max_order = 16;
  std::string ca_md, ca_json;
  auto* classify_all = groups->add_subcommand("classify-all", "classify every order up to a bound");
  classify_all->add_option("--max-order", max_order)->check(CLI::Range(1, 24));
  cl_budget.add(classify_all);
  classify_all->add_flag("--cross-check", cross, "also run direct search on band lengths");
  classify_all->add_option("--md", ca_md, "markdown table");
  classify_all->add_option("--json", ca_json, "classification JSON");

  std::string ext_group, ext_rows, ext_cols;
  bool ext_json = false;
  auto* extend = app.add_subcommand("extend", "product-set window and subsquare extension");
  extend->add_option("--group", ext_group)->required();
  extend->add_option("--rows", ext_rows, "comma-separated elements")->required();
  extend->add_option("--cols", ext_cols, "comma-separated elements")->required();
  extend->add_flag("--json", ext_json, "print JSON");

  int trials = 100, cj_max = 24;
  std::uint64_t seed = 1;
  std::string cj_out;
  auto* conj = app.add_subcommand("conjecture41", "random extension trials in non-abelian groups (JSONL)");
  conj->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  conj->add_option("--seed", seed);
  conj->add_option("--order-max", cj_max)->check(CLI::Range(6, 24));
  conj->add_option("-o,--output", cj_out);

  std::string em_file;
  int em_n = 0;
  auto* embed = app.add_subcommand("embed-check", "Ryser condition for a partial matrix");
  embed->add_option("file", em_file, "'rows cols' header then the entries")->required();
  embed->add_option("--order", em_n)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(fam_c, out_c);
    if (*witness) return cmd_witness(fam_w, length, out_w);
    if (*spectrum_cmd) return cmd_spectrum(run, square_input(file, group), budget, cache, json_out, svg_out);
    if (*certify) return cmd_certify(run, square_input(file, group), budget, cache, expect, mu);
    if (*validate) return cmd_square_validate(vfile);
    if (*species) return cmd_square_species(sp_order, sp_dir, sp_json);
    if (*list) return cmd_groups_list(list_order);
    if (*exportc) return cmd_groups_export(exp_name, exp_out);
    if (*classify) {
      if (cl_order == 0 && cl_name.empty()) throw UsageError("classify needs --order or --name");
      return cmd_groups_classify(run, cl_order, cl_name, cl_budget, cross, cl_json);
    }
    if (*classify_all) return cmd_groups_classify_all(run, max_order, cl_budget, cross, ca_md, ca_json);
    if (*extend) return cmd_extend(ext_group, ext_rows, ext_cols, ext_json);
    if (*conj) {
      run.manifest().seed = seed;
      return cmd_conjecture41(trials, seed, cj_max, cj_out);
    }
    if (*embed) return cmd_embed_check(em_file, em_n);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return usage_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
