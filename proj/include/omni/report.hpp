#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "omni/engine.hpp"

namespace omni {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.3.0";

struct RunManifest {
  std::vector<std::string> command_line;
  std::uint64_t seed = 0;
  SearchBudget budget;
  int jobs = 1;
  std::string version = kArtifactVersion;
  std::vector<std::string> input_hashes;
  std::string started;  // UTC, ISO 8601
  std::string finished;
};

std::string utc_now();

nlohmann::json to_json(const SearchBudget& b);
SearchBudget budget_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& m);

/// {"schema_version", "square_hash", "length", "triples": [[r,c,s],...]}
nlohmann::json witness_json(const PartialTransversal& t, const std::string& square_hash);
/// Throws malformed if the triple count disagrees with the declared length.
PartialTransversal witness_from_json(const nlohmann::json& j);

nlohmann::json report_json(const SpectrumReport& r);
nlohmann::json report_json(const SpectrumReport& r, const RunManifest& m);
/// Inverse of report_json; throws malformed on anything it does not recognise.
SpectrumReport report_from_json(const nlohmann::json& j);

/// "4●5○6?7×" over the whole length range.
std::string render_spectrum_strip(const SpectrumReport& r);
std::string spectrum_legend();
/// One rectangle per length, no external assets.
std::string render_spectrum_svg(const SpectrumReport& r);

/// Missing lengths as "(n,l)" pairs, forbidden and absent alike.
std::string missing_pairs(const SpectrumReport& r);
std::string verdict_text(const SpectrumReport& r);
/// Markdown table: group, order, strip, verdict, missing pairs.
std::string classification_markdown(const std::vector<std::pair<std::string, SpectrumReport>>& rows);

/// "exhaustive" or "budgeted".
std::string budget_class(const SearchBudget& b);
/// True if a run under `have` explored at least as much as one under `want`.
bool budget_covers(const SearchBudget& have, const SearchBudget& want);

/// Spectrum reports on disk keyed by square hash and budget class. Entries
/// are written to a temporary file and renamed into place; entries that fail
/// to parse are deleted.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir);

  /// $OMNI_CACHE_DIR, else $XDG_CACHE_HOME/omniversal, else ~/.cache/omniversal.
  static std::filesystem::path default_dir();

  /// A stored report that answers a request under `budget`: any exhaustive or
  /// timeout-free entry, or a budgeted entry whose budget covers the request.
  std::optional<SpectrumReport> lookup(const std::string& square_hash, const SearchBudget& budget) const;
  void store(const SpectrumReport& r, const SearchBudget& budget) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry(const std::string& square_hash, const std::string& cls) const;
  std::optional<std::pair<SearchBudget, SpectrumReport>> load(const std::filesystem::path& p,
                                                              const std::string& square_hash) const;

  std::filesystem::path dir_;
};

}  // namespace omni
