#include "omni/report.hpp"

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "omni/error.hpp"

namespace omni {

using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const SearchBudget& b) {
  json j = json::object();
  j["node_limit"] = b.node_limit == 0 ? json(nullptr) : json(b.node_limit);
  j["wall_limit_ms"] = b.wall_limit.count() == 0 ? json(nullptr) : json(b.wall_limit.count());
  j["class"] = budget_class(b);
  return j;
}

SearchBudget budget_from_json(const json& j) {
  SearchBudget b;
  if (!j.at("node_limit").is_null()) b.node_limit = j.at("node_limit").get<std::uint64_t>();
  if (!j.at("wall_limit_ms").is_null()) b.wall_limit = std::chrono::milliseconds(j.at("wall_limit_ms").get<long>());
  return b;
}

json to_json(const RunManifest& m) {
  return {{"command_line", m.command_line}, {"seed", m.seed},          {"budget", to_json(m.budget)},
          {"jobs", m.jobs},                 {"version", m.version},    {"input_hashes", m.input_hashes},
          {"started", m.started},           {"finished", m.finished}};
}

namespace {

json triples_json(const PartialTransversal& t) {
  json a = json::array();
  for (const Triple& x : t.triples) a.push_back({x.row, x.col, x.sym});
  return a;
}

PartialTransversal triples_from_json(const json& a) {
  std::vector<Triple> out;
  for (const json& x : a) {
    if (!x.is_array() || x.size() != 3) throw Error(Errc::malformed, "a triple is [row, col, sym]");
    out.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>()});
  }
  return make_transversal(std::move(out));
}

LengthKind kind_from(const std::string& s) {
  for (LengthKind k : {LengthKind::achieved, LengthKind::proven_absent, LengthKind::forbidden, LengthKind::timeout})
    if (s == to_string(k)) return k;
  throw Error(Errc::malformed, "unknown status " + s);
}

json verdict_json(const SpectrumReport& r) {
  if (!r.verdict) return nullptr;
  json v = {{"kind", to_string(r.verdict->kind)}, {"missing", r.verdict->missing}};
  if (r.verdict->kind == Verdict::Kind::near_omniversal) v["mu"] = r.verdict->mu;
  return v;
}

const char* glyph(LengthKind k) {
  switch (k) {
    case LengthKind::achieved: return "●";
    case LengthKind::proven_absent: return "○";
    case LengthKind::timeout: return "?";
    case LengthKind::forbidden: return "×";
  }
  return "?";
}

const char* fill(LengthKind k) {
  switch (k) {
    case LengthKind::achieved: return "#2b6cb0";
    case LengthKind::proven_absent: return "#ffffff";
    case LengthKind::timeout: return "#bbbbbb";
    case LengthKind::forbidden: return "#c53030";
  }
  return "#000000";
}

}  // namespace

json witness_json(const PartialTransversal& t, const std::string& square_hash) {
  return {{"schema_version", kSchemaVersion},
          {"square_hash", square_hash},
          {"length", t.length()},
          {"triples", triples_json(t)}};
}

PartialTransversal witness_from_json(const json& j) {
  try {
    PartialTransversal t = triples_from_json(j.at("triples"));
    if (t.length() != j.at("length").get<int>()) throw Error(Errc::malformed, "declared length disagrees");
    return t;
  } catch (const json::exception& e) {
    throw Error(Errc::malformed, e.what());
  }
}

json report_json(const SpectrumReport& r) {
  json lengths = json::object();
  for (const auto& [len, st] : r.statuses) {
    json s = {{"status", to_string(st.kind)}, {"nodes", st.nodes}, {"millis", st.millis}};
    if (st.witness) s["witness"] = triples_json(*st.witness);
    if (!st.reason.empty()) s["reason"] = st.reason;
    if (!st.how.empty()) s["how"] = st.how;
    if (!st.counters.empty()) s["counters"] = st.counters;
    lengths[std::to_string(len)] = std::move(s);
  }
  return {{"schema_version", kSchemaVersion}, {"square_hash", r.square_hash}, {"order", r.order},
          {"range", {r.lo, r.hi}},           {"lengths", std::move(lengths)}, {"verdict", verdict_json(r)}};
}

json report_json(const SpectrumReport& r, const RunManifest& m) {
  json j = report_json(r);
  j["manifest"] = to_json(m);
  return j;
}

SpectrumReport report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw Error(Errc::malformed, "schema version");
    SpectrumReport r;
    r.square_hash = j.at("square_hash").get<std::string>();
    r.order = j.at("order").get<int>();
    r.lo = j.at("range").at(0).get<int>();
    r.hi = j.at("range").at(1).get<int>();
    for (const auto& [key, s] : j.at("lengths").items()) {
      LengthStatus st;
      st.kind = kind_from(s.at("status").get<std::string>());
      st.nodes = s.at("nodes").get<std::uint64_t>();
      st.millis = s.at("millis").get<double>();
      if (s.contains("witness")) st.witness = triples_from_json(s["witness"]);
      if (s.contains("reason")) st.reason = s["reason"].get<std::string>();
      if (s.contains("how")) st.how = s["how"].get<std::string>();
      if (s.contains("counters")) st.counters = s["counters"].get<std::map<std::string, std::uint64_t>>();
      r.statuses[std::stoi(key)] = std::move(st);
    }
    if (static_cast<int>(r.statuses.size()) != r.hi - r.lo + 1 || r.statuses.begin()->first != r.lo)
      throw Error(Errc::malformed, "statuses do not cover the length range");
    derive_verdict(r);
    if (verdict_json(r) != j.at("verdict")) throw Error(Errc::malformed, "verdict inconsistent with statuses");
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::malformed, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::malformed, e.what());
  }
}

std::string render_spectrum_strip(const SpectrumReport& r) {
  std::string out;
  for (const auto& [len, st] : r.statuses) out += std::to_string(len) + glyph(st.kind);
  return out;
}

std::string spectrum_legend() { return "● achieved  ○ proven absent  ? timeout  × forbidden"; }

std::string render_spectrum_svg(const SpectrumReport& r) {
  constexpr int cell = 28;
  const int w = cell * static_cast<int>(r.statuses.size());
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << cell + 16 << "\">\n";
  int x = 0;
  for (const auto& [len, st] : r.statuses) {
    s << "  <rect x=\"" << x + 1 << "\" y=\"1\" width=\"" << cell - 2 << "\" height=\"" << cell - 2 << "\" fill=\""
      << fill(st.kind) << "\" stroke=\"#333333\"><title>" << len << " " << to_string(st.kind) << "</title></rect>\n";
    s << "  <text x=\"" << x + cell / 2 << "\" y=\"" << cell + 12
      << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << len << "</text>\n";
    x += cell;
  }
  s << "</svg>\n";
  return s.str();
}

std::string missing_pairs(const SpectrumReport& r) {
  std::string out;
  for (const auto& [len, st] : r.statuses) {
    if (st.kind == LengthKind::achieved) continue;
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(r.order) + "," + std::to_string(len) + ")";
    if (st.kind == LengthKind::forbidden) out += "[" + st.reason + "]";
    if (st.kind == LengthKind::timeout) out += "?";
  }
  return out;
}

std::string verdict_text(const SpectrumReport& r) {
  if (!r.verdict) return "incomplete";
  if (r.verdict->kind == Verdict::Kind::near_omniversal) return "near-omniversal mu=" + std::to_string(r.verdict->mu);
  return to_string(r.verdict->kind);
}

std::string classification_markdown(const std::vector<std::pair<std::string, SpectrumReport>>& rows) {
  std::string out = "| group | n | spectrum | verdict | missing |\n|---|---|---|---|---|\n";
  for (const auto& [name, r] : rows)
    out += "| " + name + " | " + std::to_string(r.order) + " | " + render_spectrum_strip(r) + " | " + verdict_text(r) +
           " | " + missing_pairs(r) + " |\n";
  return out;
}

std::string budget_class(const SearchBudget& b) { return b.exhaustive() ? "exhaustive" : "budgeted"; }

bool budget_covers(const SearchBudget& have, const SearchBudget& want) {
  auto ge = [](auto h, auto w) { return h == 0 || (w != 0 && h >= w); };
  return ge(have.node_limit, want.node_limit) && ge(have.wall_limit.count(), want.wall_limit.count());
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ReportCache::default_dir() {
  if (const char* d = std::getenv("OMNI_CACHE_DIR"); d && *d) return d;
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "omniversal";
  if (const char* d = std::getenv("HOME"); d && *d) return std::filesystem::path(d) / ".cache" / "omniversal";
  return std::filesystem::temp_directory_path() / "omniversal-cache";
}

std::filesystem::path ReportCache::entry(const std::string& square_hash, const std::string& cls) const {
  std::string key = square_hash;
  for (char& ch : key)
    if (ch == ':') ch = '-';
  return dir_ / (key + "." + cls + ".json");
}

std::optional<std::pair<SearchBudget, SpectrumReport>> ReportCache::load(const std::filesystem::path& p,
                                                                         const std::string& square_hash) const {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    SpectrumReport r = report_from_json(j.at("report"));
    if (r.square_hash != square_hash) throw Error(Errc::malformed, "hash mismatch");
    return std::make_pair(budget_from_json(j.at("budget")), std::move(r));
  } catch (const std::exception&) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
    return std::nullopt;
  }
}

std::optional<SpectrumReport> ReportCache::lookup(const std::string& square_hash, const SearchBudget& budget) const {
  if (auto e = load(entry(square_hash, "exhaustive"), square_hash)) return std::move(e->second);
  if (auto e = load(entry(square_hash, "budgeted"), square_hash)) {
    if (e->second.complete() || budget_covers(e->first, budget)) return std::move(e->second);
  }
  return std::nullopt;
}

void ReportCache::store(const SpectrumReport& r, const SearchBudget& budget) const {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(dir_);
  const std::filesystem::path dst = entry(r.square_hash, budget_class(budget));
  std::filesystem::path tmp = dst;
  tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
    out << json{{"schema_version", kSchemaVersion}, {"budget", to_json(budget)}, {"report", report_json(r)}}.dump()
        << '\n';
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, dst);
}

}  // namespace omni
