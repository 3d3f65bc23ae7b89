#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omni/bits.hpp"
#include "omni/latin.hpp"

namespace omni {

class Group;

/// A set of triples meeting each row, column and symbol at most once. Triples
/// are kept sorted by row.
struct PartialTransversal {
  std::vector<Triple> triples;

  int length() const { return static_cast<int>(triples.size()); }
  Mask used_rows() const;
  Mask used_cols() const;
  Mask used_syms() const;
  friend bool operator==(const PartialTransversal&, const PartialTransversal&) = default;
};

PartialTransversal make_transversal(std::vector<Triple> triples);

bool is_partial_transversal(const LatinSquare& l, const std::vector<Triple>& t);
/// No cell has its row, column and symbol all unused by `t`. `t` must be a
/// partial transversal.
bool is_maximal(const LatinSquare& l, const PartialTransversal& t);
/// Throws witness-verification-failed unless `t` is a maximal partial
/// transversal of `l` of the given length (and that length respects the
/// ceil(n/2) <= length <= n bound).
void verify_maximal_witness(const LatinSquare& l, const PartialTransversal& t, int length);

/// Adds cells in row-major order until no cell can be added.
PartialTransversal extend_greedy(const LatinSquare& l, const PartialTransversal& t);

inline int min_maximal_length(int n) { return (n + 1) / 2; }

struct SearchBudget {
  std::uint64_t node_limit = 0;            // 0 = unlimited
  std::chrono::milliseconds wall_limit{0};  // 0 = unlimited

  bool exhaustive() const { return node_limit == 0 && wall_limit.count() == 0; }
  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t n) { return {n, std::chrono::milliseconds{0}}; }
  /// Exhaustive for n <= 10, 10^8 nodes for 11 <= n <= 16; larger orders
  /// need an explicit wall-clock budget (returns nullopt).
  static std::optional<SearchBudget> default_for(int order);
};

/// Abelian delta-lemma constraint: the symbols used must sum to `target`
/// in `group` (whose table must equal the square's).
struct SymbolSumTarget {
  const Group* group = nullptr;
  int target = 0;
};

struct SearchConstraints {
  Mask allowed_rows = ~Mask{0};
  Mask forced_rows = 0;  // must be used
  Mask allowed_cols = ~Mask{0};
  Mask forced_cols = 0;
  Mask required_symbols = 0;
  std::vector<std::pair<int, int>> forbidden_cells;
  std::vector<Triple> seed;  // pre-placed triples
  std::optional<SymbolSumTarget> symbol_sum;
  bool require_maximal = true;
};

enum class SearchStatus { achieved, proven_absent, timeout };

const char* to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::proven_absent;
  std::optional<PartialTransversal> witness;
  std::uint64_t nodes = 0;
  double millis = 0;
};

/// Row-ordered DFS: each row either takes an unused (column, symbol) pair,
/// columns tried in ascending order, or is skipped. Single-threaded; the
/// witness is the first one in DFS order.
SearchResult search_serial(const LatinSquare& l, int length, const SearchBudget& budget,
                           const SearchConstraints& constraints);

/// Same tree, split into subtrees below the first two free rows and run with
/// OpenMP. The achieved/absent verdict equals the serial one; the witness is
/// the serial witness as well (lowest subtree index wins).
SearchResult search_parallel(const LatinSquare& l, int length, const SearchBudget& budget,
                             const SearchConstraints& constraints, int jobs);

/// Maximal partial transversal of exactly `length`, ceil(n/2) <= length <= n.
SearchResult find_maximal_of_length(const LatinSquare& l, int length, const SearchBudget& budget,
                                    const SearchConstraints& constraints = {}, int jobs = 1);

/// Any partial transversal of the given length (maximality not required).
SearchResult find_partial_transversal(const LatinSquare& l, int length, const SearchBudget& budget,
                                      SearchConstraints constraints = {}, int jobs = 1);

enum class LengthKind { achieved, proven_absent, forbidden, timeout };

const char* to_string(LengthKind k);

struct LengthStatus {
  LengthKind kind = LengthKind::timeout;
  std::optional<PartialTransversal> witness;
  std::string reason;  // rule or evidence code for absent/forbidden
  std::string how;     // method for achieved
  std::uint64_t nodes = 0;
  double millis = 0;
  std::map<std::string, std::uint64_t> counters;  // pipeline evidence
};

struct Verdict {
  enum class Kind { omniversal, near_omniversal, other };
  Kind kind = Kind::other;
  int mu = 0;                // the missing length when near-omniversal
  std::vector<int> missing;  // all missing lengths

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

const char* to_string(Verdict::Kind k);

struct SpectrumReport {
  std::string square_hash;
  int order = 0;
  int lo = 0;
  int hi = 0;
  std::map<int, LengthStatus> statuses;
  std::optional<Verdict> verdict;  // withheld while any length timed out

  std::vector<int> achieved() const;
  bool complete() const;
};

/// Fills in `verdict` from the statuses.
void derive_verdict(SpectrumReport& r);

struct SpectrumOptions {
  SearchBudget budget;  // per length
  int jobs = 1;
  /// For n = 4m+2: once a transversal is found, record length 2m+1 as absent
  /// (no square of that order has both) instead of searching for it.
  bool use_half_transversal_exclusion = false;
};

SpectrumReport spectrum(const LatinSquare& l, const SpectrumOptions& options);

/// Translation isotopy (r,c,s) -> (a r, c b, a s b) of a Cayley table.
struct Translation {
  int left = 0;   // a
  int right = 0;  // b
  std::vector<int> row_perm, col_perm, sym_perm;
};

/// Translates so that the first triple of `t` becomes (0,0,0). The Cayley
/// table is mapped onto itself, so the image is a partial transversal of the
/// same square with the same maximality.
std::pair<Translation, PartialTransversal> normalize_to_identity(const Group& g, const PartialTransversal& t);

/// Sum (in an abelian group) of the given row and column indices.
int abelian_symbol_sum(const Group& g, Mask rows, Mask cols);

/// Whether some set of `count` symbols outside `fixed`, together with all of
/// `fixed`, sums to `target` in abelian g.
bool symbol_sum_feasible(const Group& g, Mask fixed, int count, int target, Mask allowed = ~Mask{0});

}  // namespace omni
