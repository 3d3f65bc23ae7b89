#include "omni/classify.hpp"

#include "omni/constructions.hpp"
#include "omni/error.hpp"
#include "omni/extension.hpp"

namespace omni {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::transgrp: return "transgrp";
    case Rule::noabelpanmax: return "noabelpanmax";
    case Rule::halfn: return "halfn";
    case Rule::nosmallingrp: return "nosmallingrp";
    case Rule::t4n2: return "t4n2";
  }
  return "?";
}

std::pair<int, int> complementary_band(int n) { return {(3 * n + 4) / 5, 2 * (n + 1) / 3}; }

std::map<int, Rule> forbidden_lengths(const Group& g) {
  const int n = g.order();
  const bool cyc2 = sylow2_cyclic(g);
  const bool index2 = n % 2 == 0 && !subgroups(g, n / 2).empty();
  const bool half_ok = index2_subgroup_with_transversal(g).has_value();
  std::map<int, Rule> out;
  for (int len = min_maximal_length(n); len <= n; ++len) {
    if (len == n && cyc2) {
      out[len] = Rule::transgrp;
    } else if (len == n - 1 && g.is_abelian() && !cyc2) {
      out[len] = Rule::noabelpanmax;
    } else if (n % 2 == 0 && len == n / 2 && !half_ok) {
      out[len] = Rule::halfn;
    } else if (5 * len < 3 * n && !(index2 && (len - n / 2) % 2 == 0)) {
      out[len] = Rule::nosmallingrp;
    }
  }
  return out;
}

namespace {

class CandidateWalk {
 public:
  CandidateWalk(const Group& g, int length, const std::function<bool(const ComplementCandidate&)>& visit)
      : g_(g), n_(g.order()), len_(length), k_(g.order() - length), visit_(visit), colsyms_(g.order()) {}

  void run() { rows(1, 1, bit(0)); }

 private:
  void rows(int next, int have, Mask set) {
    if (stop_) return;
    if (have == k_) {
      for (int c = 0; c < n_; ++c) {
        Mask m = 0;
        for (int r : elements_of(set)) m |= bit(g_.mul(r, c));
        colsyms_[c] = m;
      }
      row_set_ = set;
      cols(1, 1, bit(0), colsyms_[0]);
      return;
    }
    for (int r = next; r <= n_ - (k_ - have) && !stop_; ++r) rows(r + 1, have + 1, set | bit(r));
  }

  void cols(int next, int have, Mask set, Mask syms) {
    if (stop_) return;
    if (have == k_) {
      ComplementCandidate c;
      c.window = {row_set_, set, syms};
      c.symbol_count = popcount(syms);
      if (!visit_(c)) stop_ = true;
      return;
    }
    for (int c = next; c <= n_ - (k_ - have) && !stop_; ++c) {
      const Mask s = syms | colsyms_[c];
      if (popcount(s) <= len_) cols(c + 1, have + 1, set | bit(c), s);
    }
  }

  const Group& g_;
  int n_, len_, k_;
  const std::function<bool(const ComplementCandidate&)>& visit_;
  std::vector<Mask> colsyms_;
  Mask row_set_ = 0;
  bool stop_ = false;
};

// x = (l - n/2)/2 with 1 <= x <= n/8 and an index-2 subgroup.
std::optional<PartialTransversal> everysecond(const Group& g, const LatinSquare& l, int length) {
  const int n = g.order(), h = n / 2;
  if (n % 2 != 0 || length <= h || (length - h) % 2 != 0) return std::nullopt;
  const int x = (length - h) / 2;
  if (8 * x > n) return std::nullopt;
  for (const Subgroup& sub : subgroups(g, h)) {
    if (!is_normal(g, sub)) throw Error(Errc::precondition, "index-2 subgroup is not normal");
    SearchConstraints c;
    c.allowed_rows = c.allowed_cols = sub.mask();
    const SearchResult near = find_partial_transversal(l, h - 1, SearchBudget::unlimited(), c);
    if (near.witness) return every_second_witness(l, window(l, sub.mask(), sub.mask()), *near.witness, x);
  }
  return std::nullopt;
}

bool delta_feasible(const Group& g, int length, const ComplementCandidate& c, int* target) {
  const int n = g.order();
  const Mask all = low_bits(n);
  *target = abelian_symbol_sum(g, all & ~c.window.rows, all & ~c.window.cols);
  return symbol_sum_feasible(g, c.window.symbols, length - c.symbol_count, *target);
}

SearchResult targeted(const Group& g, const LatinSquare& l, int length, const ComplementCandidate& c,
                      const SearchBudget& budget, int jobs, bool* delta_killed) {
  const Mask all = low_bits(g.order());
  SearchConstraints con;
  con.allowed_rows = con.forced_rows = all & ~c.window.rows;
  con.allowed_cols = con.forced_cols = all & ~c.window.cols;
  con.required_symbols = c.window.symbols;
  *delta_killed = false;
  if (g.is_abelian()) {
    int target = 0;
    if (!delta_feasible(g, length, c, &target)) {
      *delta_killed = true;
      return SearchResult{SearchStatus::proven_absent, std::nullopt, 0, 0};
    }
    con.symbol_sum = SymbolSumTarget{&g, target};
  }
  return find_maximal_of_length(l, length, budget, con, jobs);
}

LengthStatus from_search(const SearchResult& r, const char* how, const char* absent_reason) {
  LengthStatus st;
  st.nodes = r.nodes;
  st.millis = r.millis;
  switch (r.status) {
    case SearchStatus::achieved:
      st.kind = LengthKind::achieved;
      st.witness = r.witness;
      st.how = how;
      break;
    case SearchStatus::proven_absent:
      st.kind = LengthKind::proven_absent;
      st.reason = absent_reason;
      break;
    case SearchStatus::timeout:
      st.kind = LengthKind::timeout;
      st.reason = "budget";
      break;
  }
  return st;
}

}  // namespace

void for_each_complement_candidate(const Group& g, int length,
                                   const std::function<bool(const ComplementCandidate&)>& visit) {
  if (length < 1 || length >= g.order())
    throw Error(Errc::length_out_of_range, "complementary windows need 1 <= l < n", length);
  CandidateWalk(g, length, visit).run();
}

std::vector<ComplementCandidate> complement_candidates(const Group& g, int length) {
  std::vector<ComplementCandidate> out;
  for_each_complement_candidate(g, length, [&](const ComplementCandidate& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

Viability viability_filter(const Group& g, int length, const ComplementCandidate& c) {
  const int n = g.order(), k = popcount(c.window.rows), m = c.symbol_count;
  if (m > length) return {false, "too-many-symbols"};
  if (3 * k <= 2 * m) return {};
  // the window sits inside an m x m subsquare
  if (!extend_general(g, c.window.rows, c.window.cols)) return {};
  if (subgroups(g, m).empty()) return {false, "no-subgroup"};
  if (m == n) return {false, "whole-square"};
  if (2 * m == n) {
    if ((length - m) % 2 == 0 && 4 * length <= 3 * n) return {false, "everysecond"};
    if ((length - m) % 2 != 0 && 3 * length <= 2 * n) return {false, "halfsquare-parity"};
  }
  return {};
}

SearchResult targeted_search(const Group& g, int length, const ComplementCandidate& c, const SearchBudget& budget,
                             int jobs) {
  bool killed = false;
  return targeted(g, cayley_table(g), length, c, budget, jobs, &killed);
}

LengthStatus complementary_window_status(const Group& g, int length, const SearchBudget& budget, int jobs) {
  const LatinSquare l = cayley_table(g);
  LengthStatus st;
  if (auto w = everysecond(g, l, length)) {
    st.kind = LengthKind::achieved;
    st.witness = std::move(w);
    st.how = "everysecond-construction";
    return st;
  }
  const auto t0 = std::chrono::steady_clock::now();
  bool timed_out = false;
  std::optional<PartialTransversal> found;
  st.counters["candidates"] = 0;
  for_each_complement_candidate(g, length, [&](const ComplementCandidate& c) {
    ++st.counters["candidates"];
    const Viability v = viability_filter(g, length, c);
    if (!v.viable) {
      ++st.counters["pruned-" + v.reason];
      return true;
    }
    bool killed = false;
    const SearchResult r = targeted(g, l, length, c, budget, jobs, &killed);
    st.nodes += r.nodes;
    if (killed) {
      ++st.counters["delta-infeasible"];
      return true;
    }
    ++st.counters["searched"];
    if (r.status == SearchStatus::timeout) timed_out = true;
    if (r.witness) {
      found = r.witness;
      return false;
    }
    return true;
  });
  st.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (found) {
    st.kind = LengthKind::achieved;
    st.witness = std::move(found);
    st.how = "complementary-window";
  } else if (timed_out) {
    st.kind = LengthKind::timeout;
    st.reason = "budget";
  } else {
    st.kind = LengthKind::proven_absent;
    st.reason = "complementary-window";
  }
  return st;
}

ClassifyOptions default_classify_options(int order) {
  ClassifyOptions o;
  o.budget = SearchBudget::default_for(order).value_or(SearchBudget::nodes(100'000'000));
  return o;
}

SpectrumReport classify_group(const Group& g, const ClassifyOptions& options) {
  const int n = g.order();
  const LatinSquare l = cayley_table(g);
  const auto forbidden = forbidden_lengths(g);
  const auto half = index2_subgroup_with_transversal(g);
  const auto [band_lo, band_hi] = complementary_band(n);

  SpectrumReport rep;
  rep.square_hash = square_hash(l);
  rep.order = n;
  rep.lo = min_maximal_length(n);
  rep.hi = n;
  for (int len = n; len >= rep.lo; --len) {
    LengthStatus st;
    if (auto it = forbidden.find(len); it != forbidden.end()) {
      st.kind = LengthKind::forbidden;
      st.reason = to_string(it->second);
    } else if (n % 2 == 0 && len == n / 2 && half) {
      SearchConstraints c;
      c.allowed_rows = c.allowed_cols = half->mask();
      const SearchResult r = find_partial_transversal(l, len, SearchBudget::unlimited(), c);
      if (!r.witness) throw Error(Errc::witness_verification_failed, "subgroup block has no transversal");
      verify_maximal_witness(l, *r.witness, len);
      st = from_search(r, "subsquare-transversal", "");
    } else if (auto w = everysecond(g, l, len)) {
      st.kind = LengthKind::achieved;
      st.witness = std::move(w);
      st.how = "everysecond-construction";
    } else if (len < n && len >= band_lo && len <= band_hi) {
      st = complementary_window_status(g, len, options.budget, options.jobs);
      if (options.cross_check) {
        SearchConstraints c;
        c.seed = {{0, 0, 0}};
        const SearchResult r = find_maximal_of_length(l, len, options.budget, c, options.jobs);
        const bool direct = r.status == SearchStatus::achieved;
        const bool window = st.kind == LengthKind::achieved;
        if (r.status != SearchStatus::timeout && st.kind != LengthKind::timeout && direct != window)
          throw Error(Errc::witness_verification_failed, "direct search and complementary windows disagree", len);
        st.counters["cross-checked"] = r.status != SearchStatus::timeout;
      }
    } else {
      SearchConstraints c;
      c.seed = {{0, 0, 0}};
      st = from_search(find_maximal_of_length(l, len, options.budget, c, options.jobs), "direct-search",
                       "search-exhausted");
    }
    rep.statuses[len] = std::move(st);
  }
  derive_verdict(rep);
  return rep;
}

std::vector<std::pair<Group, SpectrumReport>> classify_order(int n, const ClassifyOptions& options) {
  std::vector<std::pair<Group, SpectrumReport>> out;
  for (Group& g : catalog(n)) {
    SpectrumReport r = classify_group(g, options);
    out.emplace_back(std::move(g), std::move(r));
  }
  return out;
}

}  // namespace omni
