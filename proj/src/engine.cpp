#include "omni/engine.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include <omp.h>

#include "omni/error.hpp"
#include "omni/group.hpp"

namespace omni {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Immutable description of one search, shared by every walker.
struct Context {
  int n = 0;
  int target = 0;
  std::vector<std::int8_t> sym;     // sym[r*64+c]
  std::vector<std::int8_t> col_of;  // col_of[r*64+s]
  std::vector<int> rows;            // free rows in visiting order
  std::vector<int> allowed_suffix;  // allowed rows among rows[d..]
  std::vector<int> forced_suffix;   // forced rows among rows[d..]
  Mask allowed_rows = 0, forced_rows = 0;
  Mask allowed_cols = 0, forced_cols = 0, required_syms = 0;
  std::vector<Mask> forbidden;  // per row
  std::optional<SymbolSumTarget> symbol_sum;
  bool require_maximal = true;

  // seed state
  Mask seed_rows = 0, seed_cols = 0, seed_syms = 0;
  std::vector<Triple> seed;

  SearchBudget budget;
  Clock::time_point start;
  std::atomic<std::uint64_t> shared_nodes{0};
  std::atomic<bool> timed_out{false};
  std::atomic<long> best_task{std::numeric_limits<long>::max()};

  int symbol(int r, int c) const { return sym[r * 64 + c]; }
  int column(int r, int s) const { return col_of[r * 64 + s]; }
};

struct State {
  Mask used_cols = 0, used_syms = 0, skipped = 0;
  int placed = 0;
  int depth = 0;
  std::array<std::int8_t, 64> col{};  // indexed by row; -1 = unused
};

enum class Step { go_on, found, stop };

class Walker {
 public:
  Walker(Context& ctx, long task) : ctx_(ctx), task_(task) {}

  // Collects subtree roots at `split_depth` instead of descending further.
  void set_split(int split_depth, std::vector<State>* out) {
    split_depth_ = split_depth;
    split_out_ = out;
  }

  Step run(State& st) { return dfs(st); }
  std::uint64_t nodes() const { return nodes_; }
  std::optional<PartialTransversal>& found() { return found_; }
  void flush() {
    ctx_.shared_nodes.fetch_add(nodes_ - flushed_, std::memory_order_relaxed);
    flushed_ = nodes_;
  }

 private:
  bool over_budget() {
    if ((nodes_ & 1023U) != 0) return false;
    flush();
    if (ctx_.timed_out.load(std::memory_order_relaxed)) return true;
    if (ctx_.budget.node_limit != 0 && ctx_.shared_nodes.load(std::memory_order_relaxed) > ctx_.budget.node_limit) {
      ctx_.timed_out = true;
      return true;
    }
    if (ctx_.budget.wall_limit.count() != 0 && (nodes_ & 8191U) == 0 &&
        Clock::now() - ctx_.start > ctx_.budget.wall_limit) {
      ctx_.timed_out = true;
      return true;
    }
    return false;
  }

  // Number of cells (r, c) with c and its symbol both unused.
  int free_cells(int r, const State& st) const {
    int count = 0;
    for (Mask syms = low_bits(ctx_.n) & ~st.used_syms; syms; syms &= syms - 1) {
      const int c = ctx_.column(r, lowest(syms));
      count += !has(st.used_cols, c);
    }
    return count;
  }

  bool row_has_option(int r, const State& st) const {
    const Mask cols = ctx_.allowed_cols & ~st.used_cols & ~ctx_.forbidden[r];
    for (Mask syms = low_bits(ctx_.n) & ~st.used_syms; syms; syms &= syms - 1)
      if (has(cols, ctx_.column(r, lowest(syms)))) return true;
    return false;
  }

  bool leaf_ok(const State& st) const {
    if (ctx_.forced_suffix[st.depth] != 0) return false;
    if ((ctx_.forced_cols & ~st.used_cols) != 0) return false;
    if ((ctx_.required_syms & ~st.used_syms) != 0) return false;
    if (ctx_.symbol_sum) {
      const Group& g = *ctx_.symbol_sum->group;
      int sum = 0;
      for (Mask s = st.used_syms; s; s &= s - 1) sum = g.mul(sum, lowest(s));
      if (sum != ctx_.symbol_sum->target) return false;
    }
    if (ctx_.require_maximal) {
      const Mask all = low_bits(ctx_.n);
      const Mask free_syms = all & ~st.used_syms;
      Mask used_rows = ctx_.seed_rows;
      for (int d = 0; d < st.depth; ++d)
        if (st.col[ctx_.rows[d]] >= 0) used_rows |= bit(ctx_.rows[d]);
      for (Mask rows = all & ~used_rows; rows; rows &= rows - 1) {
        const int r = lowest(rows);
        for (Mask syms = free_syms; syms; syms &= syms - 1)
          if (!has(st.used_cols, ctx_.column(r, lowest(syms)))) return false;
      }
    }
    return true;
  }

  void record(const State& st) {
    std::vector<Triple> t = ctx_.seed;
    for (int d = 0; d < st.depth; ++d) {
      const int r = ctx_.rows[d];
      if (st.col[r] >= 0) t.push_back({r, st.col[r], ctx_.symbol(r, st.col[r])});
    }
    found_ = make_transversal(std::move(t));
  }

  Step dfs(State& st) {
    ++nodes_;
    if (over_budget()) return Step::stop;
    if (ctx_.best_task.load(std::memory_order_relaxed) < task_) return Step::stop;

    const int need = ctx_.target - st.placed;
    if (need == 0) {
      if (leaf_ok(st)) {
        record(st);
        return Step::found;
      }
      return Step::go_on;
    }
    const int d = st.depth;
    if (d == static_cast<int>(ctx_.rows.size())) return Step::go_on;
    if (ctx_.allowed_suffix[d] < need || ctx_.forced_suffix[d] > need) return Step::go_on;
    if (popcount(ctx_.forced_cols & ~st.used_cols) > need) return Step::go_on;
    if (popcount(ctx_.required_syms & ~st.used_syms) > need) return Step::go_on;
    if (ctx_.require_maximal) {
      // a future placement removes at most one free cell of a skipped row by
      // its column and one by its symbol
      for (Mask sk = st.skipped; sk; sk &= sk - 1)
        if (free_cells(lowest(sk), st) > 2 * need) return Step::go_on;
    }
    {
      // rows still able to take a cell must cover what is needed
      int able = 0;
      for (std::size_t k = d; k < ctx_.rows.size(); ++k) {
        const int r = ctx_.rows[k];
        if (!has(ctx_.allowed_rows, r)) continue;
        if (row_has_option(r, st)) ++able;
        else if (has(ctx_.forced_rows, r)) return Step::go_on;
      }
      if (able < need) return Step::go_on;
    }

    if (d == split_depth_) {
      split_out_->push_back(st);
      return Step::go_on;
    }

    const int r = ctx_.rows[d];
    st.depth = d + 1;
    if (has(ctx_.allowed_rows, r)) {
      for (Mask cols = ctx_.allowed_cols & ~st.used_cols & ~ctx_.forbidden[r] & low_bits(ctx_.n); cols; cols &= cols - 1) {
        const int c = lowest(cols);
        const int s = ctx_.symbol(r, c);
        if (has(st.used_syms, s)) continue;
        st.col[r] = static_cast<std::int8_t>(c);
        st.used_cols |= bit(c);
        st.used_syms |= bit(s);
        ++st.placed;
        const Step step = dfs(st);
        --st.placed;
        st.used_syms &= ~bit(s);
        st.used_cols &= ~bit(c);
        st.col[r] = -1;
        if (step != Step::go_on) {
          st.depth = d;
          return step;
        }
      }
    }
    if (!has(ctx_.forced_rows, r)) {
      st.skipped |= bit(r);
      const Step step = dfs(st);
      st.skipped &= ~bit(r);
      if (step != Step::go_on) {
        st.depth = d;
        return step;
      }
    }
    st.depth = d;
    return Step::go_on;
  }

  Context& ctx_;
  long task_;
  std::uint64_t nodes_ = 0, flushed_ = 0;
  int split_depth_ = -1;
  std::vector<State>* split_out_ = nullptr;
  std::optional<PartialTransversal> found_;
};

void prepare(Context& ctx, const LatinSquare& l, int length, const SearchBudget& budget, const SearchConstraints& c) {
  const int n = l.order();
  ctx.n = n;
  ctx.target = length;
  ctx.sym.assign(64 * 64, -1);
  ctx.col_of.assign(64 * 64, -1);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) {
      ctx.sym[r * 64 + col] = static_cast<std::int8_t>(l.at(r, col));
      ctx.col_of[r * 64 + l.at(r, col)] = static_cast<std::int8_t>(col);
    }
  const Mask all = low_bits(n);
  ctx.allowed_rows = c.allowed_rows & all;
  ctx.forced_rows = c.forced_rows & all;
  ctx.allowed_cols = c.allowed_cols & all;
  ctx.forced_cols = c.forced_cols & all;
  ctx.required_syms = c.required_symbols & all;
  if ((ctx.forced_rows & ~ctx.allowed_rows) || (ctx.forced_cols & ~ctx.allowed_cols))
    throw Error(Errc::precondition, "forced rows/columns must be allowed");
  ctx.forbidden.assign(n, 0);
  for (auto [r, col] : c.forbidden_cells) {
    if (r < 0 || r >= n || col < 0 || col >= n) throw Error(Errc::precondition, "forbidden cell out of range");
    ctx.forbidden[r] |= bit(col);
  }
  if (!is_partial_transversal(l, c.seed)) throw Error(Errc::precondition, "seed is not a partial transversal");
  ctx.seed = c.seed;
  for (const Triple& t : c.seed) {
    ctx.seed_rows |= bit(t.row);
    ctx.seed_cols |= bit(t.col);
    ctx.seed_syms |= bit(t.sym);
  }
  if (c.symbol_sum) {
    const Group* g = c.symbol_sum->group;
    if (g == nullptr || !g->is_abelian() || g->order() != n) throw Error(Errc::not_abelian, "symbol-sum target needs an abelian group of the same order");
  }
  ctx.symbol_sum = c.symbol_sum;
  ctx.require_maximal = c.require_maximal;
  for (int r = 0; r < n; ++r)
    if (!has(ctx.seed_rows, r)) ctx.rows.push_back(r);
  const int k = static_cast<int>(ctx.rows.size());
  ctx.allowed_suffix.assign(k + 1, 0);
  ctx.forced_suffix.assign(k + 1, 0);
  for (int d = k - 1; d >= 0; --d) {
    ctx.allowed_suffix[d] = ctx.allowed_suffix[d + 1] + has(ctx.allowed_rows, ctx.rows[d]);
    ctx.forced_suffix[d] = ctx.forced_suffix[d + 1] + has(ctx.forced_rows, ctx.rows[d]);
  }
  ctx.budget = budget;
  ctx.start = Clock::now();
}

State initial_state(const Context& ctx) {
  State st;
  st.col.fill(-1);
  st.used_cols = ctx.seed_cols;
  st.used_syms = ctx.seed_syms;
  st.placed = static_cast<int>(ctx.seed.size());
  return st;
}

SearchResult finish(const Context& ctx, std::optional<PartialTransversal> witness) {
  SearchResult res;
  res.nodes = ctx.shared_nodes.load();
  res.millis = millis_since(ctx.start);
  if (witness) {
    res.status = SearchStatus::achieved;
    res.witness = std::move(witness);
  } else {
    res.status = ctx.timed_out ? SearchStatus::timeout : SearchStatus::proven_absent;
  }
  return res;
}

void check_length(const LatinSquare& l, int length) {
  if (length < 0 || length > l.order()) throw Error(Errc::length_out_of_range, "length outside 0..n", length);
}

}  // namespace

Mask PartialTransversal::used_rows() const {
  Mask m = 0;
  for (const Triple& t : triples) m |= bit(t.row);
  return m;
}

Mask PartialTransversal::used_cols() const {
  Mask m = 0;
  for (const Triple& t : triples) m |= bit(t.col);
  return m;
}

Mask PartialTransversal::used_syms() const {
  Mask m = 0;
  for (const Triple& t : triples) m |= bit(t.sym);
  return m;
}

PartialTransversal make_transversal(std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end());
  return PartialTransversal{std::move(triples)};
}

bool is_partial_transversal(const LatinSquare& l, const std::vector<Triple>& t) {
  const int n = l.order();
  Mask rows = 0, cols = 0, syms = 0;
  for (const Triple& x : t) {
    if (x.row < 0 || x.row >= n || x.col < 0 || x.col >= n || x.sym < 0 || x.sym >= n) return false;
    if (l.at(x.row, x.col) != x.sym) return false;
    if (has(rows, x.row) || has(cols, x.col) || has(syms, x.sym)) return false;
    rows |= bit(x.row);
    cols |= bit(x.col);
    syms |= bit(x.sym);
  }
  return true;
}

bool is_maximal(const LatinSquare& l, const PartialTransversal& t) {
  const int n = l.order();
  const Mask all = low_bits(n);
  const Mask rows = all & ~t.used_rows(), cols = all & ~t.used_cols(), syms = t.used_syms();
  for (int r : elements_of(rows))
    for (int c : elements_of(cols))
      if (!has(syms, l.at(r, c))) return false;
  return true;
}

void verify_maximal_witness(const LatinSquare& l, const PartialTransversal& t, int length) {
  if (t.length() != length) throw Error(Errc::witness_verification_failed, "witness has the wrong length", t.length());
  if (!is_partial_transversal(l, t.triples)) throw Error(Errc::witness_verification_failed, "witness is not a partial transversal");
  if (!is_maximal(l, t)) throw Error(Errc::witness_verification_failed, "witness is not maximal");
  if (length < min_maximal_length(l.order()) || length > l.order())
    throw Error(Errc::witness_verification_failed, "maximal partial transversal outside [ceil(n/2), n]", length);
}

PartialTransversal extend_greedy(const LatinSquare& l, const PartialTransversal& t) {
  if (!is_partial_transversal(l, t.triples)) throw Error(Errc::precondition, "not a partial transversal");
  std::vector<Triple> out = t.triples;
  Mask rows = t.used_rows(), cols = t.used_cols(), syms = t.used_syms();
  for (int r = 0; r < l.order(); ++r) {
    if (has(rows, r)) continue;
    for (int c = 0; c < l.order(); ++c) {
      const int s = l.at(r, c);
      if (has(cols, c) || has(syms, s)) continue;
      out.push_back({r, c, s});
      rows |= bit(r);
      cols |= bit(c);
      syms |= bit(s);
      break;
    }
  }
  return make_transversal(std::move(out));
}

std::optional<SearchBudget> SearchBudget::default_for(int order) {
  if (order <= 10) return unlimited();
  if (order <= 16) return nodes(100'000'000);
  return std::nullopt;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::achieved: return "achieved";
    case SearchStatus::proven_absent: return "proven-absent";
    case SearchStatus::timeout: return "timeout";
  }
  return "?";
}

const char* to_string(LengthKind k) {
  switch (k) {
    case LengthKind::achieved: return "achieved";
    case LengthKind::proven_absent: return "proven-absent";
    case LengthKind::forbidden: return "forbidden";
    case LengthKind::timeout: return "timeout";
  }
  return "?";
}

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::omniversal: return "omniversal";
    case Verdict::Kind::near_omniversal: return "near-omniversal";
    case Verdict::Kind::other: return "other";
  }
  return "?";
}

SearchResult search_serial(const LatinSquare& l, int length, const SearchBudget& budget,
                           const SearchConstraints& constraints) {
  check_length(l, length);
  Context ctx;
  prepare(ctx, l, length, budget, constraints);
  Walker w(ctx, 0);
  State st = initial_state(ctx);
  const Step step = w.run(st);
  w.flush();
  return finish(ctx, step == Step::found ? std::move(w.found()) : std::nullopt);
}

SearchResult search_parallel(const LatinSquare& l, int length, const SearchBudget& budget,
                             const SearchConstraints& constraints, int jobs) {
  check_length(l, length);
  Context ctx;
  prepare(ctx, l, length, budget, constraints);

  // Phase 1: walk the top of the tree serially, collecting subtree roots. A
  // witness met above the split depth precedes every later root in DFS order.
  std::vector<State> roots;
  const int split = std::min<int>(2, static_cast<int>(ctx.rows.size()));
  Walker top(ctx, 0);
  top.set_split(split, &roots);
  State st = initial_state(ctx);
  // Roots are pushed in DFS order; if a witness turns up first, it wins
  // outright only when no root was collected before it.
  Step step = top.run(st);
  top.flush();
  if (step == Step::found && roots.empty()) return finish(ctx, std::move(top.found()));
  std::optional<PartialTransversal> early = step == Step::found ? std::move(top.found()) : std::nullopt;
  const long early_index = static_cast<long>(roots.size());
  if (step == Step::stop) return finish(ctx, std::nullopt);

  // Phase 2: independent subtrees. best_task keeps the lowest index holding
  // a witness so higher-index tasks can stop early.
  const long count = static_cast<long>(roots.size());
  std::vector<std::optional<PartialTransversal>> found(count);
  if (early) ctx.best_task = early_index;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (long i = 0; i < count; ++i) {
    if (ctx.best_task.load() < i || ctx.timed_out.load()) continue;
    Walker w(ctx, i);
    State s = roots[i];
    if (w.run(s) == Step::found) {
      found[i] = std::move(w.found());
      long cur = ctx.best_task.load();
      while (i < cur && !ctx.best_task.compare_exchange_weak(cur, i)) {
      }
    }
    w.flush();
  }
  const long best = ctx.best_task.load();
  if (best < count && found[best]) return finish(ctx, std::move(found[best]));
  if (early) return finish(ctx, std::move(early));
  return finish(ctx, std::nullopt);
}

SearchResult find_maximal_of_length(const LatinSquare& l, int length, const SearchBudget& budget,
                                    const SearchConstraints& constraints, int jobs) {
  const int n = l.order();
  if (length < min_maximal_length(n) || length > n)
    throw Error(Errc::length_out_of_range, "maximal partial transversals have length in [ceil(n/2), n]", length);
  SearchConstraints c = constraints;
  c.require_maximal = true;
  SearchResult res = jobs > 1 ? search_parallel(l, length, budget, c, jobs) : search_serial(l, length, budget, c);
  if (res.witness) verify_maximal_witness(l, *res.witness, length);
  return res;
}

SearchResult find_partial_transversal(const LatinSquare& l, int length, const SearchBudget& budget,
                                      SearchConstraints constraints, int jobs) {
  constraints.require_maximal = false;
  SearchResult res = jobs > 1 ? search_parallel(l, length, budget, constraints, jobs)
                              : search_serial(l, length, budget, constraints);
  if (res.witness && (res.witness->length() != length || !is_partial_transversal(l, res.witness->triples)))
    throw Error(Errc::witness_verification_failed, "search returned an invalid partial transversal");
  return res;
}

std::vector<int> SpectrumReport::achieved() const {
  std::vector<int> out;
  for (const auto& [len, st] : statuses)
    if (st.kind == LengthKind::achieved) out.push_back(len);
  return out;
}

bool SpectrumReport::complete() const {
  return std::none_of(statuses.begin(), statuses.end(),
                      [](const auto& kv) { return kv.second.kind == LengthKind::timeout; });
}

void derive_verdict(SpectrumReport& r) {
  r.verdict.reset();
  if (!r.complete()) return;
  Verdict v;
  for (const auto& [len, st] : r.statuses)
    if (st.kind != LengthKind::achieved) v.missing.push_back(len);
  if (v.missing.empty()) {
    v.kind = Verdict::Kind::omniversal;
  } else if (v.missing.size() == 1) {
    v.kind = Verdict::Kind::near_omniversal;
    v.mu = v.missing.front();
  } else {
    v.kind = Verdict::Kind::other;
  }
  r.verdict = v;
}

SpectrumReport spectrum(const LatinSquare& l, const SpectrumOptions& options) {
  const int n = l.order();
  SpectrumReport rep;
  rep.square_hash = square_hash(l);
  rep.order = n;
  rep.lo = min_maximal_length(n);
  rep.hi = n;
  std::vector<int> lengths;
  for (int len = rep.hi; len >= rep.lo; --len) lengths.push_back(len);
  for (int len : lengths) {
    if (options.use_half_transversal_exclusion && n % 4 == 2 && len == n / 2 && n > 2 &&
        rep.statuses.at(n).kind == LengthKind::achieved) {
      LengthStatus st;
      st.kind = LengthKind::proven_absent;
      st.reason = "t4n2";
      rep.statuses[len] = std::move(st);
      continue;
    }
    const SearchResult res = find_maximal_of_length(l, len, options.budget, {}, options.jobs);
    LengthStatus st;
    st.nodes = res.nodes;
    st.millis = res.millis;
    switch (res.status) {
      case SearchStatus::achieved:
        st.kind = LengthKind::achieved;
        st.witness = res.witness;
        st.how = "direct-search";
        break;
      case SearchStatus::proven_absent:
        st.kind = LengthKind::proven_absent;
        st.reason = "search-exhausted";
        break;
      case SearchStatus::timeout:
        st.kind = LengthKind::timeout;
        st.reason = "budget";
        break;
    }
    rep.statuses[len] = std::move(st);
  }
  derive_verdict(rep);
  return rep;
}

std::pair<Translation, PartialTransversal> normalize_to_identity(const Group& g, const PartialTransversal& t) {
  if (t.triples.empty()) throw Error(Errc::precondition, "cannot normalize an empty partial transversal");
  const int n = g.order();
  const Triple& first = t.triples.front();
  Translation tr;
  tr.left = g.inverse(first.row);
  tr.right = g.inverse(first.col);
  tr.row_perm.resize(n);
  tr.col_perm.resize(n);
  tr.sym_perm.resize(n);
  for (int x = 0; x < n; ++x) {
    tr.row_perm[x] = g.mul(tr.left, x);
    tr.col_perm[x] = g.mul(x, tr.right);
    tr.sym_perm[x] = g.mul(g.mul(tr.left, x), tr.right);
  }
  std::vector<Triple> out;
  for (const Triple& x : t.triples) out.push_back({tr.row_perm[x.row], tr.col_perm[x.col], tr.sym_perm[x.sym]});
  return {std::move(tr), make_transversal(std::move(out))};
}

int abelian_symbol_sum(const Group& g, Mask rows, Mask cols) {
  if (!g.is_abelian()) throw Error(Errc::not_abelian, "symbol sums need an abelian group");
  int sum = 0;
  for (int r : elements_of(rows)) sum = g.mul(sum, r);
  for (int c : elements_of(cols)) sum = g.mul(sum, c);
  return sum;
}

bool symbol_sum_feasible(const Group& g, Mask fixed, int count, int target, Mask allowed) {
  if (!g.is_abelian()) throw Error(Errc::not_abelian, "symbol sums need an abelian group");
  const int n = g.order();
  int base = 0;
  for (int s : elements_of(fixed)) base = g.mul(base, s);
  if (count < 0) return false;
  // reach[k]: sums reachable by k chosen elements
  std::vector<Mask> reach(count + 1, 0);
  reach[0] = bit(base);
  for (int e : elements_of(allowed & low_bits(n) & ~fixed)) {
    for (int k = count; k >= 1; --k) {
      Mask next = 0;
      for (Mask m = reach[k - 1]; m; m &= m - 1) next |= bit(g.mul(lowest(m), e));
      reach[k] |= next;
    }
  }
  return has(reach[count], target);
}

}  // namespace omni
