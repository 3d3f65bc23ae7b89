#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omni/engine.hpp"
#include "omni/group.hpp"
#include "omni/latin.hpp"

namespace omni {

enum class Rule { transgrp, noabelpanmax, halfn, nosmallingrp, t4n2 };

const char* to_string(Rule r);

/// Lengths in [ceil(n/2), n] excluded by the group-theoretic rules.
std::map<int, Rule> forbidden_lengths(const Group& g);

/// An (n-l) x (n-l) window through row 0 and column 0 with at most l symbols.
struct ComplementCandidate {
  SubmatrixWindow window;
  int symbol_count = 0;
};

/// Every row set of size n-l containing 0; columns grown from {0} in
/// ascending order while the symbol count stays <= l. Return false from
/// `visit` to stop early.
void for_each_complement_candidate(const Group& g, int length,
                                   const std::function<bool(const ComplementCandidate&)>& visit);
std::vector<ComplementCandidate> complement_candidates(const Group& g, int length);

struct Viability {
  bool viable = true;
  std::string reason;  // why it was pruned
};

Viability viability_filter(const Group& g, int length, const ComplementCandidate& c);

/// Search for T using exactly the rows and columns outside the window and
/// every symbol inside it; abelian groups also get the symbol-sum target.
SearchResult targeted_search(const Group& g, int length, const ComplementCandidate& c, const SearchBudget& budget,
                             int jobs = 1);

/// The whole window pipeline for one length.
LengthStatus complementary_window_status(const Group& g, int length, const SearchBudget& budget, int jobs = 1);

struct ClassifyOptions {
  SearchBudget budget = SearchBudget::nodes(100'000'000);
  int jobs = 1;
  /// Also run direct search on band lengths and require agreement.
  bool cross_check = false;
};

/// The budget a classify run uses by default for a group of this order.
ClassifyOptions default_classify_options(int order);

SpectrumReport classify_group(const Group& g, const ClassifyOptions& options);

std::vector<std::pair<Group, SpectrumReport>> classify_order(int n, const ClassifyOptions& options);

/// Band [ceil(3n/5), floor(2(n+1)/3)] handled by complementary windows.
std::pair<int, int> complementary_band(int n);

}  // namespace omni
