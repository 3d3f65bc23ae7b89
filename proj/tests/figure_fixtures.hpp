#pragma once
// Squares and shaded cells transcribed from the published figures.

#include <vector>

#include "omni/latin.hpp"

namespace fixture {

inline omni::LatinSquare order8_figure() {
  return omni::LatinSquare::validate({{2, 1, 0, 3, 4, 5, 6, 7},
                                      {1, 0, 3, 2, 5, 4, 7, 6},
                                      {0, 3, 2, 1, 6, 7, 4, 5},
                                      {3, 2, 1, 0, 7, 6, 5, 4},
                                      {4, 5, 6, 7, 0, 1, 2, 3},
                                      {5, 4, 7, 6, 1, 0, 3, 2},
                                      {6, 7, 4, 5, 2, 3, 0, 1},
                                      {7, 6, 5, 4, 3, 2, 1, 0}});
}

// lengths 4..8
inline std::vector<std::vector<omni::Triple>> order8_figure_witnesses() {
  return {
      {{4, 6, 2}, {5, 4, 1}, {6, 5, 3}, {7, 7, 0}},
      {{0, 0, 2}, {1, 5, 4}, {4, 1, 5}, {5, 4, 1}, {7, 7, 0}},
      {{0, 4, 4}, {1, 3, 2}, {2, 1, 3}, {3, 2, 1}, {6, 0, 6}, {7, 7, 0}},
      {{1, 3, 2}, {2, 6, 4}, {3, 5, 6}, {4, 1, 5}, {5, 2, 7}, {6, 7, 1}, {7, 4, 3}},
      {{0, 1, 1}, {1, 2, 3}, {2, 7, 5}, {3, 4, 7}, {4, 0, 4}, {5, 3, 6}, {6, 6, 0}, {7, 5, 2}},
  };
}

inline omni::LatinSquare order6_figure() {
  return omni::LatinSquare::validate({{3, 2, 4, 1, 0, 5},
                                      {2, 4, 0, 3, 5, 1},
                                      {4, 0, 2, 5, 1, 3},
                                      {1, 3, 5, 2, 4, 0},
                                      {0, 5, 1, 4, 3, 2},
                                      {5, 1, 3, 0, 2, 4}});
}

// lengths 4, 5, 6
inline std::vector<std::vector<omni::Triple>> order6_figure_witnesses() {
  return {
      {{0, 3, 1}, {1, 4, 5}, {2, 5, 3}, {4, 0, 0}},
      {{0, 1, 2}, {1, 4, 5}, {2, 5, 3}, {3, 0, 1}, {4, 3, 4}},
      {{0, 4, 0}, {1, 3, 3}, {2, 2, 2}, {3, 0, 1}, {4, 1, 5}, {5, 5, 4}},
  };
}

// the length-3 maximal partial transversal in the Cayley table of Z5
inline std::vector<omni::Triple> z5_length3() { return {{2, 3, 0}, {3, 4, 2}, {4, 2, 1}}; }

}  // namespace fixture
