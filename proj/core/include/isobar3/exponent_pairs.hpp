#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isobar3/rational.hpp"

namespace isobar3::expo {

struct ExponentPair {
  Rational p;
  Rational q;
  std::string word;  // processes applied to the seed, left to right
  std::string seed;

  bool same_point(const ExponentPair& o) const { return p == o.p && q == o.q; }
};

ExponentPair trivial_pair();   // (0, 1)
ExponentPair bourgain_pair();  // (13/84, 55/84)

// 0 <= p <= 1/2 <= q <= 1
bool is_valid(const ExponentPair& pair);

ExponentPair a_process(const ExponentPair& pair);  // (p/(2p+2), (p+q+1)/(2p+2))
ExponentPair b_process(const ExponentPair& pair);  // (q - 1/2, p + 1/2)
// Applies `word` to a seed. Throws invalid_argument on letters other than A, B.
ExponentPair replay(const ExponentPair& seed, const std::string& word);

// (5 + 5p - 2q) / (11 + 8p - 5q); DegenerateDenominator when the denominator is <= 0.
Rational objective_theta(const ExponentPair& pair);

struct SearchResult {
  ExponentPair best;
  Rational theta_min;
  std::vector<ExponentPair> pairs;  // distinct points, each with its preferred derivation
  std::size_t words_enumerated = 0;
};

// Every word of length <= max_word_length on every seed. Ties on theta break
// by shorter word, then lexicographic word, then seed order.
SearchResult search_pairs(unsigned max_word_length,
                          const std::vector<ExponentPair>& seeds = {trivial_pair(), bourgain_pair()});

}  // namespace isobar3::expo
