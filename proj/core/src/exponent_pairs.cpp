#include "isobar3/exponent_pairs.hpp"

#include <map>
#include <tuple>
#include <utility>

#include "isobar3/error.hpp"

namespace isobar3::expo {
namespace {

constexpr const char* kModule = "exponent_calculus";

// Preference among derivations of the same point.
bool preferred(const ExponentPair& a, std::size_t seed_a, const ExponentPair& b, std::size_t seed_b) {
  return std::make_tuple(a.word.size(), a.word, seed_a) < std::make_tuple(b.word.size(), b.word, seed_b);
}

}  // namespace

ExponentPair trivial_pair() { return {Rational(0), Rational(1), "", "trivial"}; }
ExponentPair bourgain_pair() { return {Rational(13, 84), Rational(55, 84), "", "bourgain"}; }

bool is_valid(const ExponentPair& pair) {
  const Rational half(1, 2);
  return Rational(0) <= pair.p && pair.p <= half && half <= pair.q && pair.q <= Rational(1);
}

ExponentPair a_process(const ExponentPair& pair) {
  const Rational den = Rational(2) * pair.p + Rational(2);
  return {pair.p / den, (pair.p + pair.q + Rational(1)) / den, pair.word + "A", pair.seed};
}

ExponentPair b_process(const ExponentPair& pair) {
  const Rational half(1, 2);
  return {pair.q - half, pair.p + half, pair.word + "B", pair.seed};
}

ExponentPair replay(const ExponentPair& seed, const std::string& word) {
  ExponentPair cur = seed;
  for (char c : word) {
    if (c == 'A')
      cur = a_process(cur);
    else if (c == 'B')
      cur = b_process(cur);
    else
      throw Error(Errc::invalid_argument, kModule, std::string("bad process letter '") + c + "'");
  }
  return cur;
}

Rational objective_theta(const ExponentPair& pair) {
  const Rational den = Rational(11) + Rational(8) * pair.p - Rational(5) * pair.q;
  if (den.sign() <= 0)
    throw Error(Errc::degenerate_denominator, kModule,
                "11 + 8p - 5q <= 0 at (" + pair.p.str() + ", " + pair.q.str() + ")");
  return (Rational(5) + Rational(5) * pair.p - Rational(2) * pair.q) / den;
}

SearchResult search_pairs(unsigned max_word_length, const std::vector<ExponentPair>& seeds) {
  if (seeds.empty()) throw Error(Errc::invalid_argument, kModule, "no seeds");
  if (max_word_length > 24) throw Error(Errc::invalid_argument, kModule, "word length above 24");

  struct Entry {
    ExponentPair pair;
    std::size_t seed_index;
    Rational theta;
  };
  std::map<std::pair<Rational, Rational>, Entry> seen;
  std::vector<std::pair<Rational, Rational>> order;
  SearchResult result;

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    ExponentPair root = seeds[si];
    root.word.clear();
    // breadth-first by length, A before B, so words arrive in (length, lex) order
    std::vector<ExponentPair> level{root};
    for (unsigned len = 0; len <= max_word_length; ++len) {
      std::vector<ExponentPair> next;
      for (const auto& pr : level) {
        ++result.words_enumerated;
        auto key = std::make_pair(pr.p, pr.q);
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, Entry{pr, si, objective_theta(pr)});
          order.push_back(key);
        } else if (preferred(pr, si, it->second.pair, it->second.seed_index)) {
          it->second.pair = pr;
          it->second.seed_index = si;
        }
        if (len < max_word_length) {
          next.push_back(a_process(pr));
          next.push_back(b_process(pr));
        }
      }
      level = std::move(next);
    }
  }

  const Entry* best = nullptr;
  for (const auto& key : order) {
    const Entry& e = seen.at(key);
    result.pairs.push_back(e.pair);
    if (!best || e.theta < best->theta ||
        (e.theta == best->theta && preferred(e.pair, e.seed_index, best->pair, best->seed_index)))
      best = &e;
  }
  result.best = best->pair;
  result.theta_min = best->theta;
  return result;
}

}  // namespace isobar3::expo
