#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "reflecto/matrix.hpp"
#include "reflecto/network.hpp"

// Seeded generators shared by the property tests and the acceptance binary.
namespace reflecto::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  // uniform in [lo, hi]
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int percent) { return integer(1, 100) <= percent; }

  // u/v with u, v in 1..16
  Rational positive() { return Rational(integer(1, 16), integer(1, 16)); }
  Rational signed_small(std::int64_t bound) {
    return Rational(integer(-bound, bound), integer(1, 4));
  }
  // positive rational in [1/4, 4]
  Rational mean() {
    for (;;) {
      Rational m = positive();
      if (m >= Rational(1, 4) && m <= Rational(4)) return m;
    }
  }

  RatMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t bound) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = signed_small(bound);
    return m;
  }

  RatVector positive_vector(std::size_t n) {
    RatVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(positive());
    return v;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

  // Strictly negative off-diagonal, strictly dominant diagonal, then scaled
  // by a positive diagonal on the right: an irreducible M-matrix.
  RatMatrix m_matrix(std::size_t d) {
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      Rational off_sum;
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        m(i, j) = -positive();
        off_sum -= m(i, j);
      }
      m(i, i) = off_sum + positive();
    }
    const RatVector scale = positive_vector(d);
    return m * RatMatrix::diagonal(scale);
  }

  // Route of length K over stations 1..d, every station visited.
  std::vector<std::size_t> route(std::size_t classes, std::size_t stations) {
    std::vector<std::size_t> r;
    for (std::size_t s = 1; s <= stations; ++s) r.push_back(s);
    while (r.size() < classes) {
      r.push_back(static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(stations))));
    }
    shuffle(r);
    return r;
  }

  NetworkSpec reentrant_line(std::size_t max_classes, std::size_t max_stations,
                             Discipline discipline) {
    const auto k = static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(max_classes)));
    const auto d = static_cast<std::size_t>(
        integer(1, static_cast<std::int64_t>(std::min(k, max_stations))));
    RatVector means;
    for (std::size_t i = 0; i < k; ++i) means.push_back(mean());
    return reentrant_spec(route(k, d), means, positive(), discipline);
  }

  // Valid general network. Routing rows either follow a single successor
  // (probability one) or spread a total strictly below one.
  NetworkSpec network(std::size_t max_classes, std::size_t stations_hint = 0) {
    NetworkSpec s;
    const auto k = std::max<std::size_t>(
        stations_hint, static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(max_classes))));
    const std::size_t d =
        stations_hint ? stations_hint
                      : static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(k)));
    s.classes = k;
    s.stations = d;
    for (std::size_t i = 0; i < d; ++i) s.station_of_class.push_back(i);
    while (s.station_of_class.size() < k) {
      s.station_of_class.push_back(
          static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(d) - 1)));
    }
    shuffle(s.station_of_class);
    s.priority.resize(k);
    std::iota(s.priority.begin(), s.priority.end(), std::size_t{1});
    shuffle(s.priority);
    for (std::size_t i = 0; i < k; ++i) {
      s.service_means.push_back(mean());
      s.arrival_rates.push_back(coin(50) ? positive() : Rational(0));
    }
    s.routing = RatMatrix(k, k);
    if (coin(30)) {
      // feed-forward chain with unit probabilities
      for (std::size_t i = 0; i + 1 < k; ++i) s.routing(i, i + 1) = 1;
    } else {
      const Rational cap(1, static_cast<std::int64_t>(4 * k + 1));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (coin(35)) s.routing(i, j) = cap * Rational(integer(1, 4));
    }
    return s;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace reflecto::testing
