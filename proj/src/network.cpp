#include "reflecto/network.hpp"

#include <algorithm>
#include <numeric>

#include "reflecto/errors.hpp"

namespace reflecto {

std::vector<std::size_t> NetworkSpec::classes_at(std::size_t station) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < station_of_class.size(); ++k) {
    if (station_of_class[k] == station) out.push_back(k);
  }
  return out;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.location + ": " + issue.message;
  }
  return out;
}

ValidationReport validate_spec(const NetworkSpec& spec) {
  ValidationReport report;
  const auto issue = [&](std::string where, std::string what) {
    report.issues.push_back({std::move(where), std::move(what)});
  };
  const std::size_t K = spec.classes;
  const std::size_t d = spec.stations;
  if (K == 0) issue("classes", "must be at least 1");
  if (d == 0) issue("stations", "must be at least 1");
  if (d > K) issue("stations", "more stations than classes");

  bool shapes_ok = true;
  const auto check_len = [&](std::size_t len, const char* what) {
    if (len != K) {
      issue(what, "has length " + std::to_string(len) + ", expected " +
                      std::to_string(K));
      shapes_ok = false;
    }
  };
  check_len(spec.station_of_class.size(), "station_of_class");
  check_len(spec.priority.size(), "priority");
  check_len(spec.service_means.size(), "service_means");
  check_len(spec.arrival_rates.size(), "arrival_rates");
  if (spec.routing.rows() != K || spec.routing.cols() != K) {
    issue("routing", "must be " + std::to_string(K) + "x" + std::to_string(K));
    shapes_ok = false;
  }
  if (!shapes_ok || K == 0) return report;

  std::vector<bool> station_used(d, false);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t s = spec.station_of_class[k];
    if (s >= d) {
      issue("station_of_class[" + std::to_string(k + 1) + "]",
            "station " + std::to_string(s + 1) + " out of range");
    } else {
      station_used[s] = true;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!station_used[i]) {
      issue("station " + std::to_string(i + 1), "serves no class");
    }
  }

  std::vector<bool> level_seen(K + 1, false);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t p = spec.priority[k];
    if (p < 1 || p > K) {
      issue("priority[" + std::to_string(k + 1) + "]",
            "level " + std::to_string(p) + " outside 1.." + std::to_string(K));
    } else if (level_seen[p]) {
      issue("priority[" + std::to_string(k + 1) + "]",
            "level " + std::to_string(p) + " used twice");
    } else {
      level_seen[p] = true;
    }
  }

  for (std::size_t k = 0; k < K; ++k) {
    if (!spec.service_means[k].is_positive()) {
      issue("service_means[" + std::to_string(k + 1) + "]", "must be positive");
    }
    if (spec.arrival_rates[k].is_negative()) {
      issue("arrival_rates[" + std::to_string(k + 1) + "]", "must be nonnegative");
    }
  }

  bool routing_ok = true;
  for (std::size_t k = 0; k < K; ++k) {
    Rational row_sum;
    for (std::size_t l = 0; l < K; ++l) {
      if (spec.routing(k, l).is_negative()) {
        issue("routing[" + std::to_string(k + 1) + "][" + std::to_string(l + 1) + "]",
              "negative probability");
        routing_ok = false;
      }
      row_sum += spec.routing(k, l);
    }
    if (row_sum > Rational(1)) {
      issue("routing row " + std::to_string(k + 1),
            "sums to " + row_sum.to_string() + " > 1");
      routing_ok = false;
    }
  }
  if (routing_ok) {
    const RatMatrix i_minus_pt = RatMatrix::identity(K) - spec.routing.transpose();
    if (mat_det(i_minus_pt).is_zero()) {
      issue("routing", "I - P is singular (some customers never leave)");
    } else {
      const RatMatrix w = mat_inv(i_minus_pt);
      for (std::size_t k = 0; k < K && routing_ok; ++k) {
        for (std::size_t l = 0; l < K; ++l) {
          if (w(k, l).is_negative()) {
            issue("routing", "(I - P')^{-1} has a negative entry");
            routing_ok = false;
            break;
          }
        }
      }
    }
  }
  return report;
}

void require_valid(const NetworkSpec& spec) {
  const ValidationReport report = validate_spec(spec);
  if (!report.ok()) throw InvalidInput("invalid network: " + report.summary());
}

PrioritySets priority_sets(const NetworkSpec& spec) {
  const std::size_t K = spec.classes;
  PrioritySets sets;
  sets.h.resize(K);
  sets.k_plus.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t other : spec.classes_at(spec.station_of_class[k])) {
      if (spec.priority[other] <= spec.priority[k]) sets.h[k].push_back(other);
      if (spec.priority[other] < spec.priority[k] &&
          (!sets.k_plus[k] || spec.priority[other] > spec.priority[*sets.k_plus[k]])) {
        sets.k_plus[k] = other;
      }
    }
  }
  for (std::size_t i = 0; i < spec.stations; ++i) {
    const auto members = spec.classes_at(i);
    sets.lowest.push_back(*std::max_element(
        members.begin(), members.end(),
        [&](std::size_t a, std::size_t b) { return spec.priority[a] < spec.priority[b]; }));
  }
  sets.low_classes = sets.lowest;
  std::sort(sets.low_classes.begin(), sets.low_classes.end());
  for (std::size_t k = 0; k < K; ++k) {
    if (!std::binary_search(sets.low_classes.begin(), sets.low_classes.end(), k)) {
      sets.high_classes.push_back(k);
    }
  }
  return sets;
}

bool Relabeling::is_identity() const {
  for (std::size_t i = 0; i < original_station.size(); ++i) {
    if (original_station[i] != i) return false;
  }
  return true;
}

Relabeling relabel_stations(const NetworkSpec& spec) {
  const PrioritySets sets = priority_sets(spec);
  Relabeling out;
  out.original_station.resize(spec.stations);
  std::iota(out.original_station.begin(), out.original_station.end(), 0);
  std::sort(out.original_station.begin(), out.original_station.end(),
            [&](std::size_t a, std::size_t b) { return sets.lowest[a] < sets.lowest[b]; });
  std::vector<std::size_t> new_index(spec.stations);
  for (std::size_t i = 0; i < spec.stations; ++i) new_index[out.original_station[i]] = i;
  out.spec = spec;
  for (auto& s : out.spec.station_of_class) s = new_index[s];
  return out;
}

RatMatrix build_W(const NetworkSpec& spec) {
  return mat_inv(RatMatrix::identity(spec.classes) - spec.routing.transpose());
}

RatMatrix build_B(const NetworkSpec& spec) {
  const PrioritySets sets = priority_sets(spec);
  RatMatrix b(spec.classes, spec.classes);
  for (std::size_t k = 0; k < spec.classes; ++k) {
    if (sets.k_plus[k]) b(k, *sets.k_plus[k]) = 1;
  }
  return b;
}

RatMatrix build_F(const NetworkSpec& spec) {
  const PrioritySets sets = priority_sets(spec);
  RatMatrix f(spec.classes, spec.classes);
  for (std::size_t k = 0; k < spec.classes; ++k) {
    for (std::size_t other : sets.h[k]) f(k, other) = 1;
  }
  return f;
}

RatMatrix build_A(const NetworkSpec& spec) {
  const std::size_t K = spec.classes;
  RatVector inv_means;
  for (const auto& m : spec.service_means) inv_means.push_back(Rational(1) / m);
  return (RatMatrix::identity(K) - spec.routing.transpose()) *
         RatMatrix::diagonal(inv_means) * (RatMatrix::identity(K) - build_B(spec));
}

RatMatrix build_A_inverse(const NetworkSpec& spec) {
  const std::size_t K = spec.classes;
  const RatMatrix w = build_W(spec);
  const PrioritySets sets = priority_sets(spec);
  RatMatrix out(K, K);
  for (std::size_t row = 0; row < K; ++row) {
    for (std::size_t col = 0; col < K; ++col) {
      for (std::size_t k : sets.h[row]) out(row, col) += spec.service_means[k] * w(k, col);
    }
  }
  return out;
}

RatMatrix build_Q(const NetworkSpec& spec) {
  const RatMatrix w = build_W(spec);
  const PrioritySets sets = priority_sets(spec);
  const std::size_t d = spec.stations;
  RatMatrix q(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto members = spec.classes_at(i);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k : members) q(i, j) += spec.service_means[k] * w(k, sets.lowest[j]);
    }
  }
  return q;
}

std::optional<RatMatrix> schur_reflection_matrix(const NetworkSpec& spec) {
  const RatMatrix a = build_A(spec);
  const PrioritySets sets = priority_sets(spec);
  const auto& low = sets.lowest;  // station order, so R_ij = R~_{l(i), l(j)}
  const auto& high = sets.high_classes;
  RatMatrix r = submatrix(a, low, low);
  if (high.empty()) return r;
  const RatMatrix a_h = submatrix(a, high, high);
  if (mat_det(a_h).is_zero()) return std::nullopt;
  return r - submatrix(a, low, high) * mat_inv(a_h) * submatrix(a, high, low);
}

std::optional<RatMatrix> reflection_matrix(const NetworkSpec& spec) {
  const RatMatrix q = build_Q(spec);
  const std::optional<RatMatrix> schur = schur_reflection_matrix(spec);
  if (mat_det(q).is_zero()) {
    if (schur) {
      throw InternalInconsistency("Q is singular but the high-priority block of A is not");
    }
    return std::nullopt;
  }
  RatMatrix r = mat_inv(q);
  if (!schur) {
    throw InternalInconsistency("Q is invertible but the high-priority block of A is not");
  }
  if (*schur != r) {
    throw InternalInconsistency("Schur-complement and Q-inverse reflection matrices differ");
  }
  return r;
}

DerivedMatrices derive(const NetworkSpec& spec) {
  require_valid(spec);
  Relabeling relabeled = relabel_stations(spec);
  const NetworkSpec& s = relabeled.spec;
  const std::size_t K = s.classes;

  DerivedMatrices out;
  out.original_station = std::move(relabeled.original_station);
  out.sets = priority_sets(s);
  out.w = build_W(s);
  out.b = build_B(s);
  out.f = build_F(s);
  out.a = build_A(s);
  out.a_inv = build_A_inverse(s);
  out.q = build_Q(s);
  out.r = reflection_matrix(s);

  const RatMatrix id = RatMatrix::identity(K);
  if (out.f * (id - out.b) != id) {
    throw InternalInconsistency("F (I - B) is not the identity");
  }
  if (out.a * out.a_inv != id) {
    throw InternalInconsistency("closed-form inverse of A is wrong");
  }
  for (std::size_t i = 0; i < s.stations; ++i) {
    for (std::size_t j = 0; j < s.stations; ++j) {
      if (out.a_inv(out.sets.lowest[i], out.sets.lowest[j]) != out.q(i, j)) {
        throw InternalInconsistency("Q disagrees with the low-priority block of A^{-1}");
      }
    }
  }
  if (out.r && *out.r * out.q != RatMatrix::identity(s.stations)) {
    throw InternalInconsistency("R Q is not the identity");
  }
  return out;
}

TrafficReport traffic(const NetworkSpec& spec) {
  TrafficReport out;
  out.alpha = build_W(spec) * std::span<const Rational>(spec.arrival_rates);
  out.heavy_traffic = true;
  for (std::size_t i = 0; i < spec.stations; ++i) {
    Rational rho;
    for (std::size_t k : spec.classes_at(i)) rho += out.alpha[k] * spec.service_means[k];
    if (rho != Rational(1)) out.heavy_traffic = false;
    out.rho.push_back(std::move(rho));
  }
  return out;
}

NetworkSpec reentrant_spec(const std::vector<std::size_t>& route,
                           const RatVector& means, const Rational& lambda1,
                           Discipline discipline) {
  const std::size_t K = route.size();
  if (K == 0) throw InvalidInput("route must visit at least one station");
  if (means.size() != K) {
    throw InvalidInput("route has " + std::to_string(K) + " visits but " +
                       std::to_string(means.size()) + " service means were given");
  }
  if (lambda1.is_negative()) throw InvalidInput("arrival rate must be nonnegative");
  const std::size_t d = *std::max_element(route.begin(), route.end());
  std::vector<bool> seen(d + 1, false);
  for (std::size_t k = 0; k < K; ++k) {
    if (route[k] == 0) throw InvalidInput("station numbers start at 1");
    if (!means[k].is_positive()) {
      throw InvalidInput("service mean of visit " + std::to_string(k + 1) + " must be positive");
    }
    seen[route[k]] = true;
  }
  for (std::size_t i = 1; i <= d; ++i) {
    if (!seen[i]) {
      throw InvalidInput("route skips station " + std::to_string(i));
    }
  }

  NetworkSpec spec;
  spec.classes = K;
  spec.stations = d;
  spec.routing = RatMatrix(K, K);
  spec.arrival_rates.assign(K, Rational(0));
  spec.arrival_rates[0] = lambda1;
  spec.service_means = means;
  for (std::size_t k = 0; k < K; ++k) {
    spec.station_of_class.push_back(route[k] - 1);
    spec.priority.push_back(discipline == Discipline::kFBFS ? k + 1 : K - k);
    if (k + 1 < K) spec.routing(k, k + 1) = 1;
  }
  return spec;
}

}  // namespace reflecto
