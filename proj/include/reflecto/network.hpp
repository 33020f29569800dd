#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reflecto/matrix.hpp"

namespace reflecto {

/// Multiclass network under a static buffer priority discipline. Classes and
/// stations are 0-based here; files and reports use 1-based numbering.
struct NetworkSpec {
  std::size_t classes = 0;
  std::size_t stations = 0;
  std::vector<std::size_t> station_of_class;  // size K, values < stations
  std::vector<std::size_t> priority;          // bijection onto 1..K; smaller = served first
  RatVector service_means;                    // m, positive, time units
  RatVector arrival_rates;                    // lambda, customers per time unit
  RatMatrix routing;                          // P, K x K

  /// Classes served at station i, ascending.
  std::vector<std::size_t> classes_at(std::size_t station) const;
};

struct ValidationIssue {
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_spec(const NetworkSpec& spec);
/// Throws InvalidInput carrying the first issue when validation fails.
void require_valid(const NetworkSpec& spec);

struct PrioritySets {
  std::vector<std::vector<std::size_t>> h;         // H(k), ascending class ids
  std::vector<std::optional<std::size_t>> k_plus;  // next higher-priority class
  std::vector<std::size_t> lowest;                 // l(i) per station
  std::vector<std::size_t> low_classes;            // L, ascending
  std::vector<std::size_t> high_classes;           // H, ascending
};

PrioritySets priority_sets(const NetworkSpec& spec);

struct Relabeling {
  NetworkSpec spec;
  // original station index of each relabeled station
  std::vector<std::size_t> original_station;
  bool is_identity() const;
};

/// Renumbers stations so that their lowest-priority classes increase.
Relabeling relabel_stations(const NetworkSpec& spec);

RatMatrix build_W(const NetworkSpec& spec);
RatMatrix build_B(const NetworkSpec& spec);
RatMatrix build_F(const NetworkSpec& spec);
RatMatrix build_A(const NetworkSpec& spec);
/// Closed form sum_k 1(k in H(k')) m_k w_{k,k''}; no matrix inversion.
RatMatrix build_A_inverse(const NetworkSpec& spec);
/// Station-indexed Q_ij = sum_{k at station i} m_k w_{k, l(j)}, in the
/// spec's own station order.
RatMatrix build_Q(const NetworkSpec& spec);

/// Schur complement A_L - A_LH A_H^{-1} A_HL read back onto stations.
/// Returns nullopt when A_H is singular.
std::optional<RatMatrix> schur_reflection_matrix(const NetworkSpec& spec);

/// R = Q^{-1}, or nullopt when Q is singular. Cross-checks the Schur path
/// and throws InternalInconsistency on any disagreement.
std::optional<RatMatrix> reflection_matrix(const NetworkSpec& spec);

struct DerivedMatrices {
  std::vector<std::size_t> original_station;
  PrioritySets sets;  // of the relabeled spec
  RatMatrix w, b, f, a, a_inv, q;
  std::optional<RatMatrix> r;
};

/// Full derivation on the relabeled spec, with every identity asserted.
DerivedMatrices derive(const NetworkSpec& spec);

struct TrafficReport {
  RatVector alpha;  // effective arrival rates, W lambda
  RatVector rho;    // per-station utilization
  bool heavy_traffic = false;
};

TrafficReport traffic(const NetworkSpec& spec);

enum class Discipline { kFBFS, kLBFS };

/// Single-route network: class k is the k-th visit, routed to class k+1.
/// `route` holds 1-based station numbers and must visit every station
/// 1..max(route).
NetworkSpec reentrant_spec(const std::vector<std::size_t>& route,
                           const RatVector& means, const Rational& lambda1,
                           Discipline discipline);

}  // namespace reflecto
