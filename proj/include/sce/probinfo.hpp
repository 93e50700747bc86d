#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sce/rational.hpp"

namespace sce {

// Exact probability mass function over a finite alphabet {0, ..., n-1}.
// Weights are nonnegative rationals that sum to exactly 1.
class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::vector<Rat> weights);

  static Pmf uniform(std::uint32_t support);
  static Pmf point(std::uint32_t support, std::uint32_t at);

  std::uint32_t support_size() const {
    return static_cast<std::uint32_t>(weights_.size());
  }
  const Rat& weight(std::uint32_t outcome) const { return weights_.at(outcome); }
  const std::vector<Rat>& weights() const { return weights_; }

  bool operator==(const Pmf& other) const = default;

 private:
  std::vector<Rat> weights_;
};

// delta(p, q) = (1/2) * sum_i |p_i - q_i|, exact.
Rat total_variation(const Pmf& p, const Pmf& q);

// H_b(eps) in bits, endpoints mapped to 0.
double binary_entropy(double eps);

using Assignment = std::vector<std::pair<std::string, std::uint32_t>>;

// Exact joint distribution over named finite variables. Immutable once
// built; every query is pure.
class JointPmf {
 public:
  JointPmf(std::vector<std::string> ids, std::vector<std::uint32_t> sizes);

  // Accumulates weight onto an outcome during construction.
  void add(const std::vector<std::uint32_t>& outcome, const Rat& w);
  // Checks nonnegativity and that the total mass is exactly 1.
  void validate() const;

  const std::vector<std::string>& variable_ids() const { return ids_; }
  const std::vector<std::uint32_t>& alphabet_sizes() const { return sizes_; }
  std::uint32_t alphabet_size(const std::string& id) const;
  const std::map<std::vector<std::uint32_t>, Rat>& weights() const {
    return weights_;
  }

  // Exact marginal table over the given variables (deduplicated, in joint
  // variable order).
  std::map<std::vector<std::uint32_t>, Rat> marginal(
      const std::vector<std::string>& vars) const;
  Pmf marginal_pmf(const std::string& var) const;

  Rat event_probability(const Assignment& cond) const;
  // Renormalized joint given the event; throws on a null event.
  JointPmf condition(const Assignment& cond) const;

  double entropy(const std::vector<std::string>& vars) const;
  double mutual_information(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) const;
  double conditional_mutual_information(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b,
                                        const std::vector<std::string>& c) const;
  double conditional_mi_given_event(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b,
                                    const Assignment& cond) const;

 private:
  size_t index_of(const std::string& id) const;
  std::vector<size_t> indices_of(const std::vector<std::string>& vars) const;

  std::vector<std::string> ids_;
  std::vector<std::uint32_t> sizes_;
  std::map<std::vector<std::uint32_t>, Rat> weights_;
};

}  // namespace sce
