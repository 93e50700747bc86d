#include "sce/probinfo.hpp"

#include <algorithm>
#include <cmath>

#include "sce/error.hpp"

namespace sce {

namespace {

double entropy_of_table(const std::map<std::vector<std::uint32_t>, Rat>& q) {
  double h = 0.0;
  for (const auto& [outcome, w] : q) {
    if (w == 0) continue;
    double p = rat_double(w);
    h -= p * std::log2(p);
  }
  return h;
}

double clamp_mi(double v) {
  if (v < -1e-6) throw EvalError("mutual information strongly negative");
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

Pmf::Pmf(std::vector<Rat> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("pmf needs a nonempty support");
  Rat sum = 0;
  for (const Rat& w : weights_) {
    if (w < 0) throw InputError("pmf weight negative");
    sum += w;
  }
  if (sum != 1) throw InputError("pmf weights must sum to exactly 1");
}

Pmf Pmf::uniform(std::uint32_t support) {
  if (support == 0) throw InputError("pmf needs a nonempty support");
  std::vector<Rat> w(support, Rat(1, support));
  return Pmf(std::move(w));
}

Pmf Pmf::point(std::uint32_t support, std::uint32_t at) {
  if (at >= support) throw InputError("point mass outside support");
  std::vector<Rat> w(support, Rat(0));
  w[at] = 1;
  return Pmf(std::move(w));
}

Rat total_variation(const Pmf& p, const Pmf& q) {
  if (p.support_size() != q.support_size())
    throw InputError("total variation needs equal supports");
  Rat acc = 0;
  for (std::uint32_t i = 0; i < p.support_size(); ++i)
    acc += abs(p.weight(i) - q.weight(i));
  return acc / 2;
}

double binary_entropy(double eps) {
  if (eps < 0.0 || eps > 1.0) throw InputError("binary entropy needs [0,1]");
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

JointPmf::JointPmf(std::vector<std::string> ids,
                   std::vector<std::uint32_t> sizes)
    : ids_(std::move(ids)), sizes_(std::move(sizes)) {
  if (ids_.size() != sizes_.size())
    throw InputError("joint pmf ids/sizes mismatch");
  for (size_t i = 0; i < ids_.size(); ++i)
    for (size_t j = i + 1; j < ids_.size(); ++j)
      if (ids_[i] == ids_[j])
        throw InputError("duplicate variable id '" + ids_[i] + "'");
}

void JointPmf::add(const std::vector<std::uint32_t>& outcome, const Rat& w) {
  if (outcome.size() != ids_.size())
    throw InputError("joint outcome arity mismatch");
  for (size_t i = 0; i < outcome.size(); ++i)
    if (outcome[i] >= sizes_[i]) throw InputError("joint outcome out of range");
  if (w == 0) return;
  weights_[outcome] += w;
}

void JointPmf::validate() const {
  Rat sum = 0;
  for (const auto& [outcome, w] : weights_) {
    if (w < 0) throw InputError("joint weight negative");
    sum += w;
  }
  if (sum != 1) throw InputError("joint weights must sum to exactly 1");
}

std::uint32_t JointPmf::alphabet_size(const std::string& id) const {
  return sizes_[index_of(id)];
}

size_t JointPmf::index_of(const std::string& id) const {
  for (size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  throw InputError("unknown variable id '" + id + "'");
}

std::vector<size_t> JointPmf::indices_of(
    const std::vector<std::string>& vars) const {
  std::vector<size_t> idx;
  idx.reserve(vars.size());
  for (const auto& v : vars) idx.push_back(index_of(v));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

std::map<std::vector<std::uint32_t>, Rat> JointPmf::marginal(
    const std::vector<std::string>& vars) const {
  auto idx = indices_of(vars);
  std::map<std::vector<std::uint32_t>, Rat> out;
  std::vector<std::uint32_t> key(idx.size());
  for (const auto& [outcome, w] : weights_) {
    for (size_t i = 0; i < idx.size(); ++i) key[i] = outcome[idx[i]];
    out[key] += w;
  }
  return out;
}

Pmf JointPmf::marginal_pmf(const std::string& var) const {
  size_t i = index_of(var);
  std::vector<Rat> w(sizes_[i], Rat(0));
  for (const auto& [outcome, mass] : weights_) w[outcome[i]] += mass;
  return Pmf(std::move(w));
}

Rat JointPmf::event_probability(const Assignment& cond) const {
  std::vector<std::pair<size_t, std::uint32_t>> pins;
  pins.reserve(cond.size());
  for (const auto& [id, val] : cond) {
    size_t i = index_of(id);
    if (val >= sizes_[i]) throw InputError("conditioning value out of range");
    pins.emplace_back(i, val);
  }
  Rat mass = 0;
  for (const auto& [outcome, w] : weights_) {
    bool hit = true;
    for (const auto& [i, val] : pins)
      if (outcome[i] != val) {
        hit = false;
        break;
      }
    if (hit) mass += w;
  }
  return mass;
}

JointPmf JointPmf::condition(const Assignment& cond) const {
  Rat mass = event_probability(cond);
  if (mass == 0) throw InputError("conditioning on a null event");
  std::vector<std::pair<size_t, std::uint32_t>> pins;
  for (const auto& [id, val] : cond) pins.emplace_back(index_of(id), val);
  JointPmf out(ids_, sizes_);
  for (const auto& [outcome, w] : weights_) {
    bool hit = true;
    for (const auto& [i, val] : pins)
      if (outcome[i] != val) {
        hit = false;
        break;
      }
    if (hit) out.add(outcome, w / mass);
  }
  return out;
}

double JointPmf::entropy(const std::vector<std::string>& vars) const {
  return entropy_of_table(marginal(vars));
}

double JointPmf::mutual_information(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) const {
  std::vector<std::string> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return clamp_mi(entropy(a) + entropy(b) - entropy(ab));
}

double JointPmf::conditional_mutual_information(
    const std::vector<std::string>& a, const std::vector<std::string>& b,
    const std::vector<std::string>& c) const {
  std::vector<std::string> ac = a, bc = b, abc = a;
  ac.insert(ac.end(), c.begin(), c.end());
  bc.insert(bc.end(), c.begin(), c.end());
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  return clamp_mi(entropy(ac) + entropy(bc) - entropy(abc) - entropy(c));
}

double JointPmf::conditional_mi_given_event(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b,
                                            const Assignment& cond) const {
  return condition(cond).mutual_information(a, b);
}

}  // namespace sce
