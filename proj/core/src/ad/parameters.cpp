// SPDX-License-Identifier: Apache-2.0

#include "gig/ad/parameters.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gig/error.hpp"

namespace gig::ad {

Tensor ParameterSet::add(std::string name, Shape shape, std::vector<double> values) {
  for (const auto& [n, t] : entries_) {
    if (n == name) throw ContractViolation("duplicate parameter name '" + name + "'");
  }
  Tensor t = Tensor::from(shape, std::move(values), /*requires_grad=*/true);
  entries_.emplace_back(std::move(name), t);
  return t;
}

Tensor ParameterSet::glorot(std::string name, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::vector<double> v(fan_in * fan_out);
  for (double& e : v) e = rng.uniform(-limit, limit);
  return add(std::move(name), Shape{fan_in, fan_out}, std::move(v));
}

Tensor ParameterSet::zeros(std::string name, Shape shape) { return constant(std::move(name), shape, 0.0); }

Tensor ParameterSet::constant(std::string name, Shape shape, double value) {
  return add(std::move(name), shape, std::vector<double>(shape.size(), value));
}

std::vector<Tensor> ParameterSet::tensors() const {
  std::vector<Tensor> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

Tensor ParameterSet::find(std::string_view name) const {
  for (const auto& [n, t] : entries_) {
    if (n == name) return t;
  }
  throw ContractViolation("no parameter named '" + std::string(name) + "'");
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.second.size();
  return n;
}

void ParameterSet::zero_grad() {
  for (auto& e : entries_) e.second.zero_grad();
}

std::vector<NamedArray> ParameterSet::snapshot() const {
  std::vector<NamedArray> out;
  for (const auto& [name, t] : entries_) {
    out.push_back(NamedArray{name, {t.rows(), t.cols()}, {t.values().begin(), t.values().end()}});
  }
  return out;
}

void ParameterSet::restore(std::span<const NamedArray> arrays) {
  if (arrays.size() != entries_.size()) {
    throw FormatError("checkpoint holds " + std::to_string(arrays.size()) + " tensors, model has " +
                      std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    auto& [name, t] = entries_[i];
    const NamedArray& a = arrays[i];
    if (a.name != name || a.shape.size() != 2 || a.shape[0] != t.rows() || a.shape[1] != t.cols()) {
      throw FormatError("checkpoint tensor '" + a.name + "' does not match parameter '" + name +
                        "' of shape " + t.shape().str());
    }
    std::copy(a.data.begin(), a.data.end(), t.mutable_values().begin());
  }
}

std::string ParameterSet::norm_report() const {
  std::ostringstream ss;
  for (const auto& [name, t] : entries_) {
    double s = 0.0;
    for (double v : t.values()) s += v * v;
    ss << name << "=" << std::sqrt(s) << "\n";
  }
  return ss.str();
}

void save_checkpoint(const std::filesystem::path& path, const ParameterSet& params) {
  const auto arrays = params.snapshot();
  write_container(path, arrays);
  nlohmann::json manifest;
  manifest["format"] = std::string(kContainerMagic);
  manifest["parameters"] = nlohmann::json::array();
  for (const auto& a : arrays) {
    manifest["parameters"].push_back({{"name", a.name}, {"shape", a.shape}});
  }
  std::filesystem::path json_path = path;
  json_path += ".json";
  write_file_atomically(json_path, manifest.dump(2) + "\n");
}

void load_checkpoint(const std::filesystem::path& path, ParameterSet& params) {
  const auto arrays = read_container(path);
  params.restore(arrays);
}

}  // namespace gig::ad
