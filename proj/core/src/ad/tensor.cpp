// SPDX-License-Identifier: Apache-2.0

#include "gig/ad/tensor.hpp"

#include <algorithm>

#include "gig/error.hpp"

namespace gig::ad {

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return filled(shape, 0.0, requires_grad); }

Tensor Tensor::filled(Shape shape, double value, bool requires_grad) {
  return from(shape, std::vector<double>(shape.size(), value), requires_grad);
}

Tensor Tensor::from(Shape shape, std::vector<double> values, bool requires_grad) {
  if (values.size() != shape.size()) {
    throw ContractViolation("tensor buffer of length " + std::to_string(values.size()) +
                            " does not fit shape " + shape.str());
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = shape;
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::from(const Matrix& m, bool requires_grad) {
  return from(Shape{m.rows(), m.cols()}, m.storage(), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from(Shape{1, 1}, {value}, requires_grad);
}

double Tensor::item() const {
  if (size() != 1) throw ContractViolation("item() on tensor of shape " + shape().str());
  return node_->value[0];
}

std::vector<double> Tensor::grad() const {
  if (node_->grad.empty()) return std::vector<double>(node_->value.size(), 0.0);
  return node_->grad;
}

void Tensor::zero_grad() { std::fill(node_->grad.begin(), node_->grad.end(), 0.0); }

Matrix Tensor::to_matrix() const { return Matrix(rows(), cols(), node_->value); }

}  // namespace gig::ad
