// SPDX-License-Identifier: Apache-2.0

#include "gig/ad/tape.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gig/error.hpp"

namespace gig::ad {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;

std::atomic<std::uint64_t> g_temperature_clamps{0};

[[noreturn]] void shape_error(const char* op, Shape a, Shape b) {
  throw ContractViolation(std::string(op) + ": incompatible shapes " + a.str() + " and " +
                          b.str());
}

void check_segments(const char* op, std::span<const std::size_t> segment, std::size_t n,
                    std::size_t k) {
  if (segment.size() != n) {
    throw ContractViolation(std::string(op) + ": " + std::to_string(segment.size()) +
                            " segment ids for " + std::to_string(n) + " rows");
  }
  for (std::size_t s : segment) {
    if (s >= k) {
      throw ContractViolation(std::string(op) + ": segment id " + std::to_string(s) +
                              " out of range " + std::to_string(k));
    }
  }
}

double stable_sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(sigmoid(z)) without overflow.
double log_sigmoid_value(double z) {
  if (z >= 0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

}  // namespace

std::uint64_t shifted_sigmoid_clamp_count() noexcept { return g_temperature_clamps.load(); }

Tensor Tape::emit(Shape shape, std::vector<double> value,
                  std::initializer_list<const Tensor*> inputs, Backward backward) {
  auto node = std::make_shared<detail::Node>();
  node->shape = shape;
  node->value = std::move(value);
  bool needs = false;
  if (recording()) {
    for (const Tensor* t : inputs) needs = needs || t->requires_grad();
  }
  node->requires_grad = needs;
  if (needs) entries_.push_back(Entry{node, std::move(backward)});
  return Tensor(std::move(node));
}

Tensor Tape::emit(Shape shape, std::vector<double> value, std::span<const Tensor> inputs,
                  Backward backward) {
  auto node = std::make_shared<detail::Node>();
  node->shape = shape;
  node->value = std::move(value);
  bool needs = false;
  if (recording()) {
    for (const Tensor& t : inputs) needs = needs || t.requires_grad();
  }
  node->requires_grad = needs;
  if (needs) entries_.push_back(Entry{node, std::move(backward)});
  return Tensor(std::move(node));
}

Tensor Tape::matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) shape_error("matmul", a.shape(), b.shape());
  const Shape out{a.rows(), b.cols()};
  std::vector<double> v(out.size());
  Map(v.data(), out.rows, out.cols).noalias() =
      ConstMap(a.values().data(), a.rows(), a.cols()) *
      ConstMap(b.values().data(), b.rows(), b.cols());
  auto an = a.shared();
  auto bn = b.shared();
  return emit(out, std::move(v), {&a, &b}, [an, bn](detail::Node& o) {
    ConstMap g(o.grad.data(), o.shape.rows, o.shape.cols);
    if (an->requires_grad) {
      Map(an->grad_buffer().data(), an->shape.rows, an->shape.cols).noalias() +=
          g * ConstMap(bn->value.data(), bn->shape.rows, bn->shape.cols).transpose();
    }
    if (bn->requires_grad) {
      Map(bn->grad_buffer().data(), bn->shape.rows, bn->shape.cols).noalias() +=
          ConstMap(an->value.data(), an->shape.rows, an->shape.cols).transpose() * g;
    }
  });
}

Tensor Tape::add(const Tensor& a, const Tensor& b) {
  const bool same = a.shape() == b.shape();
  const bool row_bcast = b.rows() == 1 && b.cols() == a.cols();
  if (!same && !row_bcast) shape_error("add", a.shape(), b.shape());
  const std::size_t cols = a.cols();
  std::vector<double> v(a.values().begin(), a.values().end());
  const auto bv = b.values();
  if (same) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += bv[i];
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += bv[i % cols];
  }
  auto an = a.shared();
  auto bn = b.shared();
  return emit(a.shape(), std::move(v), {&a, &b}, [an, bn, same, cols](detail::Node& o) {
    if (an->requires_grad) {
      auto& ga = an->grad_buffer();
      for (std::size_t i = 0; i < o.grad.size(); ++i) ga[i] += o.grad[i];
    }
    if (bn->requires_grad) {
      auto& gb = bn->grad_buffer();
      if (same) {
        for (std::size_t i = 0; i < o.grad.size(); ++i) gb[i] += o.grad[i];
      } else {
        for (std::size_t i = 0; i < o.grad.size(); ++i) gb[i % cols] += o.grad[i];
      }
    }
  });
}

Tensor Tape::sub(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_error("sub", a.shape(), b.shape());
  std::vector<double> v(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] - bv[i];
  auto an = a.shared();
  auto bn = b.shared();
  return emit(a.shape(), std::move(v), {&a, &b}, [an, bn](detail::Node& o) {
    if (an->requires_grad) {
      auto& ga = an->grad_buffer();
      for (std::size_t i = 0; i < o.grad.size(); ++i) ga[i] += o.grad[i];
    }
    if (bn->requires_grad) {
      auto& gb = bn->grad_buffer();
      for (std::size_t i = 0; i < o.grad.size(); ++i) gb[i] -= o.grad[i];
    }
  });
}

Tensor Tape::mul(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_error("mul", a.shape(), b.shape());
  std::vector<double> v(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] * bv[i];
  auto an = a.shared();
  auto bn = b.shared();
  return emit(a.shape(), std::move(v), {&a, &b}, [an, bn](detail::Node& o) {
    if (an->requires_grad) {
      auto& ga = an->grad_buffer();
      for (std::size_t i = 0; i < o.grad.size(); ++i) ga[i] += o.grad[i] * bn->value[i];
    }
    if (bn->requires_grad) {
      auto& gb = bn->grad_buffer();
      for (std::size_t i = 0; i < o.grad.size(); ++i) gb[i] += o.grad[i] * an->value[i];
    }
  });
}

Tensor Tape::mul_rows(const Tensor& x, const Tensor& w) {
  if (w.rows() != x.rows() || w.cols() != 1) shape_error("mul_rows", x.shape(), w.shape());
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  std::vector<double> v(x.values().begin(), x.values().end());
  const auto wv = w.values();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) v[i * d + j] *= wv[i];
  }
  auto xn = x.shared();
  auto wn = w.shared();
  return emit(x.shape(), std::move(v), {&x, &w}, [xn, wn, n, d](detail::Node& o) {
    if (xn->requires_grad) {
      auto& gx = xn->grad_buffer();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) gx[i * d + j] += o.grad[i * d + j] * wn->value[i];
      }
    }
    if (wn->requires_grad) {
      auto& gw = wn->grad_buffer();
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += o.grad[i * d + j] * xn->value[i * d + j];
        gw[i] += acc;
      }
    }
  });
}

Tensor Tape::mul_scalar(const Tensor& x, double c) {
  std::vector<double> v(x.values().begin(), x.values().end());
  for (double& e : v) e *= c;
  auto xn = x.shared();
  return emit(x.shape(), std::move(v), {&x}, [xn, c](detail::Node& o) {
    auto& gx = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) gx[i] += c * o.grad[i];
  });
}

Tensor Tape::concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractViolation("concat_rows: no inputs");
  const std::size_t cols = parts[0].cols();
  std::size_t rows = 0;
  for (const Tensor& p : parts) {
    if (p.cols() != cols) shape_error("concat_rows", parts[0].shape(), p.shape());
    rows += p.rows();
  }
  std::vector<double> v;
  v.reserve(rows * cols);
  std::vector<std::shared_ptr<detail::Node>> nodes;
  for (const Tensor& p : parts) {
    v.insert(v.end(), p.values().begin(), p.values().end());
    nodes.push_back(p.shared());
  }
  return emit(Shape{rows, cols}, std::move(v), parts, [nodes](detail::Node& o) {
    std::size_t offset = 0;
    for (const auto& n : nodes) {
      if (n->requires_grad) {
        auto& g = n->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += o.grad[offset + i];
      }
      offset += n->value.size();
    }
  });
}

Tensor Tape::concat_cols(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractViolation("concat_cols: no inputs");
  const std::size_t rows = parts[0].rows();
  std::size_t cols = 0;
  for (const Tensor& p : parts) {
    if (p.rows() != rows) shape_error("concat_cols", parts[0].shape(), p.shape());
    cols += p.cols();
  }
  std::vector<double> v(rows * cols);
  std::vector<std::shared_ptr<detail::Node>> nodes;
  std::size_t offset = 0;
  for (const Tensor& p : parts) {
    const std::size_t pc = p.cols();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(p.values().begin() + r * pc, pc, v.begin() + r * cols + offset);
    }
    offset += pc;
    nodes.push_back(p.shared());
  }
  return emit(Shape{rows, cols}, std::move(v), parts, [nodes, rows, cols](detail::Node& o) {
    std::size_t off = 0;
    for (const auto& n : nodes) {
      const std::size_t pc = n->shape.cols;
      if (n->requires_grad) {
        auto& g = n->grad_buffer();
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < pc; ++c) g[r * pc + c] += o.grad[r * cols + off + c];
        }
      }
      off += pc;
    }
  });
}

Tensor Tape::slice_rows(const Tensor& x, std::size_t begin, std::size_t count) {
  if (begin + count > x.rows()) {
    throw ContractViolation("slice_rows: rows [" + std::to_string(begin) + ", " +
                            std::to_string(begin + count) + ") exceed " + x.shape().str());
  }
  const std::size_t d = x.cols();
  std::vector<double> v(x.values().begin() + begin * d, x.values().begin() + (begin + count) * d);
  auto xn = x.shared();
  return emit(Shape{count, d}, std::move(v), {&x}, [xn, begin, d](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) g[begin * d + i] += o.grad[i];
  });
}

Tensor Tape::gather_rows(const Tensor& x, std::span<const std::size_t> index) {
  const std::size_t d = x.cols();
  std::vector<double> v(index.size() * d);
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= x.rows()) {
      throw ContractViolation("gather_rows: index " + std::to_string(index[k]) +
                              " out of range for " + x.shape().str());
    }
    std::copy_n(x.values().begin() + index[k] * d, d, v.begin() + k * d);
  }
  auto xn = x.shared();
  std::vector<std::size_t> idx(index.begin(), index.end());
  return emit(Shape{index.size(), d}, std::move(v), {&x},
              [xn, idx = std::move(idx), d](detail::Node& o) {
                auto& g = xn->grad_buffer();
                for (std::size_t k = 0; k < idx.size(); ++k) {
                  for (std::size_t j = 0; j < d; ++j) g[idx[k] * d + j] += o.grad[k * d + j];
                }
              });
}

Tensor Tape::relu(const Tensor& x) { return leaky_relu(x, 0.0); }

Tensor Tape::leaky_relu(const Tensor& x, double slope) {
  std::vector<double> v(x.values().begin(), x.values().end());
  for (double& e : v) e = e > 0.0 ? e : slope * e;
  auto xn = x.shared();
  return emit(x.shape(), std::move(v), {&x}, [xn, slope](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      g[i] += xn->value[i] > 0.0 ? o.grad[i] : slope * o.grad[i];
    }
  });
}

Tensor Tape::sigmoid(const Tensor& x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = stable_sigmoid(x.values()[i]);
  auto xn = x.shared();
  return emit(x.shape(), std::move(v), {&x}, [xn](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      const double s = o.value[i];
      g[i] += o.grad[i] * s * (1.0 - s);
    }
  });
}

Tensor Tape::log_sigmoid(const Tensor& x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = log_sigmoid_value(x.values()[i]);
  auto xn = x.shared();
  return emit(x.shape(), std::move(v), {&x}, [xn](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      g[i] += o.grad[i] * (1.0 - stable_sigmoid(xn->value[i]));
    }
  });
}

Tensor Tape::shifted_sigmoid(const Tensor& x, const Tensor& a, const Tensor& b, const Tensor& t) {
  if (a.size() != 1 || b.size() != 1 || t.size() != 1) {
    throw ContractViolation("shifted_sigmoid: a, b and t must be 1x1");
  }
  const double av = a.item();
  const double bv = b.item();
  double tv = t.item();
  bool clamped = false;
  if (std::abs(tv) < kMinTemperature) {
    tv = tv < 0.0 ? -kMinTemperature : kMinTemperature;
    clamped = true;
    g_temperature_clamps.fetch_add(1);
  }
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = stable_sigmoid((av * x.values()[i] + bv) / tv);
  }
  auto xn = x.shared();
  auto an = a.shared();
  auto bn = b.shared();
  auto tn = t.shared();
  return emit(x.shape(), std::move(v), {&x, &a, &b, &t},
              [xn, an, bn, tn, av, bv, tv, clamped](detail::Node& o) {
                double ga = 0.0;
                double gb = 0.0;
                double gt = 0.0;
                auto* gx = xn->requires_grad ? &xn->grad_buffer() : nullptr;
                for (std::size_t i = 0; i < o.grad.size(); ++i) {
                  const double s = o.value[i];
                  // d sigma / d z, with z = (a x + b) / t
                  const double dz = o.grad[i] * s * (1.0 - s);
                  const double xi = xn->value[i];
                  if (gx) (*gx)[i] += dz * av / tv;
                  ga += dz * xi / tv;
                  gb += dz / tv;
                  gt -= dz * (av * xi + bv) / (tv * tv);
                }
                if (an->requires_grad) an->grad_buffer()[0] += ga;
                if (bn->requires_grad) bn->grad_buffer()[0] += gb;
                if (tn->requires_grad && !clamped) tn->grad_buffer()[0] += gt;
              });
}

Tensor Tape::segment_sum(const Tensor& x, std::span<const std::size_t> segment, std::size_t k) {
  check_segments("segment_sum", segment, x.rows(), k);
  const std::size_t d = x.cols();
  std::vector<double> v(k * d, 0.0);
  for (std::size_t i = 0; i < segment.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) v[segment[i] * d + j] += x.values()[i * d + j];
  }
  auto xn = x.shared();
  std::vector<std::size_t> seg(segment.begin(), segment.end());
  return emit(Shape{k, d}, std::move(v), {&x}, [xn, seg = std::move(seg), d](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < seg.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) g[i * d + j] += o.grad[seg[i] * d + j];
    }
  });
}

Tensor Tape::segment_mean(const Tensor& x, std::span<const std::size_t> segment, std::size_t k) {
  check_segments("segment_mean", segment, x.rows(), k);
  std::vector<double> count(k, 0.0);
  for (std::size_t s : segment) count[s] += 1.0;
  for (std::size_t s = 0; s < k; ++s) {
    if (count[s] == 0.0) {
      throw ContractViolation("segment_mean: segment " + std::to_string(s) + " is empty");
    }
  }
  const std::size_t d = x.cols();
  std::vector<double> v(k * d, 0.0);
  for (std::size_t i = 0; i < segment.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) v[segment[i] * d + j] += x.values()[i * d + j];
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < d; ++j) v[s * d + j] /= count[s];
  }
  auto xn = x.shared();
  std::vector<std::size_t> seg(segment.begin(), segment.end());
  return emit(Shape{k, d}, std::move(v), {&x},
              [xn, seg = std::move(seg), count = std::move(count), d](detail::Node& o) {
                auto& g = xn->grad_buffer();
                for (std::size_t i = 0; i < seg.size(); ++i) {
                  const double inv = 1.0 / count[seg[i]];
                  for (std::size_t j = 0; j < d; ++j) g[i * d + j] += o.grad[seg[i] * d + j] * inv;
                }
              });
}

Tensor Tape::segment_softmax(const Tensor& logits, std::span<const std::size_t> segment,
                             std::size_t k) {
  if (logits.cols() != 1) {
    throw ContractViolation("segment_softmax: logits must be n x 1, got " + logits.shape().str());
  }
  const std::size_t n = logits.rows();
  check_segments("segment_softmax", segment, n, k);
  const auto lv = logits.values();
  std::vector<double> mx(k, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) mx[segment[i]] = std::max(mx[segment[i]], lv[i]);
  std::vector<double> v(n);
  std::vector<double> denom(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::exp(lv[i] - mx[segment[i]]);
    denom[segment[i]] += v[i];
  }
  for (std::size_t i = 0; i < n; ++i) v[i] /= denom[segment[i]];
  auto ln = logits.shared();
  std::vector<std::size_t> seg(segment.begin(), segment.end());
  return emit(Shape{n, 1}, std::move(v), {&logits},
              [ln, seg = std::move(seg), k](detail::Node& o) {
                std::vector<double> dot(k, 0.0);
                for (std::size_t i = 0; i < seg.size(); ++i) dot[seg[i]] += o.grad[i] * o.value[i];
                auto& g = ln->grad_buffer();
                for (std::size_t i = 0; i < seg.size(); ++i) {
                  g[i] += o.value[i] * (o.grad[i] - dot[seg[i]]);
                }
              });
}

Tensor Tape::sparse_matmul(std::shared_ptr<const SparseMatrix> a, const Tensor& x) {
  if (a->cols != x.rows()) shape_error("sparse_matmul", Shape{a->rows, a->cols}, x.shape());
  const std::size_t d = x.cols();
  std::vector<double> v(a->rows * d, 0.0);
  const auto xv = x.values();
  for (std::size_t e = 0; e < a->value.size(); ++e) {
    const double w = a->value[e];
    const double* src = xv.data() + a->col_index[e] * d;
    double* dst = v.data() + a->row_index[e] * d;
    for (std::size_t j = 0; j < d; ++j) dst[j] += w * src[j];
  }
  auto xn = x.shared();
  const Shape shape{a->rows, d};
  return emit(shape, std::move(v), {&x}, [xn, a = std::move(a), d](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t e = 0; e < a->value.size(); ++e) {
      const double w = a->value[e];
      const double* src = o.grad.data() + a->row_index[e] * d;
      double* dst = g.data() + a->col_index[e] * d;
      for (std::size_t j = 0; j < d; ++j) dst[j] += w * src[j];
    }
  });
}

Tensor Tape::dropout(const Tensor& x, double p, bool training, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ContractViolation("dropout probability must lie in [0, 1), got " + std::to_string(p));
  }
  if (!training || p == 0.0) return x;
  const double scale = 1.0 / (1.0 - p);
  std::vector<double> mask(x.size());
  for (double& m : mask) m = rng.uniform() < p ? 0.0 : scale;
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values()[i] * mask[i];
  auto xn = x.shared();
  return emit(x.shape(), std::move(v), {&x}, [xn, mask = std::move(mask)](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < o.grad.size(); ++i) g[i] += o.grad[i] * mask[i];
  });
}

Tensor Tape::bce_loss(const Tensor& preds, std::span<const double> labels) {
  if (preds.cols() != 1 || preds.rows() != labels.size() || labels.empty()) {
    throw ContractViolation("bce_loss: " + std::to_string(labels.size()) +
                            " labels for predictions of shape " + preds.shape().str());
  }
  const double n = static_cast<double>(labels.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(preds.values()[i], kBceEpsilon, 1.0 - kBceEpsilon);
    loss -= labels[i] * std::log(p) + (1.0 - labels[i]) * std::log(1.0 - p);
  }
  loss /= n;
  auto pn = preds.shared();
  std::vector<double> y(labels.begin(), labels.end());
  return emit(Shape{1, 1}, {loss}, {&preds}, [pn, y = std::move(y), n](detail::Node& o) {
    auto& g = pn->grad_buffer();
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double raw = pn->value[i];
      if (raw < kBceEpsilon || raw > 1.0 - kBceEpsilon) continue;
      g[i] += o.grad[0] * (-(y[i] / raw) + (1.0 - y[i]) / (1.0 - raw)) / n;
    }
  });
}

Tensor Tape::sum(const Tensor& x) {
  double s = 0.0;
  for (double e : x.values()) s += e;
  auto xn = x.shared();
  return emit(Shape{1, 1}, {s}, {&x}, [xn](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (double& e : g) e += o.grad[0];
  });
}

Tensor Tape::row_sum(const Tensor& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) v[i] += x.values()[i * d + j];
  }
  auto xn = x.shared();
  return emit(Shape{n, 1}, std::move(v), {&x}, [xn, n, d](detail::Node& o) {
    auto& g = xn->grad_buffer();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) g[i * d + j] += o.grad[i];
    }
  });
}

void Tape::backward(const Tensor& loss) {
  if (loss.size() != 1) {
    throw ContractViolation("backward: loss must be a scalar, got " + loss.shape().str());
  }
  const double one = 1.0;
  backward(loss, std::span<const double>(&one, 1));
}

void Tape::backward(const Tensor& output, std::span<const double> seed) {
  if (consumed_) throw ContractViolation("backward called twice on the same record");
  if (!recording()) throw ContractViolation("backward on a no-grad record");
  if (seed.size() != output.size()) {
    throw ContractViolation("backward: seed length does not match output " +
                            output.shape().str());
  }
  consumed_ = true;
  if (!output.requires_grad()) return;
  auto& g = output.node()->grad_buffer();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += seed[i];

  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    detail::Node& out = *it->out;
    if (out.grad.empty()) continue;  // unreachable from the output
    it->backward(out);
  }
  // Release closures (and the intermediate buffers they hold).
  entries_.clear();
}

}  // namespace gig::ad
