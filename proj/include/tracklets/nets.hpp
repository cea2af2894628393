#ifndef TRACKLETS_NETS_HPP_
#define TRACKLETS_NETS_HPP_

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "tracklets/rng.hpp"

namespace tracklets::nets {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Representation { kTrackletsGcn, kTrackletsMlp };

inline std::string_view representation_name(Representation r) {
  return r == Representation::kTrackletsGcn ? "tracklets_gcn" : "tracklets_mlp";
}

inline Representation parse_representation(std::string_view name) {
  if (name == "tracklets_gcn") return Representation::kTrackletsGcn;
  if (name == "tracklets_mlp") return Representation::kTrackletsMlp;
  throw std::invalid_argument("unknown representation '" + std::string(name) +
                              "' (expected tracklets_gcn or tracklets_mlp)");
}

struct NetShape {
  Representation representation = Representation::kTrackletsGcn;
  int input_dims = 0;   // node embedding width
  int num_nodes = 0;    // K+1; fixes the flat-MLP input width
  int num_actions = 5;
  int gcn_layers = 2;
  int gcn_width = 64;
  int head_hidden = 64;
  int mlp_hidden = 128;
};

// y = x * weight + bias, bias stored as a 1 x out row.
template <typename Scalar>
struct Dense {
  Matrix<Scalar> weight;
  Matrix<Scalar> bias;
};

template <typename Scalar>
struct GcnLayerParams {
  Matrix<Scalar> w_other;
  Matrix<Scalar> w_self;
};

// Graph convolution stack shared by a policy head and a value head, each a
// one-hidden-layer ReLU MLP.
template <typename Scalar>
struct GcnParams {
  std::vector<GcnLayerParams<Scalar>> layers;
  Dense<Scalar> policy_hidden, policy_out;
  Dense<Scalar> value_hidden, value_out;
};

// Flat baseline: node embeddings concatenated in a fixed order, two hidden
// layers, then linear policy and value outputs.
template <typename Scalar>
struct MlpParams {
  Dense<Scalar> hidden1, hidden2;
  Dense<Scalar> policy_out, value_out;
};

template <typename Scalar>
using NetParams = std::variant<GcnParams<Scalar>, MlpParams<Scalar>>;

// ---------------------------------------------------------------------------
// Parameter traversal. Order is fixed and doubles as the checkpoint order.

template <typename Scalar, typename F>
void for_each_tensor(GcnParams<Scalar>& p, F&& f) {
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const std::string prefix = "gcn." + std::to_string(l);
    f(prefix + ".w_other", p.layers[l].w_other);
    f(prefix + ".w_self", p.layers[l].w_self);
  }
  f(std::string("policy.hidden.weight"), p.policy_hidden.weight);
  f(std::string("policy.hidden.bias"), p.policy_hidden.bias);
  f(std::string("policy.out.weight"), p.policy_out.weight);
  f(std::string("policy.out.bias"), p.policy_out.bias);
  f(std::string("value.hidden.weight"), p.value_hidden.weight);
  f(std::string("value.hidden.bias"), p.value_hidden.bias);
  f(std::string("value.out.weight"), p.value_out.weight);
  f(std::string("value.out.bias"), p.value_out.bias);
}

template <typename Scalar, typename F>
void for_each_tensor(MlpParams<Scalar>& p, F&& f) {
  f(std::string("mlp.hidden1.weight"), p.hidden1.weight);
  f(std::string("mlp.hidden1.bias"), p.hidden1.bias);
  f(std::string("mlp.hidden2.weight"), p.hidden2.weight);
  f(std::string("mlp.hidden2.bias"), p.hidden2.bias);
  f(std::string("policy.out.weight"), p.policy_out.weight);
  f(std::string("policy.out.bias"), p.policy_out.bias);
  f(std::string("value.out.weight"), p.value_out.weight);
  f(std::string("value.out.bias"), p.value_out.bias);
}

template <typename Scalar, typename F>
void for_each_tensor(NetParams<Scalar>& p, F&& f) {
  std::visit([&](auto& q) { for_each_tensor(q, f); }, p);
}

template <typename Scalar, typename F>
void for_each_tensor(const NetParams<Scalar>& p, F&& f) {
  for_each_tensor(const_cast<NetParams<Scalar>&>(p),
                  [&](const std::string& name, Matrix<Scalar>& m) {
                    f(name, static_cast<const Matrix<Scalar>&>(m));
                  });
}

// Calls f(a_i, b_i) on corresponding tensors of two same-shaped parameter sets.
template <typename Scalar, typename F>
void zip_tensors(NetParams<Scalar>& a, const NetParams<Scalar>& b, F&& f) {
  std::vector<const Matrix<Scalar>*> rhs;
  for_each_tensor(b, [&](const std::string&, const Matrix<Scalar>& m) { rhs.push_back(&m); });
  std::size_t i = 0;
  for_each_tensor(a, [&](const std::string&, Matrix<Scalar>& m) { f(m, *rhs.at(i++)); });
}

template <typename Scalar>
std::size_t parameter_count(const NetParams<Scalar>& p) {
  std::size_t n = 0;
  for_each_tensor(p, [&](const std::string&, const Matrix<Scalar>& m) { n += m.size(); });
  return n;
}

template <typename Scalar>
NetParams<Scalar> zeros_like(const NetParams<Scalar>& p) {
  NetParams<Scalar> z = p;
  for_each_tensor(z, [](const std::string&, Matrix<Scalar>& m) { m.setZero(); });
  return z;
}

template <typename To, typename From>
NetParams<To> cast_params(const NetParams<From>& p) {
  return std::visit(
      [](const auto& q) -> NetParams<To> {
        using Q = std::decay_t<decltype(q)>;
        auto cast_dense = [](const Dense<From>& d) {
          return Dense<To>{d.weight.template cast<To>(), d.bias.template cast<To>()};
        };
        if constexpr (std::is_same_v<Q, GcnParams<From>>) {
          GcnParams<To> out;
          for (const auto& l : q.layers) {
            out.layers.push_back({l.w_other.template cast<To>(), l.w_self.template cast<To>()});
          }
          out.policy_hidden = cast_dense(q.policy_hidden);
          out.policy_out = cast_dense(q.policy_out);
          out.value_hidden = cast_dense(q.value_hidden);
          out.value_out = cast_dense(q.value_out);
          return out;
        } else {
          MlpParams<To> out;
          out.hidden1 = cast_dense(q.hidden1);
          out.hidden2 = cast_dense(q.hidden2);
          out.policy_out = cast_dense(q.policy_out);
          out.value_out = cast_dense(q.value_out);
          return out;
        }
      },
      p);
}

// ---------------------------------------------------------------------------
// Initialization: uniform in +-sqrt(6/(fan_in+fan_out)), zero biases.

template <typename Scalar>
Matrix<Scalar> glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Matrix<Scalar> w(fan_in, fan_out);
  for (int j = 0; j < fan_out; ++j) {
    for (int i = 0; i < fan_in; ++i) w(i, j) = static_cast<Scalar>(uniform(rng, -limit, limit));
  }
  return w;
}

template <typename Scalar>
Dense<Scalar> make_dense(int in, int out, Rng& rng) {
  return {glorot_uniform<Scalar>(in, out, rng), Matrix<Scalar>::Zero(1, out)};
}

template <typename Scalar>
NetParams<Scalar> init_params(const NetShape& shape, Rng& rng) {
  if (shape.input_dims <= 0) throw std::invalid_argument("init_params: input_dims must be > 0");
  if (shape.representation == Representation::kTrackletsGcn) {
    GcnParams<Scalar> p;
    int in = shape.input_dims;
    for (int l = 0; l < shape.gcn_layers; ++l) {
      GcnLayerParams<Scalar> layer;
      layer.w_other = glorot_uniform<Scalar>(in, shape.gcn_width, rng);
      layer.w_self = glorot_uniform<Scalar>(in, shape.gcn_width, rng);
      p.layers.push_back(std::move(layer));
      in = shape.gcn_width;
    }
    p.policy_hidden = make_dense<Scalar>(in, shape.head_hidden, rng);
    p.policy_out = make_dense<Scalar>(shape.head_hidden, shape.num_actions, rng);
    p.value_hidden = make_dense<Scalar>(in, shape.head_hidden, rng);
    p.value_out = make_dense<Scalar>(shape.head_hidden, 1, rng);
    return p;
  }
  if (shape.num_nodes <= 0) throw std::invalid_argument("init_params: flat MLP needs num_nodes");
  MlpParams<Scalar> p;
  p.hidden1 = make_dense<Scalar>(shape.input_dims * shape.num_nodes, shape.mlp_hidden, rng);
  p.hidden2 = make_dense<Scalar>(shape.mlp_hidden, shape.mlp_hidden, rng);
  p.policy_out = make_dense<Scalar>(shape.mlp_hidden, shape.num_actions, rng);
  p.value_out = make_dense<Scalar>(shape.mlp_hidden, 1, rng);
  return p;
}

// ---------------------------------------------------------------------------
// Forward pass.

template <typename Scalar>
Matrix<Scalar> relu(const Matrix<Scalar>& x) {
  return x.cwiseMax(Scalar(0));
}

// sigma((A * phi * W_other + phi * W_self) / (K+1)) with sigma = ReLU.
template <typename Scalar>
Matrix<Scalar> gcn_layer_forward(const Matrix<Scalar>& phi, const Matrix<Scalar>& adjacency,
                                 const Matrix<Scalar>& w_other, const Matrix<Scalar>& w_self) {
  const auto n = phi.rows();
  if (adjacency.rows() != n || adjacency.cols() != n) {
    throw std::invalid_argument("gcn_layer_forward: adjacency must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  if (w_other.rows() != phi.cols() || w_self.rows() != phi.cols() ||
      w_other.cols() != w_self.cols()) {
    throw std::invalid_argument("gcn_layer_forward: weight shapes do not match the features");
  }
  const Matrix<Scalar> pre = (adjacency * (phi * w_other) + phi * w_self) / Scalar(n);
  return relu(pre);
}

// A batch of graphs with the same node count and adjacency. Node rows of
// graph b occupy rows [b*num_nodes, (b+1)*num_nodes) of `nodes`.
template <typename Scalar>
struct GraphBatch {
  Matrix<Scalar> nodes;
  Matrix<Scalar> adjacency;
  int num_nodes = 0;

  int size() const { return num_nodes == 0 ? 0 : static_cast<int>(nodes.rows() / num_nodes); }
};

template <typename Scalar>
struct BatchOutput {
  Matrix<Scalar> logits;     // B x A
  Matrix<Scalar> probs;      // B x A
  Matrix<Scalar> log_probs;  // B x A
  Vector<Scalar> values;     // B
  Vector<Scalar> entropy;    // B
};

// Intermediates kept for backward().
template <typename Scalar>
struct ForwardCache {
  std::vector<Matrix<Scalar>> layer_inputs;  // GCN: X_l; MLP: [x, h1, h2]
  std::vector<Matrix<Scalar>> preacts;       // GCN layer / MLP hidden preactivations
  Eigen::MatrixXi argmax;                    // B x width, winning node per channel
  Matrix<Scalar> pooled;
  Matrix<Scalar> policy_hidden;
  Matrix<Scalar> value_hidden;
  BatchOutput<Scalar> out;
  int num_nodes = 0;
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> affine(const Matrix<Scalar>& x, const Dense<Scalar>& d) {
  Matrix<Scalar> y = x * d.weight;
  y.rowwise() += d.bias.row(0);
  return y;
}

template <typename Scalar>
void softmax_heads(const Matrix<Scalar>& logits, BatchOutput<Scalar>& out) {
  out.logits = logits;
  const auto b = logits.rows();
  out.probs.resize(b, logits.cols());
  out.log_probs.resize(b, logits.cols());
  out.entropy.resize(b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const Scalar mx = logits.row(i).maxCoeff();
    const auto shifted = (logits.row(i).array() - mx).eval();
    const Scalar lse = std::log(shifted.exp().sum());
    out.log_probs.row(i) = shifted - lse;
    out.probs.row(i) = out.log_probs.row(i).array().exp();
    out.entropy(i) = -(out.probs.row(i).array() * out.log_probs.row(i).array()).sum();
  }
}

}  // namespace detail

template <typename Scalar>
BatchOutput<Scalar> forward_batch(const GraphBatch<Scalar>& batch, const GcnParams<Scalar>& p,
                                  ForwardCache<Scalar>* cache = nullptr) {
  const int n = batch.num_nodes;
  const int b = batch.size();
  if (n <= 0 || batch.nodes.rows() != static_cast<Eigen::Index>(n) * b) {
    throw std::invalid_argument("forward_batch: malformed graph batch");
  }
  if (p.layers.empty() || p.layers.front().w_other.rows() != batch.nodes.cols()) {
    throw std::invalid_argument("forward_batch: node width " + std::to_string(batch.nodes.cols()) +
                                " does not match the first GCN layer");
  }
  const Scalar inv_n = Scalar(1) / Scalar(n);
  Matrix<Scalar> x = batch.nodes;
  if (cache != nullptr) {
    cache->layer_inputs.clear();
    cache->preacts.clear();
    cache->num_nodes = n;
  }
  for (const auto& layer : p.layers) {
    const Matrix<Scalar> other = x * layer.w_other;
    Matrix<Scalar> pre = x * layer.w_self;
    for (int g = 0; g < b; ++g) {
      pre.middleRows(g * n, n).noalias() += batch.adjacency * other.middleRows(g * n, n);
    }
    pre *= inv_n;
    if (cache != nullptr) {
      cache->layer_inputs.push_back(std::move(x));
      cache->preacts.push_back(pre);
    }
    x = relu(pre);
  }

  // Max over the node axis of each graph.
  const auto width = x.cols();
  Matrix<Scalar> pooled(b, width);
  Eigen::MatrixXi argmax(b, width);
  for (int g = 0; g < b; ++g) {
    for (Eigen::Index c = 0; c < width; ++c) {
      Eigen::Index best = 0;
      pooled(g, c) = x.col(c).segment(g * n, n).maxCoeff(&best);
      argmax(g, c) = static_cast<int>(best);
    }
  }

  const Matrix<Scalar> ph = relu(detail::affine(pooled, p.policy_hidden));
  const Matrix<Scalar> vh = relu(detail::affine(pooled, p.value_hidden));
  BatchOutput<Scalar> out;
  detail::softmax_heads<Scalar>(detail::affine(ph, p.policy_out), out);
  out.values = detail::affine(vh, p.value_out).col(0);

  if (cache != nullptr) {
    cache->argmax = std::move(argmax);
    cache->pooled = std::move(pooled);
    cache->policy_hidden = ph;
    cache->value_hidden = vh;
    cache->out = out;
  }
  return out;
}

// Rows of each graph laid end to end: agent first, then neighbors in the
// order given.
template <typename Scalar>
Matrix<Scalar> flatten_graphs(const GraphBatch<Scalar>& batch) {
  const int n = batch.num_nodes;
  const int b = batch.size();
  const auto d = batch.nodes.cols();
  Matrix<Scalar> flat(b, n * d);
  for (int g = 0; g < b; ++g) {
    for (int r = 0; r < n; ++r) flat.block(g, r * d, 1, d) = batch.nodes.row(g * n + r);
  }
  return flat;
}

template <typename Scalar>
BatchOutput<Scalar> forward_batch(const GraphBatch<Scalar>& batch, const MlpParams<Scalar>& p,
                                  ForwardCache<Scalar>* cache = nullptr) {
  const Matrix<Scalar> x = flatten_graphs(batch);
  if (x.cols() != p.hidden1.weight.rows()) {
    throw std::invalid_argument("flat MLP expects input width " +
                                std::to_string(p.hidden1.weight.rows()) + ", got " +
                                std::to_string(x.cols()));
  }
  const Matrix<Scalar> pre1 = detail::affine(x, p.hidden1);
  const Matrix<Scalar> h1 = relu(pre1);
  const Matrix<Scalar> pre2 = detail::affine(h1, p.hidden2);
  const Matrix<Scalar> h2 = relu(pre2);
  BatchOutput<Scalar> out;
  detail::softmax_heads<Scalar>(detail::affine(h2, p.policy_out), out);
  out.values = detail::affine(h2, p.value_out).col(0);
  if (cache != nullptr) {
    cache->layer_inputs = {x, h1, h2};
    cache->preacts = {pre1, pre2};
    cache->num_nodes = batch.num_nodes;
    cache->out = out;
  }
  return out;
}

template <typename Scalar>
BatchOutput<Scalar> forward_batch(const GraphBatch<Scalar>& batch, const NetParams<Scalar>& p,
                                  ForwardCache<Scalar>* cache = nullptr) {
  return std::visit([&](const auto& q) { return forward_batch(batch, q, cache); }, p);
}

// Single-graph policy/value evaluation.
template <typename Scalar>
struct PolicyOutput {
  Vector<Scalar> probs;
  Vector<Scalar> log_probs;
  Scalar value = 0;
  Scalar entropy = 0;

  Scalar log_prob(int action) const { return log_probs(action); }
};

template <typename Scalar>
GraphBatch<Scalar> single_graph(const Eigen::MatrixXd& features, const Eigen::MatrixXd& adjacency) {
  GraphBatch<Scalar> b;
  b.nodes = features.cast<Scalar>();
  b.adjacency = adjacency.cast<Scalar>();
  b.num_nodes = static_cast<int>(features.rows());
  return b;
}

template <typename Scalar, typename Params>
PolicyOutput<Scalar> forward(const Eigen::MatrixXd& features, const Eigen::MatrixXd& adjacency,
                             const Params& p) {
  const auto out = forward_batch(single_graph<Scalar>(features, adjacency), p);
  PolicyOutput<Scalar> r;
  r.probs = out.probs.row(0).transpose();
  r.log_probs = out.log_probs.row(0).transpose();
  r.value = out.values(0);
  r.entropy = out.entropy(0);
  return r;
}

// ---------------------------------------------------------------------------
// Backward pass.

// Per-sample derivative of the scalar loss with respect to the log-prob of
// the taken action, the policy entropy and the value estimate.
template <typename Scalar>
struct LossSeeds {
  std::vector<int> actions;
  Vector<Scalar> d_log_prob;
  Vector<Scalar> d_entropy;
  Vector<Scalar> d_value;
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> logit_gradient(const BatchOutput<Scalar>& out, const LossSeeds<Scalar>& seeds) {
  const auto b = out.probs.rows();
  const auto a = out.probs.cols();
  if (static_cast<Eigen::Index>(seeds.actions.size()) != b || seeds.d_log_prob.size() != b ||
      seeds.d_entropy.size() != b || seeds.d_value.size() != b) {
    throw std::invalid_argument("backward: seed sizes do not match the batch");
  }
  Matrix<Scalar> dz(b, a);
  for (Eigen::Index i = 0; i < b; ++i) {
    // d log p_a / dz = e_a - p ;  dH/dz = -p * (log p + H)
    const auto p = out.probs.row(i).array();
    dz.row(i) = -seeds.d_log_prob(i) * p -
                seeds.d_entropy(i) * p * (out.log_probs.row(i).array() + out.entropy(i));
    const int act = seeds.actions[i];
    if (act >= 0) dz(i, act) += seeds.d_log_prob(i);
  }
  return dz;
}

// Accumulates the gradient of a dense layer; returns d(input).
template <typename Scalar>
Matrix<Scalar> dense_backward(const Matrix<Scalar>& input, const Dense<Scalar>& d,
                              const Matrix<Scalar>& d_out, Dense<Scalar>& grad) {
  grad.weight.noalias() = input.transpose() * d_out;
  grad.bias = d_out.colwise().sum();
  return d_out * d.weight.transpose();
}

template <typename Scalar>
Matrix<Scalar> relu_backward(const Matrix<Scalar>& pre, const Matrix<Scalar>& d_out) {
  return (pre.array() > Scalar(0)).select(d_out, Scalar(0));
}

}  // namespace detail

template <typename Scalar>
GcnParams<Scalar> backward(const GraphBatch<Scalar>& batch, const GcnParams<Scalar>& p,
                           const ForwardCache<Scalar>& cache, const LossSeeds<Scalar>& seeds) {
  const auto& out = cache.out;
  const int n = cache.num_nodes;
  const int b = static_cast<int>(out.probs.rows());
  GcnParams<Scalar> g;
  g.layers.resize(p.layers.size());

  const Matrix<Scalar> dz = detail::logit_gradient(out, seeds);
  const Matrix<Scalar> d_ph =
      detail::relu_backward(Matrix<Scalar>(cache.policy_hidden),
                            detail::dense_backward(cache.policy_hidden, p.policy_out, dz, g.policy_out));
  Matrix<Scalar> d_pooled = detail::dense_backward(cache.pooled, p.policy_hidden, d_ph, g.policy_hidden);

  const Matrix<Scalar> dv = seeds.d_value;
  const Matrix<Scalar> d_vh =
      detail::relu_backward(Matrix<Scalar>(cache.value_hidden),
                            detail::dense_backward(cache.value_hidden, p.value_out, dv, g.value_out));
  d_pooled += detail::dense_backward(cache.pooled, p.value_hidden, d_vh, g.value_hidden);

  // Route pooled gradients to the winning node of each channel.
  const auto width = d_pooled.cols();
  Matrix<Scalar> dx = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(b) * n, width);
  for (int gi = 0; gi < b; ++gi) {
    for (Eigen::Index c = 0; c < width; ++c) dx(gi * n + cache.argmax(gi, c), c) += d_pooled(gi, c);
  }

  const Scalar inv_n = Scalar(1) / Scalar(n);
  const Matrix<Scalar> adj_t = batch.adjacency.transpose();
  for (int l = static_cast<int>(p.layers.size()) - 1; l >= 0; --l) {
    const Matrix<Scalar> d_pre = detail::relu_backward(cache.preacts[l], dx) * inv_n;
    Matrix<Scalar> d_other(d_pre.rows(), d_pre.cols());
    for (int gi = 0; gi < b; ++gi) {
      d_other.middleRows(gi * n, n).noalias() = adj_t * d_pre.middleRows(gi * n, n);
    }
    const Matrix<Scalar>& x = cache.layer_inputs[l];
    g.layers[l].w_other.noalias() = x.transpose() * d_other;
    g.layers[l].w_self.noalias() = x.transpose() * d_pre;
    if (l > 0) {
      dx.noalias() = d_other * p.layers[l].w_other.transpose();
      dx.noalias() += d_pre * p.layers[l].w_self.transpose();
    }
  }
  return g;
}

template <typename Scalar>
MlpParams<Scalar> backward(const GraphBatch<Scalar>&, const MlpParams<Scalar>& p,
                           const ForwardCache<Scalar>& cache, const LossSeeds<Scalar>& seeds) {
  MlpParams<Scalar> g;
  const Matrix<Scalar>& x = cache.layer_inputs[0];
  const Matrix<Scalar>& h1 = cache.layer_inputs[1];
  const Matrix<Scalar>& h2 = cache.layer_inputs[2];
  const Matrix<Scalar> dz = detail::logit_gradient(cache.out, seeds);
  Matrix<Scalar> d_h2 = detail::dense_backward(h2, p.policy_out, dz, g.policy_out);
  const Matrix<Scalar> dv = seeds.d_value;
  d_h2 += detail::dense_backward(h2, p.value_out, dv, g.value_out);
  const Matrix<Scalar> d_pre2 = detail::relu_backward(cache.preacts[1], d_h2);
  const Matrix<Scalar> d_h1 = detail::dense_backward(h1, p.hidden2, d_pre2, g.hidden2);
  const Matrix<Scalar> d_pre1 = detail::relu_backward(cache.preacts[0], d_h1);
  detail::dense_backward(x, p.hidden1, d_pre1, g.hidden1);
  return g;
}

template <typename Scalar>
NetParams<Scalar> backward(const GraphBatch<Scalar>& batch, const NetParams<Scalar>& p,
                           const ForwardCache<Scalar>& cache, const LossSeeds<Scalar>& seeds) {
  return std::visit([&](const auto& q) -> NetParams<Scalar> { return backward(batch, q, cache, seeds); },
                    p);
}

}  // namespace tracklets::nets

#endif  // TRACKLETS_NETS_HPP_
