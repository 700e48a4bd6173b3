#include "hatepol/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hatepol {

namespace {

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

std::vector<double> MlpParams::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  out.insert(out.end(), w1.begin(), w1.end());
  out.insert(out.end(), b1.begin(), b1.end());
  out.insert(out.end(), w2.begin(), w2.end());
  out.push_back(b2);
  return out;
}

void MlpParams::assign(std::span<const double> flat) {
  auto it = flat.begin();
  for (auto& v : w1) v = *it++;
  for (auto& v : b1) v = *it++;
  for (auto& v : w2) v = *it++;
  b2 = *it;
}

MlpParams init_mlp(std::size_t inputs, std::size_t hidden, Rng& rng) {
  MlpParams p;
  p.inputs = inputs;
  p.hidden = hidden;
  p.w1.resize(hidden * inputs);
  p.b1.assign(hidden, 0.0);
  p.w2.resize(hidden);
  const double s1 = std::sqrt(2.0 / static_cast<double>(inputs));
  const double s2 = std::sqrt(1.0 / static_cast<double>(hidden));
  for (auto& w : p.w1) w = s1 * rng.normal();
  for (auto& w : p.w2) w = s2 * rng.normal();
  return p;
}

double mlp_output(const MlpParams& p, std::span<const double> x) {
  double z = p.b2;
  for (std::size_t h = 0; h < p.hidden; ++h) {
    double a = p.b1[h];
    const double* w = p.w1.data() + h * p.inputs;
    for (std::size_t i = 0; i < p.inputs; ++i) a += w[i] * x[i];
    if (a > 0) z += p.w2[h] * a;
  }
  return logistic(z);
}

LossAndGradient mlp_loss_gradient(const MlpParams& p, const MatrixView& x, std::span<const int> labels,
                                  std::span<const std::size_t> batch) {
  LossAndGradient out;
  auto& g = out.gradient;
  g.inputs = p.inputs;
  g.hidden = p.hidden;
  g.w1.assign(p.w1.size(), 0.0);
  g.b1.assign(p.b1.size(), 0.0);
  g.w2.assign(p.w2.size(), 0.0);
  g.b2 = 0.0;
  std::vector<double> act(p.hidden);
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (auto r : batch) {
    const auto xr = x.row(r);
    double z = p.b2;
    for (std::size_t h = 0; h < p.hidden; ++h) {
      double a = p.b1[h];
      const double* w = p.w1.data() + h * p.inputs;
      for (std::size_t i = 0; i < p.inputs; ++i) a += w[i] * xr[i];
      act[h] = a > 0 ? a : 0.0;
      z += p.w2[h] * act[h];
    }
    const double y = labels[r] ? 1.0 : 0.0;
    // Cross-entropy of logistic(z): softplus(z) - y*z.
    out.loss += scale * (softplus(z) - y * z);
    const double dz = scale * (logistic(z) - y);
    g.b2 += dz;
    for (std::size_t h = 0; h < p.hidden; ++h) {
      g.w2[h] += dz * act[h];
      if (act[h] <= 0) continue;
      const double da = dz * p.w2[h];
      g.b1[h] += da;
      double* gw = g.w1.data() + h * p.inputs;
      for (std::size_t i = 0; i < p.inputs; ++i) gw[i] += da * xr[i];
    }
  }
  return out;
}

void train_mlp(MlpParams& p, const MatrixView& x, std::span<const int> labels, const MlpTrainOptions& options,
               Rng& rng) {
  std::vector<double> params = p.flatten();
  std::vector<double> velocity(params.size(), 0.0);
  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t len = std::min(batch, order.size() - start);
      const auto grad = mlp_loss_gradient(p, x, labels, std::span(order).subspan(start, len)).gradient.flatten();
      for (std::size_t i = 0; i < params.size(); ++i) {
        velocity[i] = options.momentum * velocity[i] - options.learning_rate * grad[i];
        params[i] += velocity[i];
      }
      p.assign(params);
    }
  }
}

}  // namespace hatepol
