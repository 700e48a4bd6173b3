#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hatepol/rng.hpp"
#include "hatepol/tree.hpp"

namespace hatepol {

// One ReLU hidden layer feeding a logistic output unit.
struct MlpParams {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> w1;  // hidden x inputs, row-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  std::size_t parameter_count() const noexcept { return w1.size() + b1.size() + w2.size() + 1; }
  // Flat view order: w1, b1, w2, b2.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

MlpParams init_mlp(std::size_t inputs, std::size_t hidden, Rng& rng);

double mlp_output(const MlpParams& p, std::span<const double> x);

struct LossAndGradient {
  double loss = 0.0;
  MlpParams gradient;
};

// Mean binary cross-entropy over `batch` rows of `x` and its analytic
// gradient by backpropagation.
LossAndGradient mlp_loss_gradient(const MlpParams& p, const MatrixView& x, std::span<const int> labels,
                                  std::span<const std::size_t> batch);

struct MlpTrainOptions {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t epochs = 50;
  std::size_t batch_size = 16;
};

void train_mlp(MlpParams& p, const MatrixView& x, std::span<const int> labels, const MlpTrainOptions& options,
               Rng& rng);

}  // namespace hatepol
