// Copyright 2026 The qtlight Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTLIGHT_OPTIMIZER_H
#define QTLIGHT_OPTIMIZER_H

#include <cstddef>
#include <span>
#include <vector>

namespace qtl {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Skip the moment estimates and take theta -= lr * grad.
    bool plain_sgd = false;
};

/// Adam with bias-corrected moments.
class Adam {
   public:
    Adam(size_t num_params, double learning_rate, AdamConfig config = {});

    /// Updates params in place. Throws on a size mismatch.
    void step(std::span<double> params, std::span<const double> grads);

    size_t steps_taken() const noexcept {
        return t_;
    }
    const std::vector<double> &first_moment() const noexcept {
        return m_;
    }
    const std::vector<double> &second_moment() const noexcept {
        return v_;
    }

   private:
    double lr_;
    AdamConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    size_t t_ = 0;
};

}  // namespace qtl

#endif
