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

#include "qtlight/optimizer.h"

#include <cmath>
#include <string>

#include "qtlight/error.h"

namespace qtl {

Adam::Adam(size_t num_params, double learning_rate, AdamConfig config)
    : lr_(learning_rate), config_(config), m_(num_params, 0.0), v_(num_params, 0.0) {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw invalid_argument("learning rate must be a positive finite number, got " + std::to_string(learning_rate));
    }
}

void Adam::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size()) {
        throw invalid_argument("optimizer holds " + std::to_string(m_.size()) + " parameters, got " +
                               std::to_string(params.size()) + " params and " + std::to_string(grads.size()) +
                               " gradients");
    }
    t_++;
    if (config_.plain_sgd) {
        for (size_t k = 0; k < params.size(); k++) {
            params[k] -= lr_ * grads[k];
        }
        return;
    }
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    for (size_t k = 0; k < params.size(); k++) {
        m_[k] = config_.beta1 * m_[k] + (1.0 - config_.beta1) * grads[k];
        v_[k] = config_.beta2 * v_[k] + (1.0 - config_.beta2) * grads[k] * grads[k];
        double m_hat = m_[k] / c1;
        double v_hat = v_[k] / c2;
        params[k] -= lr_ * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
}

}  // namespace qtl
