// Copyright 2026 The qgns Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Trains a one-layer node classifier on the bundled toy dataset.

#include <cstdio>

#include <qgns/qgns.hpp>

int main() {
    const qgns::Dataset data = qgns::toy_node_dataset();
    qgns::TrainConfig cfg;
    cfg.epochs = 200;
    cfg.grad = qgns::GradMethod::ParamShift;

    qgns::ModelSpec model = qgns::make_model(qgns::fig1_graph(), 1);
    qgns::randomize_parameters(model, 7);
    const auto result = qgns::fit(model, data, cfg);
    for (const auto &row : result.history) {
        if (row.epoch % 25 == 0) {
            std::printf("epoch %3zu  loss %.4f  accuracy %.2f\n", row.epoch,
                        row.loss, row.accuracy);
        }
    }
}
