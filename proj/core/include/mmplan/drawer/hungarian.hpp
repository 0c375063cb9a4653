// Copyright 2026 The mmplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include <Eigen/Core>

namespace mmplan {

// Minimum-cost one-to-one assignment (Kuhn-Munkres with potentials, O(n^3)).
// Rectangular matrices are padded to square with `padding_cost`. Returns, for
// each row, the assigned column or -1 when the row landed on padding.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost, double padding_cost = 1e6);

// Sum of cost(row, assignment[row]) over assigned rows.
double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& assignment);

}  // namespace mmplan
