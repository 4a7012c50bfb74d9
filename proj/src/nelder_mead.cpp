// Copyright 2026 The qrx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrx/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrx {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    std::iota(order.begin(), order.end(), size_t{0});
    // Stable sort keeps the earlier vertex first on equal values.
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (size_t i = 0; i <= dim; ++i)
      diameter = std::max(diameter, distance(simplex[i], simplex[best]));
    if (diameter < options.diameter_tolerance) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (size_t d = 0; d < dim; ++d) trial[d] = 2.0 * centroid[d] - simplex[worst][d];
    const double reflected = eval(trial);

    if (reflected < values[best]) {
      for (size_t d = 0; d < dim; ++d) trial2[d] = 3.0 * centroid[d] - 2.0 * simplex[worst][d];
      const double expanded = eval(trial2);
      if (expanded < reflected) {
        simplex[worst] = trial2;
        values[worst] = expanded;
      } else {
        simplex[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = reflected;
      continue;
    }

    // Contraction, outside if the reflection improved on the worst vertex.
    const bool outside = reflected < values[worst];
    for (size_t d = 0; d < dim; ++d) {
      const double toward = outside ? trial[d] : simplex[worst][d];
      trial2[d] = centroid[d] + 0.5 * (toward - centroid[d]);
    }
    const double contracted = eval(trial2);
    if (contracted < (outside ? reflected : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = contracted;
      continue;
    }

    for (size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (size_t d = 0; d < dim; ++d)
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const size_t best = static_cast<size_t>(best_it - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace qrx
