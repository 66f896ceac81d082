// Copyright 2026 The hyperdual Authors
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

// Walks through the five-vertex example: rank, orthogonal complement, dual,
// and the spectral check that the stabilized sector of the perturbed CSS
// model matches the Ising-like model on the dual.

#include <iostream>

#include "hyperdual/hyperdual.hpp"

int main() {
  using namespace hyperdual;
  const auto h = parse_hypergraph(
      "K 5\n"
      "E 4\n"
      "e 1\n"
      "e 1 2 4 5\n"
      "e 2 3\n"
      "e 3 5\n");

  std::cout << "rank " << rank(h) << "\n\northogonal:\n" << to_text(orthogonal(h)) << "\ndual:\n" << to_text(dual(h));

  for (double field : {0.0, 0.5, 2.0}) {
    const auto report = verify_duality(h, 1.0, field);
    std::cout << "\nh/J = " << field << ": ground " << report.dual_spectrum.front() << ", deviation "
              << report.max_abs_deviation << (report.passed ? " (ok)" : " (MISMATCH)") << '\n';
  }
}
