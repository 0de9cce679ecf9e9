// Copyright 2026 The Authors.
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


// Build a q-matroid from a matrix over GF(8), sum it with a uniform one,
// count its spaces and split it back apart.

#include <iostream>

#include "qmat/qmat.hpp"

int main() {
  using namespace qmat;
  auto f8 = create_field(2, 3, std::vector<uint32_t>{1, 1, 0, 1});
  auto g = parse_matrix(*f8, {{"1", "0", "w3", "w1"}, {"0", "1", "w4", "w2"}});
  Oracle m = from_representation(f8, 2, g);

  auto fam = compute_zflats(m);
  std::cout << "cyclic flats: " << fam.size() << "\n";
  for (const auto& z : fam.members) std::cout << "  dim " << z.space.dim() << " rank " << z.rank << "\n";

  Oracle s = direct_sum(uniform(2, 1, 1), m);
  std::cout << CensusReport::csv_header() << "\n" << census(s).csv_row() << "\n";
  std::cout << decompose(s).summary() << "\n";
  return 0;
}
