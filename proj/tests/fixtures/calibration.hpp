#pragma once

namespace hcp::test {

// Share of the 500-graph admissibility sample (sample_graphs(500, 5, 16, 0),
// msls seed = sample index, default parameters) on which msls_hcn equals
// exact_hcn. Measured with tests/acceptance/calibrate.cpp: 500/500.
inline constexpr double kMslsEqualityRate = 1.0;

}  // namespace hcp::test
