#pragma once

#include <iosfwd>
#include <string>

#include "mnclust/types.hpp"

namespace mnclust {

// Checks non-negativity and derives trial_counts from column sums.
// Throws NegativeEntryError / ZeroColumnError.
CountMatrix validate_count_matrix(const MatI& raw);

// P~ with P~_{it} = X_{it} / N_t.
ProbabilityMatrix empirical_probabilities(const CountMatrix& x);

// Plain numeric CSV: rows are dimensions, columns are observations, values
// non-negative integers.  `header` skips the first line.  Positions in
// InputError are 1-based (line, column-of-field).
CountMatrix read_count_csv(std::istream& in, bool header = false);
CountMatrix read_count_csv_file(const std::string& path, bool header = false);

void write_count_csv(std::ostream& out, const MatI& m);
void write_count_csv_file(const std::string& path, const MatI& m);

}  // namespace mnclust
