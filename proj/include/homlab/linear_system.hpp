#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "homlab/group.hpp"
#include "homlab/int_matrix.hpp"

namespace homlab {

struct SolutionCount {
    mpz_class count;
    /// Present iff count > 0; one entry per column of the system.
    std::optional<GroupVector> witness;
};

/// Number of x in Gamma^cols with a x = b, where b has one entry per row.
/// The system splits into one system mod n_i per cyclic factor; each is
/// solved through the Smith form of a.  Throws std::invalid_argument on a
/// dimension mismatch.
SolutionCount count_solutions(const IntMatrix& a, const GroupVector& b, const FiniteAbelianGroup& gamma);

/// Same, reusing a Smith form of a.
SolutionCount count_solutions(const IntMatrix& a, const SmithForm& snf, const GroupVector& b,
                              const FiniteAbelianGroup& gamma);

/// True iff a x = b holds over Gamma.
bool satisfies(const IntMatrix& a, const GroupVector& x, const GroupVector& b, const FiniteAbelianGroup& gamma);

} // namespace homlab
