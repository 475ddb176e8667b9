#pragma once

#include <compare>
#include <string>
#include <vector>

#include "thetaglue/modforms.hpp"
#include "thetaglue/numeric.hpp"
#include "thetaglue/qseries.hpp"

namespace thetaglue {

enum class SlotRole { H, Rho };

/*
 * One block of a sym-pattern: it consumes block_size of the symbols
 * m_1..m_k and contributes the factor h_{(sum of its m's) + index_shift}
 * (or rho_...).  Blocks with equal (role, block_size, index_shift) are
 * interchangeable.  block_size 0 is allowed and makes the factor the
 * constant h_{index_shift} / rho_{index_shift}.
 */
struct SymSlot {
    SlotRole role{SlotRole::H};
    long block_size{1};
    long index_shift{0};
    friend auto operator<=>(const SymSlot&, const SymSlot&) = default;
};

/*
 * sym{...}: the sum over all distinct ways of distributing the index set
 * {1..k} among the slots, each product multiplied by Delta24^delta_power
 * and the whole sum by prefactor.
 */
struct SymPattern {
    std::vector<SymSlot> slots;
    long delta_power{0};
    Rat prefactor{1};
};

/* total number of m-indices the pattern consumes */
long pattern_index_count(const SymPattern& pattern);

/* one summand: the (sorted) m-indices handed to each slot, slot order as given */
using SymAssignment = std::vector<std::vector<int>>;

/*
 * All distinct assignments of {1..k}; assignments differing only by a swap
 * of identical slots are produced once.  Throws size_mismatch unless the
 * pattern consumes exactly k indices.
 */
std::vector<SymAssignment> enumerate_assignments(const SymPattern& pattern, int k);

/* closed form for the assignment count: k! / prod(size_i!) / prod(mult_j!) */
Int assignment_count(const SymPattern& pattern);

/*
 * Number of distinct monomials produced by a list of patterns over one
 * shared index universe.  Patterns with equal slot multisets expand to the
 * same monomial set and are counted once.
 */
Int distinct_monomial_count(const std::vector<SymPattern>& patterns);

/* e.g. "h[m1+m2+1]*rho[m3-1]*rho[m4-1]" */
std::string render_assignment(const SymPattern& pattern, const SymAssignment& assignment);

struct SymFactor {
    SlotRole role{SlotRole::H};
    long index{0};
};

/* a fully indexed summand for concrete m, with its grading weight */
struct SymSummand {
    std::vector<SymFactor> factors;
    long weight{0}; /* sum of factor indices + 3 * delta_power */
};

std::vector<SymSummand> pattern_summands(const SymPattern& pattern, const std::vector<long>& m);

/* the expanded sum times Delta24^delta_power; prefactor not applied */
QSeries sym_eval_sum(const SymPattern& pattern, const std::vector<long>& m, ModformCache& cache);

/* sym_eval_sum scaled by prefactor; throws non_integer_result if that leaves Z */
QSeries sym_eval(const SymPattern& pattern, const std::vector<long>& m, ModformCache& cache);

/* prefactor-weighted sum of several patterns, times an overall scale.  The
   rational bookkeeping stays exact until the very end, where every
   coefficient must land back in Z (non_integer_result otherwise).  Dividing
   per pattern would reject valid inputs whose fractions only cancel in the
   total. */
QSeries sym_eval_total(const std::vector<SymPattern>& patterns, const std::vector<long>& m,
                       ModformCache& cache, const Rat& scale = Rat(1));

struct CountCheckRow {
    std::string name;
    int ell{0};
    Int lhs{0};
    Int rhs{0};
    bool pass{false};
    /* informational rows record a known-bad summation-range variant */
    bool asserted{true};
};

/*
 * The combinatorial identities behind the theorem expansions, evaluated for
 * 1 <= l <= lmax: binomial/trinomial parity sums and the monomial counts of
 * the two- and three-block sym sums.  Two rows stay informational because
 * they record known-bad variants: trinom-even-split-unordered (wrong
 * summation range, fails from l = 3 on) and trinom-total-even-printed
 * (closing constant off by one for every l).
 */
std::vector<CountCheckRow> count_checks(int lmax);

}
