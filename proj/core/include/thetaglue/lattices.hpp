#pragma once

#include <string>
#include <vector>

#include <thetaglue/modforms.hpp>
#include <thetaglue/symexpand.hpp>

namespace thetaglue {

/* Lattices glued from type-D root components.  A spec names one member of
   three families, each parametrised by per-component integers m_i:
     Odd8m:     odd k,  component ranks n_i = 8*m_i       (m_i >= 1)
     Even8m4:   even k, component ranks n_i = 8*m_i + 4   (m_i >= 0)
     FourBlock: k = 4,  component ranks n_i = 8*m_i + 4*epsilon + 2
   Glueing the discriminant classes listed by glue_generators() onto the
   orthogonal sum of D_{n_i} yields an even unimodular lattice of rank
   sum(n_i); check_even_unimodular() verifies that from the Gram matrix. */

enum class Family { Odd8m, Even8m4, FourBlock };

std::string family_name(Family family);
Family family_from_name(const std::string& name);

struct LatticeSpec {
    Family family{Family::Odd8m};
    std::vector<long> m;
    int epsilon{0};

    long k() const { return static_cast<long>(m.size()); }
};

/* throws invalid_spec unless the family constraints above hold */
void validate_spec(const LatticeSpec& spec);

std::vector<long> component_ranks(const LatticeSpec& spec);
long total_rank(const LatticeSpec& spec);

/* modular weight of the theta series, total_rank/8; every summand produced
   by theorem_patterns is homogeneous of this weight */
long theta_weight(const LatticeSpec& spec);

/* key=value lines: family, m (comma separated), optional k (must match
   m.size()), epsilon (FourBlock only).  '#' starts a comment. */
LatticeSpec parse_spec_text(const std::string& text);
std::string spec_to_text(const LatticeSpec& spec);

/* Discriminant classes of one D_n component (n even), a Klein four-group:
   O the trivial class, X1 and X3 the two half-integer classes, X2 the
   integer non-lattice class.  Addition is componentwise XOR on the codes. */
enum class GlueClass { O = 0, X1 = 1, X2 = 2, X3 = 3 };

GlueClass glue_add(GlueClass a, GlueClass b);
std::string glue_class_name(GlueClass c);

using GlueLabel = std::vector<GlueClass>;

std::string label_to_string(const GlueLabel& label);

std::vector<GlueLabel> glue_generators(const LatticeSpec& spec);

/* closure of the generators under addition; always 2^k labels.
   throws bounds_too_large for k > 20. */
std::vector<GlueLabel> glue_group(const LatticeSpec& spec);

/* minimal squared length over the coset of `label`, in quarter powers of q
   (per component: O -> 0, X1/X3 -> n_i, X2 -> 4) */
long long label_min_quarters(const LatticeSpec& spec, const GlueLabel& label);

/* theta series of one discriminant class of D_n:
     O  -> (theta3^n + theta4^n)/2      X2 -> (theta3^n - theta4^n)/2
     X1 -> theta2^n / 2                 X3 -> theta2^n / 2            */
QSeries coset_theta_component(GlueClass c, long n, ModformCache& cache);

/* sum over the glue group of products of component class thetas */
QSeries theta_by_cosets(const LatticeSpec& spec, ModformCache& cache);

/* The closed-form route groups the rho*rho*h correction sum over index
   pairs (j1, j2).  The two readings of that pair range differ:
     PositivePairs: ordered pairs with j1, j2 >= 1 and j1+j2 <= l-2
     AllPairs:      unordered pairs with 0 <= j1 <= j2 and j1+j2 <= l-2
   Only AllPairs agrees with the coset and enumeration routes once any m_i
   vanishes (first divergence: Even8m4 k=4, m=(1,1,0,0)); PositivePairs is
   kept selectable so the discrepancy stays observable. */
enum class EvenRhoRange { PositivePairs, AllPairs };

struct TheoremExpansion {
    std::vector<SymPattern> patterns;
    Rat scale{1};
};

TheoremExpansion theorem_patterns(const LatticeSpec& spec,
                                  EvenRhoRange range = EvenRhoRange::AllPairs);

/* evaluates theorem_patterns at the spec's m; throws non_integer_result if
   the rational bookkeeping fails to cancel and logic_error if any summand
   breaks the weight grading */
QSeries theta_by_theorem(const LatticeSpec& spec, ModformCache& cache,
                         EvenRhoRange range = EvenRhoRange::AllPairs);

/* independent oracle: per component, a depth-first sweep over scaled-by-2
   integer vectors tallies each discriminant class by squared length, and the
   class series are glued exactly like theta_by_cosets.  Work is metered in
   visited search nodes; exceeding node_budget throws bounds_too_large. */
QSeries theta_by_enumeration(const LatticeSpec& spec, QExp trunc,
                             long long node_budget = 200'000'000);

struct UnimodularReport {
    long rank{0};
    bool full_rank{false};
    bool gram_integral{false};
    bool even_diagonal{false};
    bool det_one{false};
    Int gram_det{0};

    bool pass() const { return full_rank && gram_integral && even_diagonal && det_one; }
};

/* builds an explicit basis (doubled coordinates, integer row reduction),
   then checks the Gram matrix: integral, even diagonal, determinant 1 */
UnimodularReport check_even_unimodular(const LatticeSpec& spec);

struct AuditRow {
    std::string label;
    bool asserted{true};
    bool match{false};
    std::string detail;
};

/* Fixed small-k closed forms (k <= 6) evaluated against theta_by_cosets and
   theta_by_theorem on sample m values.  The k <= 4 rows are asserted.  The
   k = 5 form is transcribed in three readings (its printed source is
   ambiguous in one sign and drops one index from the final term); the k = 6
   form is long enough to warrant the same caution; those rows are
   informational and carry their diffs in `detail`. */
std::vector<AuditRow> specialization_audit(int kmax, ModformCache& cache);

/* the four rank-24 identifications: D24, D12^2, D8^3 against
   E4^3 + c*Delta24 with c = 384, -192, -384, and D6^4 with c = -480 */
std::vector<AuditRow> niemeier_audit(ModformCache& cache);

}  // namespace thetaglue
