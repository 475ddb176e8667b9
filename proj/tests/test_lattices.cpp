#include <doctest.h>

#include <array>
#include <functional>
#include <map>

#include <thetaglue/errors.hpp>
#include <thetaglue/lattices.hpp>

using namespace thetaglue;

namespace {

LatticeSpec make_spec(Family family, std::vector<long> m, int epsilon = 0) {
    LatticeSpec spec;
    spec.family = family;
    spec.m = std::move(m);
    spec.epsilon = epsilon;
    return spec;
}

/*
 * Counts vectors of each discriminant class of D_n directly, over doubled
 * coordinates u (all even or all odd).  Classes are told apart by coset
 * representatives: u/2 integral with even sum is the lattice itself, odd sum
 * the vector class; for half-integral u/2 the parity of sum((u_i - 1) / 2)
 * separates the two spinor classes.
 */
std::array<QSeries, 4> brute_component(long n, QExp trunc) {
    std::array<std::map<QExp, Int>, 4> acc;
    std::function<void(long, long long, long long, bool)> rec = [&](long i, long long sum,
                                                                    long long sq, bool odd) {
        if (i == n) {
            int cls;
            if (!odd) {
                cls = ((sum / 2) % 2 + 2) % 2 == 0 ? 0 : 2;
            } else {
                const long long t = (sum - n) / 2;
                cls = (t % 2 + 2) % 2 == 0 ? 1 : 3;
            }
            acc[cls][QExp{sq}] += 1;
            return;
        }
        for (long long v = odd ? 1 : 0;; v += 2) {
            const long long nsq = sq + v * v;
            if (nsq >= trunc.quarters) break;
            rec(i + 1, sum + v, nsq, odd);
            if (v != 0) rec(i + 1, sum - v, nsq, odd);
        }
    };
    rec(0, 0, 0, false);
    rec(0, 0, 0, true);
    std::array<QSeries, 4> out{QSeries(trunc), QSeries(trunc), QSeries(trunc), QSeries(trunc)};
    for (int c = 0; c < 4; ++c) {
        std::vector<std::pair<QExp, Int>> terms(acc[c].begin(), acc[c].end());
        out[c] = QSeries::from_terms(terms, trunc);
    }
    return out;
}

const std::vector<LatticeSpec>& reference_specs() {
    static const std::vector<LatticeSpec> specs = {
        make_spec(Family::Odd8m, {1}),
        make_spec(Family::Odd8m, {2}),
        make_spec(Family::Odd8m, {3}),
        make_spec(Family::Odd8m, {4}),
        make_spec(Family::Odd8m, {1, 1, 1}),
        make_spec(Family::Odd8m, {2, 1, 1}),
        make_spec(Family::Even8m4, {0, 0}),
        make_spec(Family::Even8m4, {1, 0}),
        make_spec(Family::Even8m4, {1, 1}),
        make_spec(Family::Even8m4, {2, 1}),
        make_spec(Family::Even8m4, {0, 0, 0, 0}),
        make_spec(Family::Even8m4, {1, 0, 0, 0}),
        make_spec(Family::Even8m4, {1, 1, 0, 0}),
        make_spec(Family::FourBlock, {0, 0, 0, 0}, 0),
        make_spec(Family::FourBlock, {1, 0, 0, 0}, 0),
        make_spec(Family::FourBlock, {1, 1, 0, 0}, 0),
        make_spec(Family::FourBlock, {0, 0, 0, 0}, 1),
        make_spec(Family::FourBlock, {1, 0, 0, 0}, 1),
    };
    return specs;
}

}  // namespace

TEST_CASE("spec validation enforces the family shapes") {
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Odd8m, {1, 1})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Odd8m, {0})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Odd8m, {})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Even8m4, {0})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Even8m4, {-1, 0})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::FourBlock, {0, 0, 0})), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::FourBlock, {0, 0, 0, 0}, 2)), invalid_spec);
    CHECK_THROWS_AS(validate_spec(make_spec(Family::Odd8m, {1}, 1)), invalid_spec);
    for (const LatticeSpec& spec : reference_specs()) CHECK_NOTHROW(validate_spec(spec));
}

TEST_CASE("ranks and weights") {
    CHECK(component_ranks(make_spec(Family::Odd8m, {2, 1, 1})) == std::vector<long>{16, 8, 8});
    CHECK(component_ranks(make_spec(Family::Even8m4, {1, 0})) == std::vector<long>{12, 4});
    CHECK(component_ranks(make_spec(Family::FourBlock, {1, 0, 0, 0}, 1)) ==
          std::vector<long>{14, 6, 6, 6});
    for (const LatticeSpec& spec : reference_specs()) {
        CHECK(total_rank(spec) % 8 == 0);
        CHECK(theta_weight(spec) * 8 == total_rank(spec));
    }
}

TEST_CASE("spec text round-trips and rejects malformed input") {
    for (const LatticeSpec& spec : reference_specs()) {
        const LatticeSpec back = parse_spec_text(spec_to_text(spec));
        CHECK(back.family == spec.family);
        CHECK(back.m == spec.m);
        CHECK(back.epsilon == spec.epsilon);
    }
    CHECK_THROWS_AS(parse_spec_text("family=ODD_8M\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("m=1\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family=ODD_8M\nm=1\nm=2\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family=ODD_8M\nm=1\nk=2\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family=ODD_8M\nm=1\nepsilon=0\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family=ODD_8M\nm=1\ncolor=blue\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family=NOPE\nm=1\n"), invalid_spec);
    CHECK_THROWS_AS(parse_spec_text("family ODD_8M\n"), invalid_spec);
    const LatticeSpec commented = parse_spec_text("# lattice\nfamily=ODD_8M # family\nm=1\n");
    CHECK(commented.family == Family::Odd8m);
}

TEST_CASE("glue groups close under componentwise XOR") {
    for (const LatticeSpec& spec : reference_specs()) {
        const auto group = glue_group(spec);
        CHECK(group.size() == (size_t{1} << spec.k()));
        for (const auto& x : group)
            for (const auto& y : group) {
                GlueLabel z(x.size());
                for (size_t i = 0; i < x.size(); ++i) z[i] = glue_add(x[i], y[i]);
                CHECK(std::find(group.begin(), group.end(), z) != group.end());
            }
        for (const auto& label : group) CHECK(label_min_quarters(spec, label) % 8 == 0);
    }
}

TEST_CASE("four-block glue generators are the documented quadruple") {
    const auto gens = glue_generators(make_spec(Family::FourBlock, {0, 0, 0, 0}, 0));
    REQUIRE(gens.size() == 4);
    CHECK(label_to_string(gens[0]) == "X2 O X3 X3");
    CHECK(label_to_string(gens[1]) == "X3 X2 O X3");
    CHECK(label_to_string(gens[2]) == "X3 X3 X2 O");
    CHECK(label_to_string(gens[3]) == "O X3 X3 X2");
}

TEST_CASE("coset series match direct vector counts") {
    ModformCache cache(q_int(4));
    for (long n : {2L, 4L, 6L, 8L, 12L}) {
        const auto brute = brute_component(n, cache.trunc());
        CHECK(coset_theta_component(GlueClass::O, n, cache) == brute[0]);
        CHECK(coset_theta_component(GlueClass::X1, n, cache) == brute[1]);
        CHECK(coset_theta_component(GlueClass::X2, n, cache) == brute[2]);
        CHECK(coset_theta_component(GlueClass::X3, n, cache) == brute[3]);
    }
}

TEST_CASE("known class counts for small components") {
    ModformCache cache(q_int(4));
    const QSeries o4 = coset_theta_component(GlueClass::O, 4, cache);
    CHECK(o4.coeff(q_int(0)) == 1);
    CHECK(o4.coeff(q_int(2)) == 24);
    CHECK(coset_theta_component(GlueClass::X1, 4, cache).coeff(q_int(1)) == 8);
    const QSeries o8 = coset_theta_component(GlueClass::O, 8, cache);
    CHECK(o8.coeff(q_int(2)) == 112);
    const QSeries x1_8 = coset_theta_component(GlueClass::X1, 8, cache);
    CHECK(x1_8.min_exp() == q_int(2));
    CHECK(x1_8.coeff(q_int(2)) == 128);
    CHECK(coset_theta_component(GlueClass::X2, 8, cache).coeff(q_int(1)) == 16);
    CHECK(coset_theta_component(GlueClass::X1, 8, cache) ==
          coset_theta_component(GlueClass::X3, 8, cache));
}

TEST_CASE("glued theta: integral, even, leading 1") {
    ModformCache cache(q_int(6));
    for (const LatticeSpec& spec : reference_specs()) {
        const QSeries theta = theta_by_cosets(spec, cache);
        CHECK(theta.coeff(q_int(0)) == 1);
        for (const auto& [e, c] : theta.terms()) {
            CHECK(e.quarters % 8 == 0);
            CHECK(c > 0);
        }
    }
}

TEST_CASE("theorem expansion stays weight-homogeneous and matches cosets") {
    ModformCache cache(q_int(16));
    for (const LatticeSpec& spec : reference_specs()) {
        const TheoremExpansion expansion = theorem_patterns(spec);
        for (const SymPattern& pattern : expansion.patterns)
            for (const auto& summand : pattern_summands(pattern, spec.m))
                CHECK(summand.weight == theta_weight(spec));
        CHECK(theta_by_theorem(spec, cache) == theta_by_cosets(spec, cache));
    }
}

TEST_CASE("enumeration agrees with cosets at low order") {
    ModformCache cache(q_int(4));
    for (const LatticeSpec& spec : reference_specs()) {
        const QSeries by_enum = theta_by_enumeration(spec, cache.trunc());
        CHECK(by_enum == theta_by_cosets(spec, cache));
    }
}

TEST_CASE("enumeration respects its node budget") {
    const LatticeSpec spec = make_spec(Family::Odd8m, {2});
    CHECK_THROWS_AS(theta_by_enumeration(spec, q_int(6), 10), bounds_too_large);
}

TEST_CASE("glue group size guard") {
    std::vector<long> m(21, 1);
    const LatticeSpec spec = make_spec(Family::Odd8m, std::move(m));
    CHECK_THROWS_AS(glue_group(spec), bounds_too_large);
}

TEST_CASE("root counts follow the component ranks when no glue class is short") {
    ModformCache cache(q_int(4));
    auto roots = [&](const LatticeSpec& spec) {
        return theta_by_cosets(spec, cache).coeff(q_int(2));
    };
    auto d_roots = [](const LatticeSpec& spec) {
        long long total = 0;
        for (long n : component_ranks(spec)) total += 2LL * n * (n - 1);
        return total;
    };
    auto no_short_label = [](const LatticeSpec& spec) {
        for (const auto& label : glue_group(spec)) {
            const long long min_q = label_min_quarters(spec, label);
            if (min_q != 0 && min_q <= 8) return false;
        }
        return true;
    };

    const LatticeSpec d16 = make_spec(Family::Odd8m, {2});
    CHECK(no_short_label(d16));
    CHECK(roots(d16) == Int(static_cast<long>(d_roots(d16))));

    const LatticeSpec d12d12 = make_spec(Family::Even8m4, {1, 1});
    CHECK(no_short_label(d12d12));
    CHECK(roots(d12d12) == Int(static_cast<long>(d_roots(d12d12))));

    /* D_8 glues into E_8: the spinor class sits at the root length and the
       count jumps from 112 to 240 */
    const LatticeSpec d8 = make_spec(Family::Odd8m, {1});
    CHECK_FALSE(no_short_label(d8));
    CHECK(roots(d8) == 240);
    CHECK(d_roots(d8) == 112);
}

TEST_CASE("every reference spec builds an even unimodular lattice") {
    for (const LatticeSpec& spec : reference_specs()) {
        const UnimodularReport report = check_even_unimodular(spec);
        CHECK(report.rank == total_rank(spec));
        CHECK(report.full_rank);
        CHECK(report.gram_integral);
        CHECK(report.even_diagonal);
        CHECK(report.det_one);
        CHECK(report.gram_det == 1);
        CHECK(report.pass());
    }
}

TEST_CASE("rho pair range: the proof range is the one that matches") {
    ModformCache cache(q_int(12));
    const LatticeSpec diverging = make_spec(Family::Even8m4, {1, 1, 0, 0});
    const QSeries by_cosets = theta_by_cosets(diverging, cache);
    CHECK(theta_by_theorem(diverging, cache, EvenRhoRange::AllPairs) == by_cosets);
    CHECK(theta_by_theorem(diverging, cache, EvenRhoRange::PositivePairs) != by_cosets);

    /* for one pair of blocks the two ranges coincide */
    const LatticeSpec k2 = make_spec(Family::Even8m4, {1, 1});
    CHECK(theta_by_theorem(k2, cache, EvenRhoRange::PositivePairs) ==
          theta_by_theorem(k2, cache, EvenRhoRange::AllPairs));
}

TEST_CASE("all-zero even specs reduce to half a power sum") {
    ModformCache cache(q_int(12));
    for (long l : {1L, 2L, 3L}) {
        const LatticeSpec spec = make_spec(Family::Even8m4, std::vector<long>(2 * l, 0));
        CHECK(theta_by_cosets(spec, cache) == halve_exact(cache.h(l)));
    }
}

TEST_CASE("specialization audit: asserted rows match, known-bad readings carry diffs") {
    ModformCache cache(q_int(12));
    const auto rows = specialization_audit(6, cache);
    bool saw_minus_partial = false, saw_plus_full = false;
    for (const AuditRow& row : rows) {
        if (row.asserted) CHECK_MESSAGE(row.match, row.label);
        if (row.label.find("minus-partial") != std::string::npos) {
            saw_minus_partial = true;
            CHECK_FALSE(row.match);
            CHECK(!row.detail.empty());
        }
        if (row.label.find("plus-full") != std::string::npos) {
            saw_plus_full = true;
            CHECK(row.match);
        }
    }
    CHECK(saw_minus_partial);
    CHECK(saw_plus_full);
    CHECK_THROWS_AS(specialization_audit(7, cache), std::invalid_argument);
}

TEST_CASE("the four rank-24 identifications hold") {
    ModformCache cache(q_int(16));
    for (const AuditRow& row : niemeier_audit(cache)) {
        CHECK(row.asserted);
        CHECK_MESSAGE(row.match, row.label);
    }
}
