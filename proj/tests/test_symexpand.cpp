#include <doctest.h>

#include <random>
#include <set>

#include <thetaglue/errors.hpp>
#include <thetaglue/modforms.hpp>
#include <thetaglue/symexpand.hpp>

using namespace thetaglue;

namespace {

SymPattern h_pattern(std::vector<long> sizes, long delta = 0) {
    SymPattern p;
    for (long s : sizes) p.slots.push_back({SlotRole::H, s, 0});
    p.delta_power = delta;
    return p;
}

}  // namespace

TEST_CASE("two equal blocks of size 2 over four indices give 3 summands") {
    const SymPattern p = h_pattern({2, 2});
    CHECK(assignment_count(p) == 3);
    CHECK(enumerate_assignments(p, 4).size() == 3);
}

TEST_CASE("blocks 1,1,2 over four indices give 6 summands") {
    const SymPattern p = h_pattern({1, 1, 2});
    CHECK(assignment_count(p) == 6);
    CHECK(enumerate_assignments(p, 4).size() == 6);
}

TEST_CASE("enumerated assignments always match the closed count") {
    std::mt19937 rng(60902);
    std::uniform_int_distribution<int> slots_dist(1, 4);
    std::uniform_int_distribution<int> size_dist(0, 3);
    std::uniform_int_distribution<int> role_dist(0, 1);
    std::uniform_int_distribution<int> shift_dist(-1, 2);
    for (int round = 0; round < 120; ++round) {
        SymPattern p;
        std::set<std::tuple<int, long, long>> seen;
        const int slots = slots_dist(rng);
        for (int i = 0; i < slots; ++i) {
            SymSlot slot{role_dist(rng) ? SlotRole::H : SlotRole::Rho, size_dist(rng),
                         shift_dist(rng)};
            /* a repeated empty block would make the sum ill-posed */
            if (slot.block_size == 0 &&
                !seen.insert({slot.role == SlotRole::H ? 0 : 1, slot.block_size,
                              slot.index_shift})
                     .second)
                continue;
            p.slots.push_back(slot);
        }
        if (p.slots.empty() || pattern_index_count(p) > 8) continue;
        const int k = static_cast<int>(pattern_index_count(p));
        CHECK(Int(static_cast<long>(enumerate_assignments(p, k).size())) ==
              assignment_count(p));
    }
}

TEST_CASE("index-count mismatches are rejected") {
    CHECK_THROWS_AS(enumerate_assignments(h_pattern({2, 2}), 5), size_mismatch);
}

TEST_CASE("rendering spells out the index blocks") {
    SymPattern p;
    p.slots.push_back({SlotRole::H, 2, 1});
    p.slots.push_back({SlotRole::Rho, 1, -1});
    p.slots.push_back({SlotRole::Rho, 1, -1});
    const auto assignments = enumerate_assignments(p, 4);
    REQUIRE(assignments.size() == 6);
    CHECK(render_assignment(p, assignments.front()) == "h[m1+m2+1]*rho[m3-1]*rho[m4-1]");
    std::set<std::string> rendered;
    for (const auto& a : assignments) rendered.insert(render_assignment(p, a));
    CHECK(rendered.size() == 6);
}

TEST_CASE("summands carry the grading weight") {
    SymPattern p;
    p.slots.push_back({SlotRole::H, 2, 1});
    p.slots.push_back({SlotRole::Rho, 2, -1});
    p.delta_power = 1;
    const auto summands = pattern_summands(p, {1, 2, 3, 4});
    CHECK(summands.size() == 6);
    for (const auto& s : summands) CHECK(s.weight == 1 + 2 + 3 + 4 + 1 - 1 + 3);
}

TEST_CASE("pattern evaluation multiplies the right series") {
    ModformCache cache(q_int(10));
    SymPattern p = h_pattern({1, 1});
    const QSeries direct = mul(cache.h(2), cache.h(5));
    CHECK(agree_to_shared_trunc(sym_eval_sum(p, {2, 5}, cache), direct));

    p.prefactor = Rat(3);
    CHECK(agree_to_shared_trunc(sym_eval(p, {2, 5}, cache), mul(direct, Int(3))));

    p.prefactor = make_rat(Int(1), Int(3));
    CHECK_THROWS_AS(sym_eval(p, {2, 5}, cache), non_integer_result);
}

TEST_CASE("totals cancel fractions across patterns") {
    ModformCache cache(q_int(10));
    SymPattern third = h_pattern({1});
    third.prefactor = make_rat(Int(1), Int(3));
    SymPattern two_thirds = h_pattern({1});
    two_thirds.prefactor = make_rat(Int(2), Int(3));
    /* h_3 starts with coefficient 2, so neither part is integral alone */
    CHECK_THROWS_AS(sym_eval(third, {3}, cache), non_integer_result);
    CHECK_THROWS_AS(sym_eval_total({two_thirds}, {3}, cache), non_integer_result);
    const QSeries total = sym_eval_total({third, two_thirds}, {3}, cache);
    CHECK(total == cache.h(3));
    const QSeries scaled =
        sym_eval_total({third, two_thirds}, {3}, cache, make_rat(Int(3), Int(2)));
    CHECK(scaled == halve_exact(mul(cache.h(3), Int(3))));
}

TEST_CASE("distinct monomials deduplicate equal patterns") {
    const SymPattern p = h_pattern({2, 2});
    CHECK(distinct_monomial_count({p}) == 3);
    CHECK(distinct_monomial_count({p, p}) == 3);
    SymPattern shifted = p;
    shifted.slots[0].index_shift = 1;
    CHECK(distinct_monomial_count({p, shifted}) == 3 + 6);
}

TEST_CASE("count table rows") {
    const auto rows = count_checks(6);
    CHECK(!rows.empty());
    bool any_informational = false;
    for (const auto& row : rows) {
        if (row.asserted) {
            CHECK_MESSAGE(row.pass, row.name, " l=", row.ell);
        } else {
            any_informational = true;
        }
    }
    CHECK(any_informational);
}
