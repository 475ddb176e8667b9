#include "thetaglue/symexpand.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace thetaglue {

namespace {

Int ipow(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

Int exact_div(const Int& x, unsigned long d, const char* what) {
    if (!mpz_divisible_ui_p(x.get_mpz_t(), d))
        throw non_integer_result(std::string(what) + ": " + x.get_str() + " not divisible by " +
                                 std::to_string(d));
    return x / static_cast<long>(d);
}

/* recursive expansion over sorted slots; identical slots are kept in order of
 * their smallest index so each unordered distribution appears once */
struct Enumerator {
    std::vector<SymSlot> slots;
    std::vector<std::vector<int>> blocks;
    std::vector<SymAssignment> out;

    void fill(std::size_t pos, const std::vector<int>& pool) {
        if (pos == slots.size()) {
            out.push_back(blocks);
            return;
        }
        std::vector<int> comb;
        comb.reserve(static_cast<std::size_t>(slots[pos].block_size));
        choose(pos, pool, 0, static_cast<std::size_t>(slots[pos].block_size), comb);
    }

    void choose(std::size_t pos, const std::vector<int>& pool, std::size_t start,
                std::size_t need, std::vector<int>& comb) {
        if (need == 0) {
            if (pos > 0 && slots[pos] == slots[pos - 1] && !comb.empty() &&
                !blocks[pos - 1].empty() && comb.front() < blocks[pos - 1].front())
                return;
            std::vector<int> rest;
            rest.reserve(pool.size() - comb.size());
            std::size_t ci = 0;
            for (int v : pool) {
                if (ci < comb.size() && v == comb[ci]) {
                    ++ci;
                    continue;
                }
                rest.push_back(v);
            }
            blocks[pos] = comb;
            fill(pos + 1, rest);
            return;
        }
        for (std::size_t i = start; i + need <= pool.size(); ++i) {
            comb.push_back(pool[i]);
            choose(pos, pool, i + 1, need - 1, comb);
            comb.pop_back();
        }
    }
};

}

long pattern_index_count(const SymPattern& pattern) {
    long k = 0;
    for (const auto& slot : pattern.slots) k += slot.block_size;
    return k;
}

std::vector<SymAssignment> enumerate_assignments(const SymPattern& pattern, int k) {
    for (const auto& slot : pattern.slots)
        if (slot.block_size < 0) throw invalid_spec("negative block size");
    if (pattern_index_count(pattern) != k)
        throw size_mismatch("pattern consumes " + std::to_string(pattern_index_count(pattern)) +
                            " indices, got " + std::to_string(k));

    const std::size_t nslots = pattern.slots.size();
    std::vector<std::size_t> order(nslots);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return pattern.slots[x] < pattern.slots[y];
    });

    Enumerator en;
    en.slots.reserve(nslots);
    for (std::size_t i : order) en.slots.push_back(pattern.slots[i]);
    en.blocks.assign(nslots, {});

    std::vector<int> pool(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 1);
    en.fill(0, pool);

    std::vector<SymAssignment> result;
    result.reserve(en.out.size());
    for (const auto& sorted_assignment : en.out) {
        SymAssignment original(nslots);
        for (std::size_t s = 0; s < nslots; ++s) original[order[s]] = sorted_assignment[s];
        result.push_back(std::move(original));
    }
    std::sort(result.begin(), result.end());
    return result;
}

Int assignment_count(const SymPattern& pattern) {
    Int count = factorial(static_cast<unsigned long>(pattern_index_count(pattern)));
    std::map<SymSlot, long> multiplicity;
    for (const auto& slot : pattern.slots) {
        if (slot.block_size < 0) throw invalid_spec("negative block size");
        count /= factorial(static_cast<unsigned long>(slot.block_size));
        ++multiplicity[slot];
    }
    for (const auto& [slot, m] : multiplicity) count /= factorial(static_cast<unsigned long>(m));
    return count;
}

Int distinct_monomial_count(const std::vector<SymPattern>& patterns) {
    std::set<std::vector<SymSlot>> seen;
    Int total = 0;
    for (const auto& pattern : patterns) {
        std::vector<SymSlot> key = pattern.slots;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        SymPattern canonical;
        canonical.slots = std::move(key);
        total += assignment_count(canonical);
    }
    return total;
}

std::string render_assignment(const SymPattern& pattern, const SymAssignment& assignment) {
    if (assignment.size() != pattern.slots.size())
        throw size_mismatch("assignment has " + std::to_string(assignment.size()) +
                            " blocks for " + std::to_string(pattern.slots.size()) + " slots");
    std::string out;
    for (std::size_t i = 0; i < pattern.slots.size(); ++i) {
        const SymSlot& slot = pattern.slots[i];
        if (i) out += '*';
        out += slot.role == SlotRole::H ? "h[" : "rho[";
        std::string body;
        for (int idx : assignment[i]) {
            if (!body.empty()) body += '+';
            body += 'm' + std::to_string(idx);
        }
        if (body.empty())
            body = std::to_string(slot.index_shift);
        else if (slot.index_shift > 0)
            body += '+' + std::to_string(slot.index_shift);
        else if (slot.index_shift < 0)
            body += std::to_string(slot.index_shift);
        out += body;
        out += ']';
    }
    return out;
}

std::vector<SymSummand> pattern_summands(const SymPattern& pattern, const std::vector<long>& m) {
    const auto assignments = enumerate_assignments(pattern, static_cast<int>(m.size()));
    std::vector<SymSummand> out;
    out.reserve(assignments.size());
    for (const auto& assignment : assignments) {
        SymSummand summand;
        summand.weight = 3 * pattern.delta_power;
        summand.factors.reserve(pattern.slots.size());
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            long index = pattern.slots[i].index_shift;
            for (int mi : assignment[i]) index += m[static_cast<std::size_t>(mi) - 1];
            summand.factors.push_back({pattern.slots[i].role, index});
            summand.weight += index;
        }
        out.push_back(std::move(summand));
    }
    return out;
}

QSeries sym_eval_sum(const SymPattern& pattern, const std::vector<long>& m, ModformCache& cache) {
    if (pattern.delta_power < 0) throw invalid_spec("negative Delta power");
    const auto summands = pattern_summands(pattern, m);
    QSeries acc(cache.trunc());
    for (const auto& summand : summands) {
        QSeries prod = QSeries::one(cache.trunc());
        for (const auto& factor : summand.factors)
            prod = mul(prod, factor.role == SlotRole::H ? cache.h(factor.index)
                                                        : cache.rho(factor.index));
        acc = add(acc, prod);
    }
    for (long d = 0; d < pattern.delta_power; ++d) acc = mul(acc, cache.delta24());
    return acc.truncated(cache.trunc());
}

QSeries sym_eval(const SymPattern& pattern, const std::vector<long>& m, ModformCache& cache) {
    const QSeries sum = sym_eval_sum(pattern, m, cache);
    if (pattern.prefactor == Rat(1)) return sum;
    std::vector<std::pair<QExp, Int>> terms;
    terms.reserve(sum.terms().size());
    for (const auto& [e, c] : sum.terms()) {
        const Rat scaled = Rat(c) * pattern.prefactor;
        if (scaled.get_den() != 1)
            throw non_integer_result("prefactor leaves a fractional coefficient at q^" +
                                     to_string(e));
        terms.emplace_back(e, Int(scaled.get_num()));
    }
    return QSeries::from_terms(terms, sum.trunc());
}

QSeries sym_eval_total(const std::vector<SymPattern>& patterns, const std::vector<long>& m,
                       ModformCache& cache, const Rat& scale) {
    std::map<QExp, Rat> acc;
    QExp trunc = cache.trunc();
    for (const SymPattern& pattern : patterns) {
        const QSeries sum = sym_eval_sum(pattern, m, cache);
        trunc = std::min(trunc, sum.trunc());
        for (const auto& [e, c] : sum.terms()) acc[e] += Rat(c) * pattern.prefactor;
    }
    std::vector<std::pair<QExp, Int>> terms;
    terms.reserve(acc.size());
    for (const auto& [e, c] : acc) {
        const Rat scaled = c * scale;
        if (scaled.get_den() != 1)
            throw non_integer_result("pattern sum leaves a fractional coefficient at q^" +
                                     to_string(e));
        if (scaled != 0) terms.emplace_back(e, Int(scaled.get_num()));
    }
    return QSeries::from_terms(terms, trunc);
}

namespace {

SymPattern h_blocks(std::initializer_list<long> sizes) {
    SymPattern p;
    for (long s : sizes) p.slots.push_back({SlotRole::H, s, 0});
    return p;
}

void push_row(std::vector<CountCheckRow>& rows, std::string name, int ell, Int lhs, Int rhs,
              bool asserted = true) {
    const bool pass = lhs == rhs;
    rows.push_back({std::move(name), ell, std::move(lhs), std::move(rhs), pass, asserted});
}

}

std::vector<CountCheckRow> count_checks(int lmax) {
    if (lmax < 1) throw std::invalid_argument("count_checks: lmax must be >= 1");
    std::vector<CountCheckRow> rows;
    for (int ell = 1; ell <= lmax; ++ell) {
        const long l = ell;

        Int even_sum = 0, odd_sum = 0;
        for (long i = 0; 2 * i <= l; ++i) even_sum += binomial(l, 2 * i);
        for (long i = 0; 2 * i + 1 <= l; ++i) odd_sum += binomial(l, 2 * i + 1);
        push_row(rows, "binom-parity-sum-plus", ell, even_sum + odd_sum, pow2(l));
        push_row(rows, "binom-parity-sum-minus", ell, even_sum - odd_sum, 0);
        push_row(rows, "binom-even-half", ell, even_sum, pow2(l - 1));
        push_row(rows, "binom-odd-half", ell, odd_sum, pow2(l - 1));
        push_row(rows, "binom-even-tail", ell, even_sum - 1, pow2(l - 1) - 1);

        Int w2 = 0;
        for (long i = 0; 2 * i <= l; ++i) w2 += binomial(l, 2 * i) * pow2(l - 2 * i);
        push_row(rows, "binom-weighted-2pow", ell, w2,
                 exact_div(ipow(3, l) + 1, 2, "binom-weighted-2pow rhs"));

        Int w4 = 0;
        for (long i = 1; i <= l; ++i) w4 += binomial(2 * l + 1, 2 * i) * ipow(4, l - i);
        push_row(rows, "binom-weighted-4pow", ell, w4,
                 exact_div(ipow(3, 2 * l + 1) + 1, 4, "binom-weighted-4pow rhs") - ipow(4, l));

        /* the odd universe: 2l+1 indices */
        Int tri_even = 0, tri_odd = 0, split_unordered = 0, split_ordered = 0;
        for (long j1 = 0; j1 <= l; ++j1)
            for (long j2 = 0; j1 + j2 <= l; ++j2)
                tri_even += trinomial(2 * l + 1, 2 * j1, 2 * j2);
        for (long j1 = 0; j1 <= l - 1; ++j1)
            for (long j2 = 0; j1 + j2 <= l - 1; ++j2)
                tri_odd += trinomial(2 * l + 1, 2 * j1 + 1, 2 * j2 + 1);
        for (long j1 = 1; j1 <= l; ++j1)
            for (long j2 = j1; j1 + j2 <= l; ++j2)
                split_unordered += trinomial(2 * l + 1, 2 * j1, 2 * j2);
        for (long j1 = 1; j1 <= l; ++j1)
            for (long j2 = 1; j1 + j2 <= l; ++j2)
                split_ordered += trinomial(2 * l + 1, 2 * j1, 2 * j2);

        push_row(rows, "trinom-total-odd", ell, tri_even + tri_odd,
                 exact_div(ipow(3, 2 * l + 1) - 1, 2, "trinom-total-odd rhs"));
        push_row(rows, "trinom-even-split-unordered", ell, tri_even,
                 pow2(2 * l + 1) - 1 + split_unordered, false);
        push_row(rows, "trinom-even-split-ordered", ell, tri_even,
                 pow2(2 * l + 1) - 1 + split_ordered);

        {
            std::vector<SymPattern> pats;
            for (long i = 0; i <= (l - 1) / 2; ++i)
                pats.push_back(h_blocks({2 * i + 1, 2 * l - 2 * i - 1}));
            Int rhs = 0;
            for (long i = 0; i <= l - 1; ++i) rhs += binomial(2 * l, 2 * i + 1);
            push_row(rows, "count-hh-odd-blocks", ell, distinct_monomial_count(pats),
                     exact_div(rhs, 2, "count-hh-odd-blocks rhs"));
        }
        {
            std::vector<SymPattern> pats;
            for (long i = 1; i <= l / 2; ++i) pats.push_back(h_blocks({2 * i, 2 * l - 2 * i}));
            Int rhs = 0;
            for (long i = 1; i <= l - 1; ++i) rhs += binomial(2 * l, 2 * i);
            push_row(rows, "count-hh-even-blocks", ell, distinct_monomial_count(pats),
                     exact_div(rhs, 2, "count-hh-even-blocks rhs"));
        }
        {
            std::vector<SymPattern> pats;
            for (long j1 = 1; j1 <= l; ++j1)
                for (long j2 = j1; j1 + j2 <= l; ++j2)
                    pats.push_back(h_blocks({2 * j1, 2 * j2, 2 * (l - j1 - j2) + 1}));
            push_row(rows, "count-hhh-one-odd", ell, distinct_monomial_count(pats),
                     exact_div(split_ordered, 2, "count-hhh-one-odd rhs"));
        }
        {
            std::vector<SymPattern> pats;
            for (long j1 = 0; j1 <= l; ++j1)
                for (long j2 = j1; j2 <= l - j1 - j2 - 1; ++j2)
                    pats.push_back(h_blocks({2 * j1 + 1, 2 * j2 + 1, 2 * (l - j1 - j2) - 1}));
            push_row(rows, "count-hhh-all-odd", ell, distinct_monomial_count(pats),
                     exact_div(tri_odd, 6, "count-hhh-all-odd rhs"));
        }

        /* the even universe: 2l indices */
        Int tri_ee = 0, tri_oo = 0, tri_ee_pos = 0, tri_oo_short = 0;
        for (long j1 = 0; j1 <= l; ++j1)
            for (long j2 = 0; j1 + j2 <= l; ++j2)
                tri_ee += trinomial(2 * l, 2 * j1, 2 * j2);
        for (long j1 = 0; j1 <= l - 1; ++j1)
            for (long j2 = 0; j1 + j2 <= l - 1; ++j2)
                tri_oo += trinomial(2 * l, 2 * j1 + 1, 2 * j2 + 1);
        for (long j1 = 1; j1 <= l - 1; ++j1)
            for (long j2 = 1; j1 + j2 <= l - 1; ++j2)
                tri_ee_pos += trinomial(2 * l, 2 * j1, 2 * j2);
        for (long j1 = 0; j1 <= l - 2; ++j1)
            for (long j2 = 0; j1 + j2 <= l - 2; ++j2)
                tri_oo_short += trinomial(2 * l, 2 * j1 + 1, 2 * j2 + 1);

        Int w_pair = 0, w_diag = 0;
        for (long j = 0; j <= l - 1; ++j) {
            w_pair += binomial(2 * l, 2 * j + 1) * (pow2(2 * j) + pow2(2 * (l - j - 1)));
            w_diag += binomial(2 * l, 2 * j + 1) * pow2(2 * j + 1);
        }
        const Int even_total = exact_div(ipow(3, 2 * l) - 1, 2, "even universe total");
        push_row(rows, "binom-odd-weighted-2pow-pair", ell, w_pair, even_total);
        push_row(rows, "binom-odd-weighted-2pow-diag", ell, w_diag, even_total);
        push_row(rows, "trinom-even-reduction", ell, tri_ee,
                 3 * (pow2(2 * l - 1) - 1) + tri_ee_pos);
        push_row(rows, "trinom-odd-reduction", ell, tri_oo, pow2(2 * l - 1) + tri_oo_short);
        push_row(rows, "trinom-total-even", ell, tri_ee + tri_oo,
                 exact_div(ipow(3, 2 * l) + 1, 2, "even universe total"));
        /* the printed closing constant of this identity reuses the odd-universe
           value; (-1)^{2l} = +1 makes the true total (3^{2l}+1)/2 */
        push_row(rows, "trinom-total-even-printed", ell, tri_ee + tri_oo, even_total,
                 false);

        {
            std::vector<SymPattern> pats;
            for (long j1 = 1; j1 <= l - 1; ++j1)
                for (long j2 = j1; j1 + j2 <= l - 1; ++j2)
                    pats.push_back(h_blocks({2 * j1, 2 * j2, 2 * (l - j1 - j2)}));
            push_row(rows, "count-hhh-all-even", ell, distinct_monomial_count(pats),
                     exact_div(tri_ee_pos, 6, "count-hhh-all-even rhs"));
        }
        {
            std::vector<SymPattern> pats;
            for (long j1 = 0; j1 <= l - 2; ++j1)
                for (long j2 = j1; j1 + j2 <= l - 2; ++j2)
                    pats.push_back(h_blocks({2 * j1 + 1, 2 * j2 + 1, 2 * (l - j1 - j2 - 1)}));
            push_row(rows, "count-hhh-two-odd", ell, distinct_monomial_count(pats),
                     exact_div(tri_oo_short, 2, "count-hhh-two-odd rhs"));
        }
    }
    return rows;
}

}
