#include <thetaglue/cli.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include <thetaglue/bivar.hpp>
#include <thetaglue/errors.hpp>
#include <thetaglue/lattices.hpp>
#include <thetaglue/modforms.hpp>
#include <thetaglue/symexpand.hpp>

namespace thetaglue::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBadValue = 3;
constexpr int kBounds = 4;

std::optional<long> parse_long(const std::string& text) {
    try {
        size_t pos = 0;
        const long v = std::stol(text, &pos);
        if (pos != text.size()) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void render_series(std::ostream& os, const QSeries& s, const std::string& format) {
    if (format == "qs") {
        os << to_qs_text(s);
        return;
    }
    for (const auto& [e, c] : s.terms()) {
        if (format == "csv")
            os << to_string(e) << "," << c.get_str() << "\n";
        else
            os << "q^" << to_string(e) << ": " << c.get_str() << "\n";
    }
}

/* Everything is built in a buffer first so --out either gets the whole
   output or nothing. */
int deliver(const std::string& text, const std::string& out_path, std::ostream& out,
            std::ostream& err, int code) {
    if (out_path.empty()) {
        out << text;
        return code;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "cannot open output file '" << out_path << "'\n";
        return kUsage;
    }
    file << text;
    return code;
}

struct SeriesRequest {
    enum class Kind { Theta2, Theta3, Theta4, E4, Delta24, H, Rho } kind;
    long n{0};
};

std::optional<SeriesRequest> resolve_series_name(const std::string& name) {
    using Kind = SeriesRequest::Kind;
    if (name == "theta2") return SeriesRequest{Kind::Theta2};
    if (name == "theta3") return SeriesRequest{Kind::Theta3};
    if (name == "theta4") return SeriesRequest{Kind::Theta4};
    if (name == "E4") return SeriesRequest{Kind::E4};
    if (name == "Delta24") return SeriesRequest{Kind::Delta24};
    if (name.rfind("h:", 0) == 0) {
        const auto n = parse_long(name.substr(2));
        if (n && *n >= 0) return SeriesRequest{Kind::H, *n};
        return std::nullopt;
    }
    if (name.rfind("rho:", 0) == 0) {
        const auto n = parse_long(name.substr(4));
        if (n && *n >= -1) return SeriesRequest{Kind::Rho, *n};
        return std::nullopt;
    }
    return std::nullopt;
}

int cmd_series(const std::string& name, long order, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto request = resolve_series_name(name);
    if (!request) {
        err << "unknown series '" << name
            << "' (expected theta2|theta3|theta4|E4|Delta24|h:<n>|rho:<n>)\n";
        return kUsage;
    }
    if (order < 1) {
        err << "--order must be at least 1\n";
        return kBadValue;
    }
    ModformCache cache(q_int(order));
    QSeries series = [&] {
        using Kind = SeriesRequest::Kind;
        switch (request->kind) {
            case Kind::Theta2: return cache.theta(ThetaKind::Theta2);
            case Kind::Theta3: return cache.theta(ThetaKind::Theta3);
            case Kind::Theta4: return cache.theta(ThetaKind::Theta4);
            case Kind::E4: return cache.e4();
            case Kind::Delta24: return cache.delta24();
            case Kind::H: return cache.h(request->n);
            default: return cache.rho(request->n);
        }
    }();
    std::ostringstream buf;
    buf << "# series " << name << " order=" << order << "\n";
    render_series(buf, series, format);
    return deliver(buf.str(), out_path, out, err, kOk);
}

int cmd_identities(long nmax, long order, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    if (nmax < 3) {
        err << "--nmax must be at least 3\n";
        return kBadValue;
    }
    if (order < 1) {
        err << "--order must be at least 1\n";
        return kBadValue;
    }
    ModformCache cache(q_int(order));
    std::ostringstream buf;
    buf << "# identities nmax=" << nmax << " order=" << order << "\n";
    bool all_ok = true;
    auto row = [&](const std::string& label, bool ok) {
        buf << (ok ? "PASS " : "FAIL ") << label << "\n";
        if (!ok) all_ok = false;
    };

    {
        const QSeries& t2 = cache.theta(ThetaKind::Theta2);
        const QSeries& t3 = cache.theta(ThetaKind::Theta3);
        const QSeries& t4 = cache.theta(ThetaKind::Theta4);
        row("theta2^4 + theta4^4 = theta3^4",
            agree_to_shared_trunc(add(pow(t2, 4), pow(t4, 4)), pow(t3, 4)));
    }
    row("E4 theta form = divisor form", cache.e4() == e4_divisor_series(cache.trunc()));
    if (cache.trunc() > q_int(2)) {
        const QSeries& d = cache.delta24();
        row("Delta24 = q^2 + higher order",
            !d.is_zero() && d.min_exp() == q_int(2) && d.coeff(q_int(2)) == 1);
    }
    {
        static const long expected_tau[] = {1, -24, 252, -1472, 4830, -6048};
        bool any = false, ok = true;
        for (long m = 1; m <= 6; ++m) {
            if (q_int(2 * m) >= cache.trunc()) break;
            any = true;
            ok = ok && cache.tau(m) == expected_tau[m - 1];
        }
        if (any) row("Delta24 low coefficients 1,-24,252,-1472,4830,-6048", ok);
    }

    {
        bool ok = true;
        for (long n = 1; n <= nmax; ++n) ok = ok && h_poly(n) == h_closed_poly(n);
        row("power sums h_n match closed form in Z[a,b]", ok);
    }
    {
        bool ok = true;
        for (long n = 0; n <= nmax; ++n) ok = ok && rho_poly(n) == rho_closed_poly(n);
        row("quotients rho_n match closed form in Z[a,b]", ok);
    }
    {
        bool ok = true;
        for (long n = 3; n <= nmax; ++n) ok = ok && check_recurrence_h(n);
        row("h_n = 2E h_{n-1} - E^2 h_{n-2} + Delta h_{n-3} in Z[a,b]", ok);
    }
    {
        bool ok = true;
        for (long n = 3; n <= nmax; ++n) ok = ok && check_recurrence_rho(n);
        row("rho_n = 2E rho_{n-1} - E^2 rho_{n-2} + Delta rho_{n-3} in Z[a,b]", ok);
    }
    if (nmax >= 10) {
        static const std::pair<long, const char*> h_table[] = {
            {3, "2*E^3 + 3*Delta"},
            {4, "2*E^4 + 8*Delta*E"},
            {5, "2*E^5 + 15*Delta*E^2"},
            {6, "2*E^6 + 24*Delta*E^3 + 3*Delta^2"},
            {7, "2*E^7 + 35*Delta*E^4 + 14*Delta^2*E"},
            {8, "2*E^8 + 48*Delta*E^5 + 40*Delta^2*E^2"},
            {9, "2*E^9 + 63*Delta*E^6 + 90*Delta^2*E^3 + 3*Delta^3"},
            {10, "2*E^10 + 80*Delta*E^7 + 175*Delta^2*E^4 + 20*Delta^3*E"},
        };
        static const std::pair<long, const char*> rho_table[] = {
            {3, "9*E^3 + 3*Delta"},
            {4, "11*E^4 + 11*Delta*E"},
            {5, "13*E^5 + 26*Delta*E^2"},
            {6, "15*E^6 + 50*Delta*E^3 + 3*Delta^2"},
            {7, "17*E^7 + 85*Delta*E^4 + 17*Delta^2*E"},
            {8, "19*E^8 + 133*Delta*E^5 + 57*Delta^2*E^2"},
            {9, "21*E^9 + 196*Delta*E^6 + 147*Delta^2*E^3 + 3*Delta^3"},
            {10, "23*E^10 + 276*Delta*E^7 + 322*Delta^2*E^4 + 23*Delta^3*E"},
        };
        bool ok = true;
        for (const auto& [n, expected] : h_table) ok = ok && e_delta_string(h_poly(n)) == expected;
        row("tabulated h_3..h_10 in E, Delta", ok);
        ok = true;
        for (const auto& [n, expected] : rho_table)
            ok = ok && e_delta_string(rho_poly(n)) == expected;
        row("tabulated rho_3..rho_10 in E, Delta", ok);
    }

    {
        bool ok = true;
        for (long n = 1; n <= nmax; ++n) ok = ok && cache.h(n) == cache.h_closed(n);
        row("h_n series match closed form in E4, Delta24", ok);
    }
    {
        bool ok = true;
        for (long n = 0; n <= nmax; ++n) ok = ok && cache.rho(n) == cache.rho_closed(n);
        row("rho_n series match closed form in E4, Delta24", ok);
    }
    {
        const QSeries& e = cache.e4();
        const QSeries e2 = mul(e, e);
        const QSeries d256 = mul(cache.delta24(), Int(256));
        bool ok_h = true, ok_rho = true;
        for (long n = 3; n <= nmax; ++n) {
            const QSeries rhs_h = add(sub(mul(mul(e, cache.h(n - 1)), Int(2)),
                                          mul(e2, cache.h(n - 2))),
                                      mul(d256, cache.h(n - 3)));
            ok_h = ok_h && agree_to_shared_trunc(cache.h(n), rhs_h);
            const QSeries rhs_rho = add(sub(mul(mul(e, cache.rho(n - 1)), Int(2)),
                                            mul(e2, cache.rho(n - 2))),
                                        mul(d256, cache.rho(n - 3)));
            ok_rho = ok_rho && agree_to_shared_trunc(cache.rho(n), rhs_rho);
        }
        row("h_n series recurrence with 2^8 Delta24", ok_h);
        row("rho_n series recurrence with 2^8 Delta24", ok_rho);
    }

    return deliver(buf.str(), out_path, out, err, all_ok ? kOk : kCheckFailed);
}

std::optional<LatticeSpec> load_spec_file(const std::string& path, std::ostream& err) {
    std::ifstream file(path);
    if (!file) {
        err << "cannot read spec file '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream text;
    text << file.rdbuf();
    try {
        return parse_spec_text(text.str());
    } catch (const std::exception& e) {
        err << "bad spec file '" << path << "': " << e.what() << "\n";
        return std::nullopt;
    }
}

void describe_spec(std::ostream& os, const LatticeSpec& spec) {
    os << "# family " << family_name(spec.family) << " k=" << spec.k() << " m=(";
    for (size_t i = 0; i < spec.m.size(); ++i) os << (i ? "," : "") << spec.m[i];
    os << ")";
    if (spec.family == Family::FourBlock) os << " epsilon=" << spec.epsilon;
    os << "\n# component ranks";
    for (long n : component_ranks(spec)) os << " " << n;
    os << "\n# rank " << total_rank(spec) << " weight " << theta_weight(spec) << "\n";
    const auto gens = glue_generators(spec);
    for (const auto& g : gens) os << "# glue generator " << label_to_string(g) << "\n";
    os << "# glue group order " << (1LL << spec.k()) << "\n";
}

int cmd_lattice_theta(const std::string& spec_path, long order, const std::string& methods_csv,
                      const std::string& format, const std::string& out_path, std::ostream& out,
                      std::ostream& err) {
    if (order < 1) {
        err << "--order must be at least 1\n";
        return kBadValue;
    }
    const auto spec = load_spec_file(spec_path, err);
    if (!spec) return kUsage;

    std::set<std::string> wanted;
    {
        std::istringstream ms(methods_csv);
        std::string token;
        while (std::getline(ms, token, ',')) {
            if (token == "all") {
                wanted.insert({"cosets", "theorem", "enum"});
            } else if (token == "cosets" || token == "theorem" || token == "enum") {
                wanted.insert(token);
            } else {
                err << "unknown method '" << token << "' (expected cosets|theorem|enum|all)\n";
                return kUsage;
            }
        }
    }
    if (wanted.empty()) {
        err << "--methods selected nothing\n";
        return kUsage;
    }

    std::ostringstream buf;
    describe_spec(buf, *spec);

    ModformCache cache(q_int(order));
    std::vector<std::pair<std::string, QSeries>> results;
    for (const char* method : {"cosets", "theorem", "enum"}) {
        if (!wanted.count(method)) continue;
        if (std::string(method) == "cosets")
            results.emplace_back(method, theta_by_cosets(*spec, cache));
        else if (std::string(method) == "theorem")
            results.emplace_back(method, theta_by_theorem(*spec, cache));
        else
            results.emplace_back(method, theta_by_enumeration(*spec, q_int(order)));
    }

    for (const auto& [method, series] : results) {
        buf << "# method " << method << "\n";
        render_series(buf, series, format);
    }
    bool agree = true;
    for (size_t i = 0; i < results.size(); ++i)
        for (size_t j = i + 1; j < results.size(); ++j) {
            const std::string diff = diff_to_shared_trunc(results[i].second, results[j].second);
            if (diff.empty()) {
                buf << "# agree " << results[i].first << " " << results[j].first << "\n";
            } else {
                agree = false;
                buf << "# DIFF " << results[i].first << " vs " << results[j].first << ": " << diff
                    << "\n";
            }
        }
    return deliver(buf.str(), out_path, out, err, agree ? kOk : kCheckFailed);
}

std::optional<SymPattern> parse_slots_text(const std::string& text, std::ostream& err) {
    SymPattern pattern;
    std::istringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::vector<std::string> parts;
        std::istringstream ps(token);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(part);
        if (parts.size() < 2 || parts.size() > 3) {
            err << "bad slot '" << token << "' (expected role:size or role:size:shift)\n";
            return std::nullopt;
        }
        SymSlot slot;
        if (parts[0] == "h")
            slot.role = SlotRole::H;
        else if (parts[0] == "rho")
            slot.role = SlotRole::Rho;
        else {
            err << "slot role must be h or rho, got '" << parts[0] << "'\n";
            return std::nullopt;
        }
        const auto size = parse_long(parts[1]);
        if (!size || *size < 0) {
            err << "bad slot size '" << parts[1] << "'\n";
            return std::nullopt;
        }
        slot.block_size = *size;
        if (parts.size() == 3) {
            const auto shift = parse_long(parts[2]);
            if (!shift) {
                err << "bad slot shift '" << parts[2] << "'\n";
                return std::nullopt;
            }
            slot.index_shift = *shift;
        }
        pattern.slots.push_back(slot);
    }
    if (pattern.slots.empty()) {
        err << "--slots selected nothing\n";
        return std::nullopt;
    }
    return pattern;
}

void render_pattern_expansion(std::ostream& os, const SymPattern& pattern, int k) {
    const auto assignments = enumerate_assignments(pattern, k);
    os << "# summands " << assignments.size() << " (closed count "
       << assignment_count(pattern).get_str() << ")\n";
    for (const auto& assignment : assignments)
        os << render_assignment(pattern, assignment) << "\n";
}

int cmd_sym_expand(long k, const std::string& slots_text, const std::string& spec_path,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (slots_text.empty() == spec_path.empty()) {
        err << "sym-expand needs exactly one of --slots or --spec\n";
        return kUsage;
    }
    std::ostringstream buf;
    if (!slots_text.empty()) {
        if (k < 1) {
            err << "--k must be at least 1\n";
            return kBadValue;
        }
        const auto pattern = parse_slots_text(slots_text, err);
        if (!pattern) return kUsage;
        buf << "# sym-expand k=" << k << " slots=" << slots_text << "\n";
        try {
            render_pattern_expansion(buf, *pattern, static_cast<int>(k));
        } catch (const size_mismatch& e) {
            err << e.what() << "\n";
            return kBadValue;
        }
    } else {
        const auto spec = load_spec_file(spec_path, err);
        if (!spec) return kUsage;
        describe_spec(buf, *spec);
        const TheoremExpansion expansion = theorem_patterns(*spec);
        buf << "# scale " << expansion.scale.get_str() << "\n";
        for (size_t i = 0; i < expansion.patterns.size(); ++i) {
            const SymPattern& pattern = expansion.patterns[i];
            buf << "# pattern " << i + 1 << " prefactor " << pattern.prefactor.get_str()
                << " delta_power " << pattern.delta_power << "\n";
            render_pattern_expansion(buf, pattern, static_cast<int>(spec->k()));
        }
    }
    return deliver(buf.str(), out_path, out, err, kOk);
}

int cmd_audit(const std::string& kind, long order, long kmax, long lmax,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::ostringstream buf;
    bool ok = true;
    if (kind == "counts") {
        if (lmax < 1) {
            err << "--lmax must be at least 1\n";
            return kBadValue;
        }
        buf << "# audit counts lmax=" << lmax << "\n";
        for (const CountCheckRow& row : count_checks(static_cast<int>(lmax))) {
            buf << (row.pass ? "PASS " : "FAIL ")
                << (row.asserted ? "[asserted] " : "[informational] ") << row.name
                << " l=" << row.ell << " lhs=" << row.lhs.get_str() << " rhs=" << row.rhs.get_str()
                << "\n";
            if (row.asserted && !row.pass) ok = false;
        }
    } else if (kind == "specializations" || kind == "niemeier") {
        if (order < 1) {
            err << "--order must be at least 1\n";
            return kBadValue;
        }
        if (kind == "specializations" && (kmax < 1 || kmax > 6)) {
            err << "--kmax must be between 1 and 6\n";
            return kBadValue;
        }
        ModformCache cache(q_int(order));
        buf << "# audit " << kind << " order=" << order;
        if (kind == "specializations") buf << " kmax=" << kmax;
        buf << "\n";
        const auto rows = kind == "niemeier" ? niemeier_audit(cache)
                                             : specialization_audit(static_cast<int>(kmax), cache);
        for (const AuditRow& row : rows) {
            buf << (row.match ? "MATCH " : "MISMATCH ")
                << (row.asserted ? "[asserted] " : "[informational] ") << row.label;
            if (!row.detail.empty()) buf << " :: " << row.detail;
            buf << "\n";
            if (row.asserted && !row.match) ok = false;
        }
    } else {
        err << "unknown audit kind '" << kind
            << "' (expected specializations|niemeier|counts)\n";
        return kUsage;
    }
    return deliver(buf.str(), out_path, out, err, ok ? kOk : kCheckFailed);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact theta series of even unimodular lattices glued from type-D blocks"};
    app.name("thetaglue");
    app.require_subcommand(1);

    std::string series_name, series_format = "plain", series_out;
    long series_order = 32;
    auto* series_cmd = app.add_subcommand("series", "print one named q-series");
    series_cmd->add_option("name", series_name, "theta2|theta3|theta4|E4|Delta24|h:<n>|rho:<n>")
        ->required();
    series_cmd->add_option("--order", series_order, "truncation order in integer q powers");
    series_cmd->add_option("--format", series_format)
        ->check(CLI::IsMember({"plain", "csv", "qs"}));
    series_cmd->add_option("--out", series_out, "write output to a file");

    long id_nmax = 10, id_order = 32;
    std::string id_out;
    auto* id_cmd = app.add_subcommand("identities", "check the h_n / rho_n identity family");
    id_cmd->add_option("--nmax", id_nmax, "largest index checked");
    id_cmd->add_option("--order", id_order, "series truncation order");
    id_cmd->add_option("--out", id_out, "write output to a file");

    std::string lt_spec, lt_methods = "cosets,theorem", lt_format = "plain", lt_out;
    long lt_order = 32;
    auto* lt_cmd = app.add_subcommand("lattice-theta", "compute a glued lattice theta series");
    lt_cmd->add_option("--spec", lt_spec, "lattice spec file")->required();
    lt_cmd->add_option("--order", lt_order, "series truncation order");
    lt_cmd->add_option("--methods", lt_methods, "comma list of cosets|theorem|enum, or all");
    lt_cmd->add_option("--format", lt_format)->check(CLI::IsMember({"plain", "csv", "qs"}));
    lt_cmd->add_option("--out", lt_out, "write output to a file");

    long se_k = 0;
    std::string se_slots, se_spec, se_out;
    auto* se_cmd = app.add_subcommand("sym-expand", "list the summands of a sym pattern");
    se_cmd->add_option("--k", se_k, "number of m-indices");
    se_cmd->add_option("--slots", se_slots, "pattern, e.g. h:2:1,rho:1:-1");
    se_cmd->add_option("--spec", se_spec, "expand the theorem patterns of a lattice spec");
    se_cmd->add_option("--out", se_out, "write output to a file");

    std::string audit_kind, audit_out;
    long audit_order = 32, audit_kmax = 6, audit_lmax = 8;
    auto* audit_cmd = app.add_subcommand("audit", "run a transcription audit table");
    audit_cmd->add_option("kind", audit_kind, "specializations|niemeier|counts")->required();
    audit_cmd->add_option("--order", audit_order, "series truncation order");
    audit_cmd->add_option("--kmax", audit_kmax, "largest k for specializations");
    audit_cmd->add_option("--lmax", audit_lmax, "largest l for counts");
    audit_cmd->add_option("--out", audit_out, "write output to a file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (series_cmd->parsed())
            return cmd_series(series_name, series_order, series_format, series_out, out, err);
        if (id_cmd->parsed()) return cmd_identities(id_nmax, id_order, id_out, out, err);
        if (lt_cmd->parsed())
            return cmd_lattice_theta(lt_spec, lt_order, lt_methods, lt_format, lt_out, out, err);
        if (se_cmd->parsed()) return cmd_sym_expand(se_k, se_slots, se_spec, se_out, out, err);
        if (audit_cmd->parsed())
            return cmd_audit(audit_kind, audit_order, audit_kmax, audit_lmax, audit_out, out, err);
    } catch (const bounds_too_large& e) {
        err << e.what() << "\n";
        return kBounds;
    } catch (const invalid_spec& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kCheckFailed;
    }
    err << "no verb given\n";
    return kUsage;
}

}
