// polya: analyze one extension, scan families of fields, or run a verification suite.
#include <polya/polya/report.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

using namespace polya;

namespace {

constexpr const char* csv_version = "# polya-scan v1";

struct RunConfig {
    std::string field;
    std::string base = "Q";
    std::string S = "oo";
    std::string range;
    std::string out;
    std::string format = "json";
    long budget = 200;
    std::string suite;
};

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

/// "Q", "K", "sub=i" (i = 1, 2, 3), "sub=<radicand>" or a field spec of a subfield.
Subfield parse_base(const Field& K, const std::string& spec)
{
    std::string s = trim(spec);
    if (s == "Q")
        return K->subfield(0);
    if (s == "K")
        return K->self();
    if (s.rfind("sub=", 0) == 0) {
        Int r(s.substr(4));
        if (K->kind() == FieldKind::biquadratic && r >= 1 && r <= 3)
            return K->subfield(r.get_ui());
        if (auto i = K->subfield_by_radicand(r))
            return K->subfield(*i);
        throw usage_error("no subfield with radicand " + r.get_str() + " in " + K->name());
    }
    Field F = parse_field(s);
    if (F == K)
        return K->self();
    if (F->kind() == FieldKind::quadratic)
        if (auto i = K->subfield_by_radicand(F->d()))
            return K->subfield(*i);
    throw usage_error(F->name() + " is not a subfield of " + K->name());
}

/// "oo,p,(p,i),..." over the base field F; a bare p means every prime of F above p.
std::vector<PrimeIdeal> parse_S(const Field& F, const std::string& spec)
{
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : spec) {
        if (c == '(')
            ++depth;
        if (c == ')')
            --depth;
        if (c == ',' && depth == 0) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    items.push_back(trim(cur));
    if (items.empty() || items.front() != "oo")
        throw usage_error("S must start with 'oo' (all archimedean places)");
    std::vector<PrimeIdeal> out;
    auto add = [&](const PrimeIdeal& q) {
        if (!contains_prime(out, q))
            out.push_back(q);
    };
    for (std::size_t i = 1; i < items.size(); ++i) {
        const std::string& it = items[i];
        try {
            if (!it.empty() && it.front() == '(') {
                auto comma = it.find(',');
                if (comma == std::string::npos || it.back() != ')')
                    throw usage_error("bad prime selector '" + it + "'");
                Int p(trim(it.substr(1, comma - 1)));
                long idx = std::stol(trim(it.substr(comma + 1, it.size() - comma - 2)));
                const auto& ps = primes_above(F, p);
                if (idx < 0 || static_cast<std::size_t>(idx) >= ps.size())
                    throw usage_error("there is no prime " + it + " in " + F->name());
                add(ps[static_cast<std::size_t>(idx)]);
            } else {
                for (const auto& q : primes_above(F, Int(it)))
                    add(q);
            }
        } catch (const std::invalid_argument& e) {
            throw usage_error("bad S entry '" + it + "': " + e.what());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string describe(const FgAbGroup& g) { return g.describe(); }

Json units_json(const Field& K, const std::vector<PrimeIdeal>& S)
{
    Json out = Json::array();
    SUnitGroup U(K, S);
    for (const auto& u : U.generators()) {
        Json coords = Json::array();
        for (const auto& c : u.int_coords())
            coords.push_back(int_json(c));
        out.push_back(Json{{"element", u.str()}, {"coords", coords}, {"norm", u.norm().get_str()}});
    }
    return out;
}

std::ostream& open_out(const RunConfig& cfg, std::ofstream& file)
{
    if (cfg.out.empty())
        return std::cout;
    file.open(cfg.out);
    if (!file)
        throw usage_error("cannot open " + cfg.out);
    return file;
}

int cmd_analyze(const RunConfig& cfg)
{
    Field K = parse_field(cfg.field);
    Subfield F = parse_base(K, cfg.base);
    auto S = parse_S(F.field, cfg.S);
    BrzReport rep = brz_verify(K, F, S, cfg.budget);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    if (cfg.format == "json") {
        Json j = report_json(rep);
        j["units"] = units_json(K, lift_primes(K, F, S));
        os << j.dump(2) << "\n";
    } else {
        os << csv_version << "\n" << "check,lhs,rhs,verdict\n";
        for (const auto& c : rep.checks)
            os << c.name << "," << c.lhs << "," << c.rhs << "," << verdict_name(c.verdict) << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

/// Runs f(i) for i in [0, n) on a pool of threads; results keep index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& f)
{
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;)
                out[i] = f(i);
        });
    for (auto& t : pool)
        t.join();
    return out;
}

struct ScanRange {
    bool biquadratic = false;
    long lo = 0;
    long hi = -1;
};

/// "A..B" for quadratic fields Q(sqrt d); "biquadratic:A..B" for all pairs m1 < m2.
ScanRange parse_range(const std::string& spec)
{
    ScanRange r;
    std::string s = trim(spec);
    if (s.rfind("biquadratic:", 0) == 0) {
        r.biquadratic = true;
        s = s.substr(12);
    } else if (s.rfind("quadratic:", 0) == 0) {
        s = s.substr(10);
    }
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw usage_error("range must look like A..B");
    try {
        r.lo = std::stol(s.substr(0, dots));
        r.hi = std::stol(s.substr(dots + 2));
    } catch (const std::exception&) {
        throw usage_error("range must look like A..B");
    }
    return r;
}

std::vector<Field> scan_fields(const ScanRange& r)
{
    std::vector<Field> out;
    auto ok = [](long d) { return d != 0 && d != 1 && is_squarefree(Int(d)); };
    if (!r.biquadratic) {
        for (long d = r.lo; d <= r.hi; ++d)
            if (ok(d))
                out.push_back(make_quadratic(d));
        return out;
    }
    for (long a = r.lo; a <= r.hi; ++a)
        for (long b = a + 1; b <= r.hi; ++b) {
            if (!ok(a) || !ok(b) || is_square(Int(a * b)))
                continue;
            Field K = make_biquadratic(a, b);
            if (std::find(out.begin(), out.end(), K) == out.end())
                out.push_back(K);
        }
    return out;
}

const char* scan_checks[] = {"brz_a", "brz_b", "brz_d", "herbrand"};

std::string scan_row(const Field& K, const std::string& S_spec, long budget)
{
    std::ostringstream row;
    if (K->kind() == FieldKind::quadratic)
        row << K->d();
    else
        row << K->m1() << ";" << K->m2();
    try {
        Subfield F = K->subfield(0);
        BrzReport rep = brz_verify(K, F, parse_S(F.field, S_spec), budget);
        auto ord = [&](const char* n) {
            const FgAbGroup* g = rep.group(n);
            return g && g->order() ? g->order()->get_str() : std::string("?");
        };
        row << "," << class_group(K).order() << "," << ord("Po") << "," << ord("H1") << "," << ord("Ram") << ","
            << ord("Ost");
        for (const char* c : scan_checks) {
            const CheckResult* r = rep.check(c);
            row << "," << (r ? verdict_name(r->verdict) : "n/a");
        }
        row << ",ok";
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        row << ",,,,,";
        for (std::size_t i = 0; i < std::size(scan_checks); ++i)
            row << ",undecided";
        row << ",error: " << msg;
    }
    return row.str();
}

int cmd_scan(const RunConfig& cfg)
{
    if (cfg.format != "csv")
        throw usage_error("scan writes CSV; use --format csv");
    ScanRange r = parse_range(cfg.range);
    parse_S(rationals(), cfg.S);
    auto fields = scan_fields(r);
    auto rows = parallel_map<std::string>(fields.size(), [&](std::size_t i) { return scan_row(fields[i], cfg.S, cfg.budget); });
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    os << csv_version << "\n";
    os << (r.biquadratic ? "m1;m2" : "d") << ",h,po_S,h1,prod_e,ost_S";
    for (const char* c : scan_checks)
        os << "," << c;
    os << ",status\n";
    bool all = true;
    for (const auto& row : rows) {
        os << row << "\n";
        all = all && row.find("fail") == std::string::npos && row.find("undecided") == std::string::npos;
    }
    return all ? 0 : 1;
}

struct SuiteLine {
    std::string instance;
    std::string check;
    std::string lhs;
    std::string rhs;
    Verdict verdict;
};

void add_report(std::vector<SuiteLine>& out, const BrzReport& r, std::initializer_list<const char*> names)
{
    for (const char* n : names) {
        const CheckResult* c = r.check(n);
        std::string inst = r.field + " / " + r.base + " [" + r.S + "]";
        if (c)
            out.push_back({inst, n, c->lhs.get_str(), c->rhs.get_str(), c->verdict});
        else
            out.push_back({inst, n, "-", "-", Verdict::undecided});
    }
}

SuiteLine expect_group(const std::string& inst, const std::string& name, const FgAbGroup* g, const FgAbGroup& want)
{
    std::string have = g ? describe(*g) : "?";
    return {inst, name, have, describe(want), g && g->isomorphic_to(want) ? Verdict::pass : Verdict::fail};
}

std::vector<PrimeIdeal> rational_S(std::initializer_list<long> ps)
{
    std::vector<PrimeIdeal> out;
    for (long p : ps)
        out.push_back(primes_above(rationals(), p).front());
    return out;
}

std::vector<SuiteLine> suite_golden(long budget)
{
    std::vector<SuiteLine> out;
    FgAbGroup z2 = FgAbGroup::from_invariants({2}), triv = FgAbGroup::trivial();
    Field K = make_quadratic(-5);
    Subfield Q = K->subfield(0);
    BrzReport r1 = brz_verify(K, Q, {}, budget);
    out.push_back(expect_group("Q(sqrt -5) / Q [oo]", "Cl", r1.group("Cl(K)"), z2));
    out.push_back(expect_group("Q(sqrt -5) / Q [oo]", "Po", r1.group("Po"), z2));
    out.push_back(expect_group("Q(sqrt -5) / Q [oo]", "H1", r1.group("H1"), z2));
    out.push_back(expect_group("Q(sqrt -5) / Q [oo]", "Ker", r1.group("Ker"), triv));
    add_report(out, r1, {"brz_a", "brz_b", "brz_d", "herbrand"});
    BrzReport r2 = brz_verify(K, Q, rational_S({2}), budget);
    out.push_back(expect_group("Q(sqrt -5) / Q [oo,2]", "Po", r2.group("Po"), triv));
    out.push_back(expect_group("Q(sqrt -5) / Q [oo,2]", "Ost", r2.group("Ost"), triv));
    out.push_back(expect_group("Q(sqrt -5) / Q [oo,2]", "H1", r2.group("H1"), z2));
    add_report(out, r2, {"brz_a", "brz_b", "brz_d"});
    for (auto [d, ps] : {std::pair{-1L, rational_S({2})}, {-5L, rational_S({2, 5})}}) {
        Field L = make_quadratic(d);
        CheckResult c = hilbert94_check(L, L->subfield(0), ps);
        out.push_back({L->name() + " / Q [" + describe_S(L->subfield(0), ps) + "]", c.name, c.lhs.get_str(),
                       c.rhs.get_str(), c.verdict});
    }
    for (const Field& C : {make_biquadratic(-1, 2), make_biquadratic(-1, 3)})
        out.push_back(expect_group(C->name() + " / Q [oo]", "Po",
                                   &relative_polya_group_S(C, C->subfield(0), {}).subgroup.group(), triv));
    Field L = make_biquadratic(-1, 5);
    BrzReport r5 = brz_verify(L, L->subfield(*L->subfield_by_radicand(-5)), {}, budget);
    out.push_back(expect_group(L->name() + " / Q(sqrt -5) [oo]", "Ker", r5.group("Ker"), z2));
    out.push_back(expect_group(L->name() + " / Q(sqrt -5) [oo]", "Ost", r5.group("Ost"), triv));
    add_report(out, r5, {"brz_a", "ikp"});
    return out;
}

std::vector<SuiteLine> suite_scan_quadratic(long budget)
{
    auto fields = scan_fields({false, -300, 300});
    auto reps = parallel_map<std::vector<BrzReport>>(fields.size(), [&](std::size_t i) {
        const Field& K = fields[i];
        return std::vector<BrzReport>{brz_verify(K, K->subfield(0), {}, budget),
                                      brz_verify(K, K->subfield(0), rational_S({2}), budget)};
    });
    std::vector<SuiteLine> out;
    for (const auto& rs : reps)
        for (const auto& r : rs)
            add_report(out, r, {"brz_a", "brz_b", "brz_d", "herbrand"});
    return out;
}

std::vector<Field> suite_biquadratic_fields()
{
    std::vector<Field> out;
    const long ms[] = {-1, 2, -2, 3, -3, 5, -5, -7};
    for (long a : ms)
        for (long b : ms)
            if (a < b && !is_square(Int(a * b))) {
                Field K = make_biquadratic(a, b);
                if (std::find(out.begin(), out.end(), K) == out.end())
                    out.push_back(K);
            }
    return out;
}

std::vector<SuiteLine> suite_biquadratic(long budget)
{
    auto fields = suite_biquadratic_fields();
    auto per = parallel_map<std::vector<SuiteLine>>(fields.size(), [&](std::size_t i) {
        const Field& K = fields[i];
        std::vector<SuiteLine> out;
        Int h = class_group(K).order(), oracle = class_number_oracle(K);
        out.push_back({K->name(), "class_number", h.get_str(), oracle.get_str(), h == oracle ? Verdict::pass : Verdict::fail});
        for (std::size_t m = 1; m <= 3; ++m) {
            Subfield F = K->subfield(m);
            for (auto SZ : {std::vector<Int>{}, std::vector<Int>{2}}) {
                BrzReport r = brz_verify(K, F, primes_above_all(F.field, SZ), budget);
                add_report(out, r, {"brz_a", "brz_b"});
                if (r.check("brz_c"))
                    add_report(out, r, {"brz_c"});
                CheckResult fc = filtration_check(K, m, SZ);
                out.push_back({K->name() + " / " + F.field->name() + (SZ.empty() ? " [oo]" : " [oo,2]"), fc.name,
                               fc.lhs.get_str(), fc.rhs.get_str(), fc.verdict});
            }
        }
        return out;
    });
    std::vector<SuiteLine> out;
    for (auto& v : per)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<SuiteLine> suite_boundary()
{
    auto fields = scan_fields({false, -100, 100});
    for (const auto& K : suite_biquadratic_fields())
        fields.push_back(K);
    std::vector<SuiteLine> out;
    for (const Field& K : fields)
        for (auto SZ : {std::vector<Int>{}, std::vector<Int>{2}}) {
            Subfield F = K->self();
            auto S = primes_above_all(K, SZ);
            PolyaGroupS po = relative_polya_group_S(K, F, S);
            std::string inst = K->name() + " / K" + (SZ.empty() ? " [oo]" : " [oo,2]");
            out.push_back(expect_group(inst, "Po", &po.subgroup.group(), po.ambient.group()));
            FgAbGroup ost = ostrowski_quotient_S(K, F, S);
            out.push_back(expect_group(inst, "Ost", &ost, FgAbGroup::trivial()));
        }
    return out;
}

int cmd_verify(const RunConfig& cfg)
{
    std::vector<SuiteLine> lines;
    if (cfg.suite == "golden")
        lines = suite_golden(cfg.budget);
    else if (cfg.suite == "scan-quadratic")
        lines = suite_scan_quadratic(cfg.budget);
    else if (cfg.suite == "biquadratic")
        lines = suite_biquadratic(cfg.budget);
    else if (cfg.suite == "boundary")
        lines = suite_boundary();
    else
        throw usage_error("unknown suite '" + cfg.suite + "' (golden, scan-quadratic, biquadratic, boundary)");
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    std::size_t passed = 0;
    for (const auto& l : lines) {
        os << verdict_name(l.verdict) << "\t" << l.instance << "\t" << l.check << "\t" << l.lhs << "\t" << l.rhs << "\n";
        passed += l.verdict == Verdict::pass;
    }
    os << cfg.suite << ": " << passed << "/" << lines.size() << " checks pass\n";
    return passed == lines.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Polya groups, capitulation and unit cohomology of quadratic and biquadratic fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* c) {
        c->add_option("--out", cfg.out, "write output to this file");
        c->add_option("--budget", cfg.budget, "norm bound for the definition-based Polya group oracle")
            ->check(CLI::PositiveNumber);
    };
    auto* analyze = app.add_subcommand("analyze", "report for one extension K/F and set S");
    analyze->add_option("--field", cfg.field, "field, e.g. \"Q(sqrt -5)\" or \"Q(sqrt -1, sqrt 5)\"")->required();
    analyze->add_option("--base", cfg.base, "base field: Q, K, sub=<index or radicand>, or a field spec");
    analyze->add_option("--S", cfg.S, "places: oo then rational primes or (p,i) selectors");
    analyze->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    common(analyze);
    auto* scan = app.add_subcommand("scan", "one CSV row per field over Q");
    scan->add_option("--range", cfg.range, "A..B or biquadratic:A..B")->required();
    scan->add_option("--S", cfg.S, "places over Q: oo then rational primes");
    cfg.format = "json";
    scan->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    common(scan);
    auto* verify = app.add_subcommand("verify", "run a named suite");
    verify->add_option("suite", cfg.suite, "golden, scan-quadratic, biquadratic or boundary")->required();
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*analyze)
            return cmd_analyze(cfg);
        if (*scan) {
            if (scan->count("--format") == 0)
                cfg.format = "csv";
            return cmd_scan(cfg);
        }
        return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "polya: " << e.what() << "\n";
        return 2;
    }
}
