#include "arsupp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "arsupp/charp.hpp"

namespace arsupp::sweep {

std::string_view check_name(Check c) noexcept {
    switch (c) {
        case Check::DegreeBound: return "degree-bound";
        case Check::ExtensionConsistency: return "extension-consistency";
        case Check::MultiplicityMatch: return "multiplicity-match";
        case Check::DivisibilityProbe: return "divisibility-probe";
    }
    return "unknown";
}

std::vector<Check> all_checks() {
    return {Check::DegreeBound, Check::ExtensionConsistency, Check::MultiplicityMatch, Check::DivisibilityProbe};
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        std::string piece = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (!piece.empty()) out.push_back(std::move(piece));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "plan key '" + key + "' expects a nonnegative integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "off" || value == "no" || value == "0") return false;
    fail(ErrorCode::InvalidArgument, "plan key '" + key + "' expects a boolean, got '" + value + "'");
}

Check parse_check(const std::string& name) {
    for (Check c : all_checks())
        if (check_name(c) == name) return c;
    fail(ErrorCode::InvalidArgument, "unknown check '" + name + "'");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

weyl::SL2Mat parse_sl2(std::string_view text) {
    const std::string t = trim(text);
    if (t == "identity") return weyl::SL2Mat::identity();
    if (t == "fourier") return weyl::SL2Mat::fourier();
    if (t == "shear") return weyl::SL2Mat::shear();
    const auto parts = split(t, ',');
    if (parts.size() != 4) fail(ErrorCode::InvalidArgument, "matrix '" + t + "' needs four entries a,b,c,d");
    std::array<long, 4> v{};
    for (std::size_t k = 0; k < 4; ++k) {
        try {
            std::size_t used = 0;
            v[k] = std::stol(parts[k], &used);
            if (used != parts[k].size()) throw std::invalid_argument(parts[k]);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "matrix entry '" + parts[k] + "' is not an integer");
        }
    }
    return weyl::SL2Mat::make(v[0], v[1], v[2], v[3]);
}

SweepPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir) {
    SweepPlan plan;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidArgument, "plan line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "operator") {
            plan.operator_text = value;
        } else if (key == "operator_file") {
            plan.operator_text = trim(read_file(base_dir / value));
        } else if (key == "p_min") {
            plan.p_min = parse_unsigned(key, value);
        } else if (key == "p_max") {
            plan.p_max = parse_unsigned(key, value);
        } else if (key == "e") {
            plan.e = static_cast<int>(parse_unsigned(key, value));
        } else if (key == "checks") {
            plan.checks.clear();
            for (const auto& c : split(value, ',')) plan.checks.push_back(parse_check(c));
        } else if (key == "sl2") {
            plan.sl2.clear();
            for (const auto& m : split(value, ';')) plan.sl2.push_back(parse_sl2(m));
        } else if (key == "output") {
            plan.output = value;
        } else if (key == "format") {
            if (value != "json" && value != "csv")
                fail(ErrorCode::InvalidArgument, "format must be json or csv, got '" + value + "'");
            plan.format = value;
        } else if (key == "jobs") {
            plan.jobs = static_cast<unsigned>(parse_unsigned(key, value));
        } else if (key == "seed") {
            plan.seed = parse_unsigned(key, value);
        } else if (key == "ext_samples") {
            plan.ext_samples = static_cast<int>(parse_unsigned(key, value));
        } else if (key == "timings") {
            plan.timings = parse_bool(key, value);
        } else {
            fail(ErrorCode::InvalidArgument, "unknown plan key '" + key + "' on line " + std::to_string(lineno));
        }
    }
    if (plan.operator_text.empty()) fail(ErrorCode::InvalidArgument, "plan has no operator");
    if (plan.p_min > plan.p_max) fail(ErrorCode::InvalidArgument, "p_min exceeds p_max");
    if (plan.e < 2 || plan.e > ff::kMaxDegree)
        fail(ErrorCode::InvalidArgument, "e must lie in [2, " + std::to_string(ff::kMaxDegree) + "]");
    return plan;
}

SweepPlan load_plan(const std::filesystem::path& path) {
    return parse_plan(read_file(path), path.parent_path());
}

std::vector<ff::Word> primes_in_range(ff::Word lo, ff::Word hi) {
    std::vector<ff::Word> out;
    for (ff::Word p = std::max<ff::Word>(lo, 2); p <= hi; ++p)
        if (ff::is_prime(p)) out.push_back(p);
    return out;
}

bool PrimeEntry::checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) {
        return c.first == Check::DivisibilityProbe || c.second;
    });
}

namespace {

double median_ms(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

template <class Fn>
double time_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool wants(const SweepPlan& plan, Check c) {
    return std::find(plan.checks.begin(), plan.checks.end(), c) != plan.checks.end();
}

PrimeEntry process_prime(const SweepPlan& plan, const weyl::RationalOp& op, ff::Word p) {
    PrimeEntry entry;
    entry.p = p;
    try {
        const ff::Field field = ff::make_field(p);
        const weyl::FieldOp fop = weyl::reduce(op, field);
        charp::CurveOptions opts;
        opts.seed = plan.seed ^ p;
        const charp::SupportCurve curve = charp::support_curve(fop, field, opts);
        const curves::BivarPoly& d = curve.poly;
        entry.curve = curves::curve_text(d);

        ff::FieldElement pdet;
        std::vector<double> times;
        for (int r = 0; r < 3; ++r) times.push_back(time_ms([&] { pdet = charp::p_determinant(fop, field); }));
        entry.det_time_ms = median_ms(times);
        entry.pdet = pdet.to_string();

        entry.report = curves::curve_report(d);
        entry.fourier_mult = curves::germ_multiplicity_y0(curves::substitute(d, weyl::SL2Mat::fourier()));
        entry.p_power_flag = curves::p_power_divisibility(d, 1).has_value();

        for (const auto& g : plan.sl2) {
            const weyl::FieldOp image = weyl::reduce(weyl::sl2_act(g, op), field);
            entry.operator_mults.push_back(weyl::germ_multiplicity_y0(image));
            entry.curve_mults.push_back(curves::germ_multiplicity_y0(curves::substitute(d, g)));
        }

        for (Check c : plan.checks) {
            bool ok = true;
            switch (c) {
                case Check::DegreeBound: ok = d.total_degree() <= curve.degree_bound; break;
                case Check::ExtensionConsistency:
                    ok = charp::extension_consistency(fop, curve, plan.ext_samples, plan.seed + p, plan.e).passed();
                    break;
                case Check::MultiplicityMatch: ok = entry.operator_mults == entry.curve_mults; break;
                case Check::DivisibilityProbe: ok = entry.p_power_flag; break;
            }
            entry.checks.emplace_back(c, ok);
        }
        entry.ok = true;
    } catch (const Error& err) {
        entry.ok = false;
        entry.error_code = std::string(code_name(err.code()));
        entry.error_message = err.what();
    }
    return entry;
}

std::string newton_key(const std::vector<curves::Point>& v) {
    std::string s;
    for (const auto& pt : v) s += "(" + std::to_string(pt[0]) + "," + std::to_string(pt[1]) + ")";
    return s;
}

std::optional<ff::Word> stable_from(const std::vector<PrimeEntry>& entries, const std::vector<std::string>& values) {
    if (entries.empty()) return std::nullopt;
    std::size_t start = values.size() - 1;
    while (start > 0 && values[start - 1] == values.back()) --start;
    return entries[start].p;
}

void summarize(SweepResult& res) {
    std::vector<std::pair<std::string, std::vector<std::string>>> series;
    auto add = [&](const std::string& name, auto fn) {
        std::vector<std::string> vals;
        for (const auto& e : res.entries) vals.push_back(e.ok ? fn(e) : "error:" + e.error_code);
        series.emplace_back(name, std::move(vals));
    };
    add("degree", [](const PrimeEntry& e) { return std::to_string(e.report->degree); });
    add("newton", [](const PrimeEntry& e) { return newton_key(e.report->newton_vertices); });
    add("y0_mult", [](const PrimeEntry& e) { return std::to_string(e.report->y0_mult); });
    for (std::size_t k = 0; k < res.plan.sl2.size(); ++k) {
        add("mult:" + res.plan.sl2[k].label(), [k](const PrimeEntry& e) { return std::to_string(e.curve_mults[k]); });
    }
    add("squarefree", [](const PrimeEntry& e) { return std::string(e.report->squarefree ? "1" : "0"); });
    add("p_power", [](const PrimeEntry& e) { return std::string(e.p_power_flag ? "1" : "0"); });
    if (wants(res.plan, Check::MultiplicityMatch))
        add("multiplicity_match", [](const PrimeEntry& e) {
            return std::string(e.operator_mults == e.curve_mults ? "1" : "0");
        });

    res.stability.clear();
    res.stable_from.reset();
    for (const auto& [name, vals] : series) {
        Stability s{name, stable_from(res.entries, vals)};
        if (s.stable_from && (!res.stable_from || *s.stable_from > *res.stable_from)) res.stable_from = s.stable_from;
        res.stability.push_back(std::move(s));
    }
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
    const weyl::RationalOp op = weyl::parse_operator(plan.operator_text);
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    SweepResult res;
    res.plan = plan;
    res.degree_bound = op.order_bound();
    if (plan.p_min <= static_cast<ff::Word>(res.degree_bound))
        fail(ErrorCode::PrimeTooSmall, "p_min = " + std::to_string(plan.p_min) +
                                           " must exceed the operator degree N = " +
                                           std::to_string(res.degree_bound));

    const std::vector<ff::Word> primes = primes_in_range(plan.p_min, plan.p_max);
    res.entries.resize(primes.size());
    unsigned jobs = plan.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : plan.jobs;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(primes.size(), 1)));

    // Workers fill disjoint slots indexed by prime order, so the merged
    // result does not depend on scheduling.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) res.entries[i] = process_prime(plan, op, primes[i]);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    summarize(res);
    return res;
}

nlohmann::ordered_json result_json(const SweepResult& res) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["operator"] = res.plan.operator_text;
    j["degree_bound"] = res.degree_bound;
    j["p_min"] = res.plan.p_min;
    j["p_max"] = res.plan.p_max;
    j["e"] = res.plan.e;
    auto checks = ordered_json::array();
    for (Check c : res.plan.checks) checks.push_back(std::string(check_name(c)));
    j["checks"] = std::move(checks);
    auto sl2 = ordered_json::array();
    for (const auto& g : res.plan.sl2) sl2.push_back(g.label());
    j["sl2"] = std::move(sl2);

    auto primes = ordered_json::array();
    for (const auto& e : res.entries) {
        ordered_json pe;
        pe["p"] = e.p;
        pe["ok"] = e.ok;
        if (!e.ok) {
            pe["error"] = {{"code", e.error_code}, {"message", e.error_message}};
        } else {
            pe["curve"] = e.curve;
            pe["pdet"] = e.pdet;
            pe["report"] = curves::report_json(*e.report);
            pe["operator_mults"] = e.operator_mults;
            pe["curve_mults"] = e.curve_mults;
            ordered_json cj;
            for (const auto& [c, ok] : e.checks) cj[std::string(check_name(c))] = ok;
            pe["checks"] = std::move(cj);
            if (res.plan.timings) pe["det_time_ms"] = e.det_time_ms;
        }
        primes.push_back(std::move(pe));
    }
    j["primes"] = std::move(primes);

    ordered_json st;
    for (const auto& s : res.stability) {
        if (s.stable_from)
            st[s.invariant] = *s.stable_from;
        else
            st[s.invariant] = nullptr;
    }
    j["stability"] = std::move(st);
    if (res.stable_from)
        j["stable_from"] = *res.stable_from;
    else
        j["stable_from"] = nullptr;
    return j;
}

std::string result_csv(const SweepResult& res) {
    std::ostringstream os;
    os << "p,degree,y0_mult,fourier_mult,squarefree,p_power_flag,det_time_ms\n";
    for (const auto& e : res.entries) {
        os << e.p << ',';
        if (!e.ok) {
            os << "error:" << e.error_code << ",,,,,\n";
            continue;
        }
        os << e.report->degree << ',' << e.report->y0_mult << ',' << e.fourier_mult << ','
           << (e.report->squarefree ? 1 : 0) << ',' << (e.p_power_flag ? 1 : 0) << ',';
        if (res.plan.timings) os << std::fixed << std::setprecision(3) << e.det_time_ms << std::defaultfloat;
        os << '\n';
    }
    return os.str();
}

std::string serialize(const SweepResult& res) {
    if (res.plan.format == "csv") return result_csv(res);
    return result_json(res).dump(2) + "\n";
}

std::vector<BenchRow> benchmark_linear(const weyl::RationalOp& op, const std::vector<ff::Word>& primes, int reps) {
    constexpr double kNegligibleMs = 0.05;
    std::vector<BenchRow> rows;
    for (ff::Word p : primes) {
        const ff::Field field = ff::make_field(p);
        const weyl::FieldOp fop = weyl::reduce(op, field);
        std::vector<double> times;
        for (int r = 0; r < std::max(reps, 1); ++r)
            times.push_back(time_ms([&] { (void)charp::p_determinant(fop, field); }));
        BenchRow row{p, median_ms(times), std::nullopt};
        if (!rows.empty() && rows.back().ms >= kNegligibleMs && row.ms >= kNegligibleMs)
            row.ratio = row.ms / rows.back().ms;
        rows.push_back(row);
    }
    return rows;
}

weyl::RationalOp random_operator(int n, std::uint64_t seed) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "degree must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    weyl::RationalOp op;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) op.add_term({i, j}, Rational(coeff(rng)));
    std::uniform_int_distribution<int> lead(1, 9);
    if (!op.find({0, n})) op.add_term({0, n}, Rational(lead(rng)));
    return op;
}

std::vector<std::string> load_corpus(const std::filesystem::path& path) {
    std::vector<std::string> out;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace arsupp::sweep
