#include "arsupp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arsupp/charp.hpp"
#include "arsupp/curves.hpp"
#include "arsupp/expr.hpp"
#include "arsupp/linalg.hpp"
#include "arsupp/probe.hpp"
#include "arsupp/qtorus.hpp"
#include "arsupp/sweep.hpp"
#include "arsupp/weyl.hpp"

namespace arsupp::cli {

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::SyntaxError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::IoError: return kExitParse;
        case ErrorCode::ConsistencyFailure: return kExitConsistency;
        default: return kExitArithmetic;
    }
}

namespace {

using ff::Field;
using ff::FieldElement;

struct FieldOptions {
    ff::Word p = 0;
    int e = 1;
    std::string modulus;
};

void add_field_flags(CLI::App& app, FieldOptions& f, bool prime_required) {
    auto* opt = app.add_option("-p,--prime", f.p, "characteristic");
    if (prime_required) opt->required();
    app.add_option("-e,--ext", f.e, "extension degree of the coefficient field")->check(CLI::Range(1, ff::kMaxDegree));
    app.add_option("--modulus", f.modulus, "ascending coefficients c0,...,ce of the field modulus");
}

Field make_field(const FieldOptions& f) {
    std::optional<std::vector<ff::Word>> modulus;
    if (!f.modulus.empty()) {
        std::vector<ff::Word> coeffs;
        std::stringstream ss(f.modulus);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                coeffs.push_back(std::stoull(item));
            } catch (const std::exception&) {
                fail(ErrorCode::InvalidArgument, "modulus coefficient '" + item + "' is not a nonnegative integer");
            }
        }
        modulus = std::move(coeffs);
    }
    return ff::make_field(f.p, f.e, modulus);
}

// Elements of F_{p^e} written as expressions in the generator t.
struct ElementAlgebra {
    Field field;
    FieldElement number(const Rational& q) const { return ff::reduce(field, q); }
    FieldElement symbol(const std::string& name, std::size_t pos) const {
        if (name == "t" && !field->is_prime_field()) return FieldElement::generator(field);
        throw SyntaxError(pos, "unknown symbol '" + name + "'");
    }
    FieldElement add(const FieldElement& a, const FieldElement& b) const { return a + b; }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const { return a - b; }
    FieldElement mul(const FieldElement& a, const FieldElement& b) const { return a * b; }
    FieldElement neg(const FieldElement& a) const { return -a; }
    FieldElement power(const FieldElement& a, std::int64_t k, std::size_t pos) const {
        if (k >= 0) return a.pow(static_cast<std::uint64_t>(k));
        if (a.is_zero()) throw SyntaxError(pos, "negative power of zero");
        return a.inverse().pow(static_cast<std::uint64_t>(-k));
    }
};

FieldElement parse_element(const std::string& text, Field field) {
    ElementAlgebra alg{field};
    return expr::evaluate(*expr::parse(text), alg);
}

std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream f(path);
    if (!f) fail(ErrorCode::IoError, "cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

std::string strip(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    return s.substr(b);
}

// The operator over the chosen field, optionally minus a constant lambda.
weyl::FieldOp field_operator(const std::string& text, Field field, const std::string& lambda) {
    const weyl::RationalOp rop = weyl::parse_operator(text);
    if (rop.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    weyl::FieldOp op = weyl::reduce(rop, field);
    if (!lambda.empty()) op -= weyl::FieldOp::constant(parse_element(lambda, field));
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the operator vanishes in the coefficient field");
    return op;
}

struct Sink {
    std::ostream& fallback;
    std::string path;
    std::ostringstream buffer;

    void flush() {
        if (path.empty()) {
            fallback << buffer.str();
            return;
        }
        std::ofstream f(path);
        if (!f) fail(ErrorCode::IoError, "cannot write " + path);
        f << buffer.str();
    }
};

// Identity battery behind `check --suite identities`.
std::vector<std::string> run_identity_suite(ff::Word pmax, std::uint64_t seed) {
    std::vector<std::string> failures;
    const auto primes = sweep::primes_in_range(2, pmax);
    std::mt19937_64 rng(seed);

    for (ff::Word p : primes) {
        const Field f = ff::make_field(p);
        const charp::RepPair r = charp::rep_generators(f);
        const auto n = static_cast<std::size_t>(p);
        const linalg::MatrixFF zero(f, n, n);
        if (!(r.y * r.x - r.x * r.y == linalg::MatrixFF::identity(f, n)))
            failures.push_back("representation commutator at p = " + std::to_string(p));
        if (!(r.x.pow(p) == zero) || !(r.y.pow(p) == zero))
            failures.push_back("representation nilpotence at p = " + std::to_string(p));

        linalg::MatrixFF x(f, 1, 1);
        x(0, 0) = FieldElement::one(f);
        const linalg::MatrixPolynomial identity_poly({linalg::MatrixFF(f, 1, 1), x});
        const FieldElement wilson = linalg::trace_product(identity_poly, linalg::MatrixFF::identity(f, 1), p, 1);
        if (wilson != FieldElement(f, -1)) failures.push_back("Wilson trace product at p = " + std::to_string(p));
    }

    for (ff::Word p : primes) {
        if (p < 3 || p > 97) continue;
        const Field f = ff::make_field(p);
        const int deg = static_cast<int>(std::min<ff::Word>(5, p - 1));
        for (int s = 0; s < 3; ++s) {
            std::vector<FieldElement> g;
            for (int k = 0; k <= deg; ++k) g.push_back(ff::random_element(f, rng));
            if (!charp::freshman_identity_check(g, f))
                failures.push_back("freshman identity at p = " + std::to_string(p));
        }
    }

    for (std::size_t n : {2, 3, 4, 6, 8, 16}) {
        for (ff::Word p : primes) {
            if ((p - 1) % n != 0) continue;
            const qtorus::RootCtx rc = qtorus::make_root_ctx(p, n);
            if (!qtorus::quantum_freshman_check(rc, 4, rng()))
                failures.push_back("quantum freshman identity at N = " + std::to_string(n) +
                                   ", p = " + std::to_string(p));
        }
    }
    return failures;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::istream& in, std::ostream& out, std::ostream& err) {
    // Single-dash long flags are accepted for the multi-letter options.
    std::vector<std::string> args;
    for (const auto& a : raw_args) args.push_back(a == "-pmax" ? "--pmax" : a);

    CLI::App app{"Arithmetic supports of Weyl-algebra modules in characteristic p", "arsupp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string op_text, out_path, lambda;
    FieldOptions fopts;
    bool json = false;
    std::uint64_t seed = 0;

    auto* pdet = app.add_subcommand("pdet", "p-determinant of an operator");
    pdet->add_option("-P,--operator", op_text, "operator in x and d")->required();
    add_field_flags(*pdet, fopts, true);
    pdet->add_option("--lambda-shift", lambda, "subtract this field element (an expression in t)");
    pdet->add_option("--out", out_path, "output file");

    int check_ext = 0;
    bool with_report = false;
    auto* curve = app.add_subcommand("curve", "support curve D(X, Y)");
    curve->add_option("-P,--operator", op_text, "operator in x and d")->required();
    add_field_flags(*curve, fopts, true);
    curve->add_option("--lambda-shift", lambda, "subtract this field element (an expression in t)");
    curve->add_flag("--json", json, "emit JSON");
    curve->add_option("--check-ext", check_ext, "sample this many extension-field consistency points")
        ->check(CLI::NonNegativeNumber);
    curve->add_flag("--report", with_report, "append the invariant report");
    curve->add_option("--seed", seed, "seed for grid retries and sampling");
    curve->add_option("--out", out_path, "output file");

    std::string plan_path;
    std::optional<unsigned> jobs;
    std::optional<std::uint64_t> sweep_seed;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a prime sweep plan");
    sweep_cmd->add_option("plan", plan_path, "plan file")->required();
    sweep_cmd->add_option("--jobs", jobs, "worker threads");
    sweep_cmd->add_option("--seed", sweep_seed, "override the plan seed");
    sweep_cmd->add_option("--out", out_path, "override the plan output path");

    std::string curve_path, sl2_text = "identity";
    bool all_mults = false;
    auto* mult = app.add_subcommand("mult", "germ multiplicity at y = 0");
    auto* mult_op = mult->add_option("-P,--operator", op_text, "operator in x and d");
    auto* mult_curve = mult->add_option("--curve", curve_path, "curve file (JSON or text), '-' for stdin");
    mult_op->excludes(mult_curve);
    add_field_flags(*mult, fopts, false);
    mult->add_option("--sl2", sl2_text, "identity, fourier, shear or a,b,c,d");
    mult->add_flag("--all", all_mults, "report every default matrix");
    mult->add_flag("--json", json, "emit JSON");

    std::string op_file;
    auto* probe2d = app.add_subcommand("probe2d", "determinant polynomial of an A_2 operator");
    auto* probe_op = probe2d->add_option("-P,--operator", op_text, "operator in x1, x2, d1, d2");
    probe2d->add_option("file", op_file, "file holding the operator")->excludes(probe_op);
    probe2d->add_option("-p,--prime", fopts.p, "characteristic")->required();
    probe2d->add_flag("--json", json, "emit JSON");
    probe2d->add_option("--out", out_path, "output file");

    std::size_t order = 0;
    bool central = false;
    std::string u_text = "1", v_text = "1";
    auto* qdet = app.add_subcommand("qdet", "quantum torus determinant");
    qdet->add_option("-P,--operator", op_text, "Laurent polynomial in x1, x2")->required();
    qdet->add_option("-N,--order", order, "root of unity order")->required();
    qdet->add_option("-p,--prime", fopts.p, "characteristic")->required();
    qdet->add_flag("--central", central, "print the central polynomial C(Z1, Z2)");
    qdet->add_option("--u", u_text, "evaluation point u");
    qdet->add_option("--v", v_text, "evaluation point v");

    std::string suite = "identities";
    ff::Word pmax = 97;
    bool verbose = false;
    auto* check = app.add_subcommand("check", "run an identity suite");
    check->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"identities"}));
    check->add_option("--pmax", pmax, "largest prime");
    check->add_option("--seed", seed, "seed for random instances");
    check->add_flag("-v,--verbose", verbose, "list each failure");

    std::vector<ff::Word> bench_primes{10007, 20011, 40009};
    int reps = 3, bench_degree = 4;
    auto* bench = app.add_subcommand("bench", "time p_determinant across primes");
    bench->add_option("-P,--operator", op_text, "operator (default: seeded random of degree --degree)");
    bench->add_option("--degree", bench_degree, "degree of the random operator");
    bench->add_option("--primes", bench_primes, "primes to time")->delimiter(',');
    bench->add_option("--reps", reps, "repetitions per prime (median reported)");
    bench->add_option("--seed", seed, "seed for the random operator");
    bench->add_flag("--json", json, "emit JSON");

    auto report_error = [&](ErrorCode code, const std::string& message) {
        err << "error: " << code_name(code) << ": " << message << '\n';
        return exit_code_for(code);
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return report_error(ErrorCode::InvalidArgument, e.what());
    }

    Sink sink{out, out_path, {}};
    std::ostream& os = sink.buffer;
    int status = kExitOk;
    try {
        if (pdet->parsed()) {
            const Field field = make_field(fopts);
            os << charp::p_determinant(field_operator(op_text, field, lambda), field).to_string() << '\n';
        } else if (curve->parsed()) {
            const Field field = make_field(fopts);
            const weyl::FieldOp op = field_operator(op_text, field, lambda);
            charp::CurveOptions copts;
            copts.seed = seed;
            const charp::SupportCurve c = charp::support_curve(op, field, copts);
            std::optional<charp::ExtensionCheck> ext;
            if (check_ext > 0) {
                ext = charp::extension_consistency(op, c, check_ext, seed, field->degree() * 2);
                if (!ext->passed()) status = kExitConsistency;
            }
            if (json) {
                nlohmann::ordered_json j = curves::curve_json(c.poly);
                if (with_report) j["report"] = curves::report_json(curves::curve_report(c.poly));
                if (ext) j["ext_check"] = {{"samples", ext->samples}, {"failures", ext->failures}, {"passed", ext->passed()}};
                os << j.dump() << '\n';
            } else {
                os << curves::curve_text(c.poly) << '\n';
                if (with_report) os << curves::report_json(curves::curve_report(c.poly)).dump() << '\n';
                if (ext)
                    os << "extension check: " << (ext->passed() ? "pass" : "fail") << " ("
                       << ext->samples - ext->failures << '/' << ext->samples << ")\n";
            }
            if (status == kExitConsistency)
                err << "error: " << code_name(ErrorCode::ConsistencyFailure) << ": " << ext->failures << " of "
                    << ext->samples << " extension samples disagree\n";
        } else if (sweep_cmd->parsed()) {
            sweep::SweepPlan plan = sweep::load_plan(plan_path);
            if (jobs) plan.jobs = *jobs;
            if (sweep_seed) plan.seed = *sweep_seed;
            if (!out_path.empty()) plan.output = out_path;
            sink.path.clear();
            const sweep::SweepResult res = sweep::run_sweep(plan);
            const std::string text = sweep::serialize(res);
            if (plan.output.empty()) {
                os << text;
            } else {
                std::ofstream f(plan.output);
                if (!f) fail(ErrorCode::IoError, "cannot write " + plan.output);
                f << text;
            }
            const bool all_ok = std::all_of(res.entries.begin(), res.entries.end(),
                                            [](const sweep::PrimeEntry& e) { return !e.ok || e.checks_passed(); });
            if (!all_ok) {
                status = kExitConsistency;
                err << "error: " << code_name(ErrorCode::ConsistencyFailure) << ": a sweep check failed\n";
            }
        } else if (mult->parsed()) {
            const std::vector<weyl::SL2Mat> mats =
                all_mults ? curves::default_sl2_list() : std::vector<weyl::SL2Mat>{sweep::parse_sl2(sl2_text)};
            std::vector<int> values;
            if (!op_text.empty()) {
                const weyl::RationalOp op = weyl::parse_operator(op_text);
                if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
                for (const auto& g : mats) values.push_back(weyl::germ_multiplicity_y0(weyl::sl2_act(g, op)));
            } else if (!curve_path.empty()) {
                const std::string text = strip(read_source(curve_path, in));
                curves::BivarPoly h;
                if (!text.empty() && text.front() == '{') {
                    nlohmann::json j;
                    try {
                        j = nlohmann::json::parse(text);
                    } catch (const nlohmann::json::exception& ex) {
                        fail(ErrorCode::SyntaxError, std::string("malformed curve JSON: ") + ex.what());
                    }
                    h = curves::curve_from_json(j);
                } else {
                    if (fopts.p == 0) fail(ErrorCode::InvalidArgument, "a text curve needs -p");
                    h = curves::parse_curve_text(text, make_field(fopts));
                }
                if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "the zero polynomial has no Newton polygon");
                for (const auto& g : mats) values.push_back(curves::germ_multiplicity_y0(curves::substitute(h, g)));
            } else {
                fail(ErrorCode::InvalidArgument, "mult needs -P or --curve");
            }
            if (json) {
                nlohmann::ordered_json j;
                for (std::size_t k = 0; k < mats.size(); ++k) j[mats[k].label()] = values[k];
                os << j.dump() << '\n';
            } else if (all_mults) {
                for (std::size_t k = 0; k < mats.size(); ++k) os << mats[k].label() << ": " << values[k] << '\n';
            } else {
                os << values.front() << '\n';
            }
        } else if (probe2d->parsed()) {
            std::string text = op_text;
            if (!op_file.empty()) text = strip(read_source(op_file, in));
            if (text.empty()) fail(ErrorCode::InvalidArgument, "probe2d needs -P or an operator file");
            const charp::ProbeResult r =
                charp::support_multidim_probe(weyl::parse_operator2(text), ff::make_field(fopts.p));
            if (json) {
                nlohmann::ordered_json j;
                j["p"] = fopts.p;
                j["poly"] = charp::probe_text(r.poly);
                j["p_power"] = r.p_power;
                if (r.root)
                    j["root"] = charp::probe_text(*r.root);
                else
                    j["root"] = nullptr;
                j["extension_degree"] = r.extension_degree;
                os << j.dump() << '\n';
            } else {
                os << charp::probe_text(r.poly) << '\n';
                os << "p-th power: " << (r.p_power ? "yes" : "no") << '\n';
                if (r.root) os << "root: " << charp::probe_text(*r.root) << '\n';
            }
        } else if (qdet->parsed()) {
            const qtorus::RootCtx rc = qtorus::make_root_ctx(fopts.p, order);
            const qtorus::LaurentOp op = qtorus::parse_laurent(op_text, rc);
            if (central) {
                os << qtorus::central_text(qtorus::central_polynomial(op)) << '\n';
            } else {
                const FieldElement u = parse_element(u_text, rc.field);
                const FieldElement v = parse_element(v_text, rc.field);
                os << qtorus::q_determinant(op, u, v).to_string() << '\n';
            }
        } else if (check->parsed()) {
            const auto failures = run_identity_suite(pmax, seed);
            if (failures.empty()) {
                os << "all passed\n";
            } else {
                if (verbose)
                    for (const auto& f : failures) os << "FAIL " << f << '\n';
                os << failures.size() << " failed\n";
                status = kExitConsistency;
                err << "error: " << code_name(ErrorCode::ConsistencyFailure) << ": " << failures.front() << '\n';
            }
        } else if (bench->parsed()) {
            const weyl::RationalOp op =
                op_text.empty() ? sweep::random_operator(bench_degree, seed) : weyl::parse_operator(op_text);
            const auto rows = sweep::benchmark_linear(op, bench_primes, reps);
            if (json) {
                auto arr = nlohmann::ordered_json::array();
                for (const auto& r : rows) {
                    nlohmann::ordered_json j{{"p", r.p}, {"ms", r.ms}};
                    if (r.ratio)
                        j["ratio"] = *r.ratio;
                    else
                        j["ratio"] = nullptr;
                    arr.push_back(std::move(j));
                }
                os << arr.dump() << '\n';
            } else {
                os << "p\tms\tratio\n";
                for (const auto& r : rows) {
                    os << r.p << '\t' << std::fixed << std::setprecision(3) << r.ms << '\t';
                    if (r.ratio)
                        os << std::setprecision(2) << *r.ratio;
                    else
                        os << '-';
                    os << std::defaultfloat << '\n';
                }
            }
        }
        sink.flush();
    } catch (const Error& e) {
        return report_error(e.code(), e.what());
    }
    return status;
}

}  // namespace arsupp::cli
