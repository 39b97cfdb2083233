#pragma once

// Prime sweeps: support curves, reports and identity checks computed for
// every prime in a range, merged in prime order, plus stabilization data and
// the linear-in-p timing table.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arsupp/curves.hpp"
#include "arsupp/weyl.hpp"

namespace arsupp::sweep {

enum class Check { DegreeBound, ExtensionConsistency, MultiplicityMatch, DivisibilityProbe };

std::string_view check_name(Check c) noexcept;
std::vector<Check> all_checks();

struct SweepPlan {
    std::string operator_text;
    ff::Word p_min = 5;
    ff::Word p_max = 31;
    /// Degree of the extension used for consistency sampling.
    int e = 2;
    std::vector<Check> checks = all_checks();
    std::vector<weyl::SL2Mat> sl2 = curves::default_sl2_list();
    std::string output;
    std::string format = "json";
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    int ext_samples = 8;
    /// Timings vary between runs, so they are serialized only on request.
    bool timings = false;
};

/// Key-value text, one `key = value` per line, `#` starts a comment. Keys:
/// operator, operator_file, p_min, p_max, e, checks, sl2, output, format,
/// jobs, seed, ext_samples, timings. `operator_file` is resolved against
/// `base_dir`.
SweepPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir = {});
SweepPlan load_plan(const std::filesystem::path& path);

/// "identity", "fourier", "shear" or "a,b,c,d".
weyl::SL2Mat parse_sl2(std::string_view text);

struct PrimeEntry {
    ff::Word p = 0;
    bool ok = false;
    std::string error_code;
    std::string error_message;

    std::string curve;
    std::string pdet;
    std::optional<curves::CurveReport> report;
    /// Germ multiplicities at y = 0 after each plan matrix.
    std::vector<int> operator_mults;
    std::vector<int> curve_mults;
    int fourier_mult = 0;
    bool p_power_flag = false;
    std::vector<std::pair<Check, bool>> checks;
    double det_time_ms = 0.0;

    /// True when every pass/fail check passed; the divisibility probe is a
    /// report and never fails an entry.
    bool checks_passed() const;
};

struct Stability {
    std::string invariant;
    /// Smallest processed prime from which the invariant stays constant.
    std::optional<ff::Word> stable_from;
};

struct SweepResult {
    SweepPlan plan;
    int degree_bound = 0;
    std::vector<PrimeEntry> entries;
    std::vector<Stability> stability;
    std::optional<ff::Word> stable_from;
};

/// Throws for an unparsable operator or p_min <= N; per-prime failures are
/// recorded in the entries.
SweepResult run_sweep(const SweepPlan& plan);

nlohmann::ordered_json result_json(const SweepResult& result);
/// Columns p, degree, y0_mult, fourier_mult, squarefree, p_power_flag, det_time_ms.
std::string result_csv(const SweepResult& result);
/// Serializes in the plan's format.
std::string serialize(const SweepResult& result);

std::vector<ff::Word> primes_in_range(ff::Word lo, ff::Word hi);

struct BenchRow {
    ff::Word p = 0;
    double ms = 0.0;
    /// ms / previous ms; absent for the first row and for near-zero times.
    std::optional<double> ratio;
};

/// Median of `reps` wall-clock p_determinant timings per prime.
std::vector<BenchRow> benchmark_linear(const weyl::RationalOp& op, const std::vector<ff::Word>& primes, int reps = 3);

/// Dense operator of degree exactly n with integer coefficients in [-9, 9]
/// and a nonzero d^n coefficient.
weyl::RationalOp random_operator(int n, std::uint64_t seed);

/// Non-empty, non-comment lines of an operator list file.
std::vector<std::string> load_corpus(const std::filesystem::path& path);

}  // namespace arsupp::sweep
