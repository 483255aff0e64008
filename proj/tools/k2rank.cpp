#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "k2rank/appendix.hpp"
#include "k2rank/class_numbers.hpp"
#include "k2rank/errors.hpp"
#include "k2rank/hk_matrix.hpp"
#include "k2rank/survey.hpp"
#include "k2rank/verify.hpp"
#include "k2rank/zsqrt2.hpp"

using nlohmann::ordered_json;
using namespace k2rank;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kMismatch = 2, kConsistency = 3, kDomain = 4, kIo = 5 };

enum class Format { Json, Csv, Text };

std::string scalar_text(const ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void flatten(const ordered_json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const auto& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < j.size(); ++i) joined += (i ? " " : "") + scalar_text(j[i]);
        out.emplace_back(prefix, joined);
    } else {
        out.emplace_back(prefix, scalar_text(j));
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(const ordered_json& j, Format format) {
    if (format == Format::Json) {
        std::cout << j.dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (format == Format::Csv) {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << csv_field(k) << ',' << csv_field(v) << '\n';
    } else {
        for (const auto& [k, v] : rows) std::cout << k << ": " << v << '\n';
    }
}

std::string place_name(const Place& p) { return p.is_infinite() ? "inf" : std::to_string(p.prime); }

ordered_json matrix_json(const SymbolMatrix& m) {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const auto& r : m.row_labels) j["rows"].push_back(r.to_string());
    j["columns"] = ordered_json::array();
    for (const auto& c : m.col_labels) j["columns"].push_back(place_name(c));
    j["entries"] = ordered_json::array();
    for (const auto& row : m.entries) {
        ordered_json r = ordered_json::array();
        for (auto s : row) r.push_back(to_int(s));
        j["entries"].push_back(r);
    }
    j["f2"] = m.f2.to_strings();
    j["rank"] = f2_rank(m);
    return j;
}

ordered_json report_json(const FourRankReport& r) {
    ordered_json j;
    j["d"] = r.d;
    j["t"] = r.t;
    j["v"] = r.v;
    j["a"] = r.a;
    j["a_prime"] = r.a_prime;
    j["rank"] = r.rank;
    j["four_rank"] = r.four_rank;
    j["case"] = r.case_label ? ordered_json(*r.case_label) : ordered_json(nullptr);
    if (r.norm_rep) {
        j["u"] = r.norm_rep->u;
        j["w"] = r.norm_rep->w;
    }
    return j;
}

void print_matrix_text(const FourRankReport& r) {
    const auto& m = r.matrix;
    std::cout << "d = " << r.d << ", v = " << r.v << ", rank = " << r.rank << ", 4-rank = " << r.four_rank << '\n';
    std::cout << "row";
    for (const auto& c : m.col_labels) std::cout << '\t' << place_name(c);
    std::cout << "\tF2\n";
    const auto bits = m.f2.to_strings();
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        std::cout << m.row_labels[i].to_string();
        for (auto s : m.entries[i]) std::cout << '\t' << s;
        std::cout << '\t' << bits[i] << '\n';
    }
}

ordered_json deviations_json(const std::vector<Deviation>& devs) {
    ordered_json j = ordered_json::object();
    for (const auto& d : devs) {
        j[d.key] = {{"empirical", d.empirical}, {"theoretical", d.theoretical}, {"deviation", d.deviation}};
    }
    return j;
}

ordered_json tally_json(const SurveyTally& t, const CensusComparison& cmp, bool golden) {
    ordered_json j;
    j["min"] = t.min_d;
    j["max"] = t.max_d;
    j["total"] = t.total;
    j["counts"] = ordered_json::object();
    for (const auto& [rank, n] : t.counts) j["counts"][std::to_string(rank)] = n;
    j["case_counts"] = ordered_json::object();
    for (const auto& [key, n] : t.case_counts) {
        j["case_counts"]["case" + std::to_string(key.first) + "_rank" + std::to_string(key.second)] = n;
    }
    if (t.total > 0) {
        j["percentages"] = ordered_json::object();
        for (int r = 0; r < 4; ++r) j["percentages"][std::to_string(r)] = cmp.percentages[r];
        j["rank_deviation"] = deviations_json(cmp.rank_deviations);
        j["case_rank_deviation"] = deviations_json(cmp.case_rank_deviations);
        j["case_marginal_deviation"] = deviations_json(cmp.case_marginal_deviations);
    }
    if (golden) {
        j["golden"] = {{"range_matches", cmp.golden_range},
                       {"counts_match", cmp.counts_match},
                       {"percentages_match", cmp.percentages_match}};
    }
    return j;
}

ordered_json verify_json(const VerifyResult& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["limit"] = r.limit;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    j["checked"] = r.checked;
    j["failed"] = r.failed;
    j["skipped"] = r.skipped;
    j["not_applicable"] = r.not_applicable;
    j["stats"] = ordered_json::object();
    for (const auto& [k, v] : r.stats) j["stats"][k] = v;
    j["counterexamples"] = r.counterexamples;
    return j;
}

/// Loads the PrimeRep cache; returns the path to write back when the file was
/// absent or stale.
std::optional<std::filesystem::path> load_cache() {
    auto path = default_prime_rep_cache_path();
    if (!path) return std::nullopt;
    if (prime_rep_cache().load(*path)) return std::nullopt;
    return path;
}

void save_cache(const std::optional<std::filesystem::path>& path, std::size_t size_before) {
    auto target = path ? path : default_prime_rep_cache_path();
    if (!target || (!path && prime_rep_cache().size() == size_before)) return;
    try {
        prime_rep_cache().save(*target);
    } catch (const std::exception& e) {
        std::cerr << "warning: could not write PrimeRep cache: " << e.what() << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"4-ranks of K2 of real quadratic integer rings via Hilbert-symbol matrices"};
    app.require_subcommand(1);

    std::string format_name = "json";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    std::int64_t d = 0;
    auto* fourrank = app.add_subcommand("fourrank", "4-rank report for Q(sqrt d)");
    fourrank->add_option("d", d, "Squarefree d > 1")->required();

    auto* matrix = app.add_subcommand("matrix", "Labeled Hilbert-symbol matrix and its F2 image");
    matrix->add_option("d", d, "Squarefree d > 1")->required();

    SurveyOptions survey_opts;
    survey_opts.jobs = std::max(1U, std::thread::hardware_concurrency());
    std::string out_path;
    bool golden = false;
    auto* survey = app.add_subcommand("survey", "Census of 4-ranks over d = p1 p2 p3, p_i = 1 mod 8");
    survey->add_option("--min", survey_opts.min_d, "Lower bound (inclusive)")->capture_default_str();
    survey->add_option("--max", survey_opts.max_d, "Upper bound (exclusive)")->capture_default_str();
    survey->add_option("--jobs", survey_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    survey->add_option("--out", out_path, "Per-d CSV output path");
    survey->add_flag("--golden", golden, "Exact comparison with the reference census");

    std::string suite;
    std::int64_t limit = 0;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Property sweeps for the symbol identities");
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));
    verify->add_option("--limit", limit, "Suite size (see README)")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();

    std::int64_t disc = 0;
    auto* classnumber = app.add_subcommand("classnumber", "Narrow class number of discriminant D via form cycles");
    classnumber->add_option("D", disc, "Fundamental discriminant")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    const Format format = format_name == "csv" ? Format::Csv : format_name == "text" ? Format::Text : Format::Json;

    try {
        if (*fourrank) {
            emit(report_json(four_rank_k2(d)), format);
            return kOk;
        }
        if (*matrix) {
            const FourRankReport r = four_rank_k2(d);
            if (format == Format::Text) {
                print_matrix_text(r);
            } else {
                ordered_json j = matrix_json(r.matrix);
                j = ordered_json{{"d", r.d}, {"v", r.v}, {"matrix", j}, {"four_rank", r.four_rank}};
                emit(j, format);
            }
            return kOk;
        }
        if (*survey) {
            if (!out_path.empty()) survey_opts.out = out_path;
            const auto cache_path = load_cache();
            const auto cache_size = prime_rep_cache().size();
            const SurveyResult result = run_survey(survey_opts);
            save_cache(cache_path, cache_size);
            const CensusComparison cmp = compare_census(result.tally);
            emit(tally_json(result.tally, cmp, golden), format);
            if (golden && !(cmp.golden_range && cmp.counts_match && cmp.percentages_match)) {
                std::cerr << "census mismatch\n";
                return kMismatch;
            }
            return kOk;
        }
        if (*verify) {
            const auto cache_path = load_cache();
            const auto cache_size = prime_rep_cache().size();
            const VerifyResult r = run_verify(suite, limit > 0 ? limit : default_verify_limit(suite), seed);
            save_cache(cache_path, cache_size);
            emit(verify_json(r), format);
            if (!r.passed()) {
                std::cerr << "suite " << suite << " failed on " << r.failed << " of " << r.checked << " instances\n";
                return kMismatch;
            }
            return kOk;
        }
        if (*classnumber) {
            ordered_json j;
            j["discriminant"] = disc;
            if (disc < 0) {
                if (!is_fundamental_discriminant(disc)) {
                    throw InvalidArgument(std::to_string(disc) + " is not a fundamental discriminant");
                }
                j["kind"] = "definite";
                j["class_number"] = definite_class_number(disc);
            } else {
                const FormClassGroupSummary s = narrow_class_number(disc);
                j["kind"] = "narrow";
                j["h_plus"] = s.h_plus;
                j["cycle_sizes"] = s.cycle_sizes;
            }
            emit(j, format);
            return kOk;
        }
    } catch (const ConsistencyFailure& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return kConsistency;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}
