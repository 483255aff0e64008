#include "k2rank/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "k2rank/arith.hpp"
#include "k2rank/case_classifier.hpp"
#include "k2rank/errors.hpp"
#include "k2rank/hk_matrix.hpp"

namespace k2rank {

namespace {

constexpr std::size_t kBlockSize = 256;

SurveyRow survey_one(const XElement& e) {
    const Classification fast = classify_and_rank(e.primes[0], e.primes[1], e.primes[2]);
    const FourRankReport full = four_rank_k2(e.d);
    const auto fail = [&](const std::string& what) {
        throw ConsistencyFailure(what + " for d = " + std::to_string(e.d));
    };
    if (full.four_rank != fast.four_rank) fail("case analysis and symbol matrix disagree");
    if (full.v != fast.profile.v) fail("v differs between routes");
    if (!is_admissible(fast.profile.case_label, fast.four_rank)) fail("inadmissible (case, rank) pair");
    const auto& bits = full.matrix.f2;
    if (bits.rank() != bits.without_row(bits.rows() - 1).rank()) fail("deleting the (d,-1) row changes the rank");
    if (reduced_matrix_four_rank(e.d) != full.four_rank) fail("3 x 4 reduced matrix disagrees");
    if (!full.matrix.row_products_hold()) fail("row product is not +1");

    SurveyRow row;
    row.d = e.d;
    row.primes = e.primes;
    row.case_label = fast.profile.case_label;
    row.four_rank = fast.four_rank;
    row.v = fast.profile.v;
    row.sym2 = fast.profile.v_symbols[0];
    return row;
}

}  // namespace

void SurveyTally::add(int case_label, int four_rank) {
    ++total;
    ++counts[four_rank];
    ++case_counts[{case_label, four_rank}];
}

void SurveyTally::merge(const SurveyTally& other) {
    total += other.total;
    for (const auto& [k, v] : other.counts) counts[k] += v;
    for (const auto& [k, v] : other.case_counts) case_counts[k] += v;
}

std::int64_t SurveyTally::case_total(int case_label) const {
    std::int64_t n = 0;
    for (const auto& [k, v] : case_counts) {
        if (k.first == case_label) n += v;
    }
    return n;
}

std::map<int, double> SurveyTally::frequencies() const {
    std::map<int, double> out;
    for (const auto& [k, v] : counts) out[k] = total > 0 ? static_cast<double>(v) / static_cast<double>(total) : 0.0;
    return out;
}

SurveyTally empty_tally(std::int64_t min_d, std::int64_t max_d) {
    SurveyTally t;
    t.min_d = min_d;
    t.max_d = max_d;
    for (int r = 0; r <= 3; ++r) t.counts[r] = 0;
    return t;
}

std::vector<XElement> enumerate_X(std::int64_t min_d, std::int64_t max_d) {
    if (min_d < 2 || min_d >= max_d) {
        throw InvalidArgument("enumerate_X: need 2 <= min < max, got [" + std::to_string(min_d) + ", " +
                              std::to_string(max_d) + ")");
    }
    // The two smallest admissible primes are 17 and 41.
    const std::int64_t limit = (max_d - 1) / (17 * 41) + 1;
    const auto p = sieve_primes(limit, ResidueFilter{1, 8});
    const auto prod = [](std::int64_t a, std::int64_t b, std::int64_t c) {
        return static_cast<int128>(a) * b * c;
    };
    std::vector<XElement> out;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        if (prod(p[i], p[i + 1], p[i + 2]) >= max_d) break;
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            if (prod(p[i], p[j], p[j + 1]) >= max_d) break;
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto d = prod(p[i], p[j], p[k]);
                if (d >= max_d) break;
                if (d >= min_d) out.push_back(XElement{static_cast<std::int64_t>(d), {p[i], p[j], p[k]}});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const XElement& a, const XElement& b) { return a.d < b.d; });
    return out;
}

SurveyResult run_survey(const SurveyOptions& options) {
    SurveyResult result;
    result.tally = empty_tally(options.min_d, options.max_d);
    if (options.min_d == options.max_d && options.min_d >= 2) {
        if (options.out) write_survey_csv(*options.out, result.rows);
        return result;
    }
    const auto elements = enumerate_X(options.min_d, options.max_d);
    result.rows.resize(elements.size());

    const std::size_t blocks = (elements.size() + kBlockSize - 1) / kBlockSize;
    const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
    std::atomic<std::size_t> next_block{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::int64_t first_error_d = 0;

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const std::size_t end = std::min(elements.size(), (b + 1) * kBlockSize);
            for (std::size_t i = b * kBlockSize; i < end; ++i) {
                try {
                    result.rows[i] = survey_one(elements[i]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error || elements[i].d < first_error_d) {
                        first_error = std::current_exception();
                        first_error_d = elements[i].d;
                    }
                    break;
                }
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);

    for (const auto& row : result.rows) result.tally.add(row.case_label, row.four_rank);
    if (options.out) write_survey_csv(*options.out, result.rows);
    return result;
}

void write_survey_csv(std::ostream& os, const std::vector<SurveyRow>& rows) {
    os << "d,p1,p2,p3,case,four_rank,v,sym2\n";
    for (const auto& r : rows) {
        os << r.d << ',' << r.primes[0] << ',' << r.primes[1] << ',' << r.primes[2] << ',' << r.case_label << ','
           << r.four_rank << ',' << r.v << ',' << to_int(r.sym2) << '\n';
    }
}

void write_survey_csv(const std::filesystem::path& path, const std::vector<SurveyRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_survey_csv(out, rows);
    if (!out.flush()) throw std::runtime_error("write to " + path.string() + " failed");
}

std::string percentage_string(std::int64_t count, std::int64_t total) {
    if (total <= 0) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * static_cast<double>(count) / static_cast<double>(total));
    return buf;
}

CensusComparison compare_census(const SurveyTally& tally) {
    CensusComparison out;
    if (tally.total == 0) return out;
    const auto count = [&](int r) {
        auto it = tally.counts.find(r);
        return it == tally.counts.end() ? std::int64_t{0} : it->second;
    };

    out.golden_range = tally.min_d <= kGoldenMin && tally.max_d == kGoldenMax;
    out.counts_match = out.golden_range && tally.total == kGoldenTotal;
    out.percentages_match = out.golden_range;
    for (int r = 0; r < 4; ++r) {
        out.percentages[r] = percentage_string(count(r), tally.total);
        if (count(r) != kGoldenCounts[r]) out.counts_match = false;
        if (out.percentages[r] != kGoldenPercentages[r]) out.percentages_match = false;
    }

    const DensityTable theory = theoretical_densities();
    const double total = static_cast<double>(tally.total);
    const auto as_double = [](const Fraction& f) {
        return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
    };
    for (const auto& [rank, frac] : theory.by_rank) {
        const double emp = static_cast<double>(count(rank)) / total;
        out.rank_deviations.push_back({std::to_string(rank), emp, as_double(frac), std::abs(emp - as_double(frac))});
    }
    for (const auto& [key, frac] : theory.by_case_rank) {
        auto it = tally.case_counts.find(key);
        const double emp = it == tally.case_counts.end() ? 0.0 : static_cast<double>(it->second) / total;
        out.case_rank_deviations.push_back({"case" + std::to_string(key.first) + "_rank" + std::to_string(key.second),
                                            emp, as_double(frac), std::abs(emp - as_double(frac))});
    }
    out.case_marginals_within_two_points = true;
    for (int c = 1; c <= 4; ++c) {
        Fraction marginal(0);
        for (const auto& [key, frac] : theory.by_case_rank) {
            if (key.first == c) marginal += frac;
        }
        const double emp = static_cast<double>(tally.case_total(c)) / total;
        const double dev = std::abs(emp - as_double(marginal));
        out.case_marginal_deviations.push_back({"case" + std::to_string(c), emp, as_double(marginal), dev});
        if (dev > 0.02) out.case_marginals_within_two_points = false;
    }
    return out;
}

}  // namespace k2rank
