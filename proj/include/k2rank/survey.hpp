#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "k2rank/sign.hpp"

namespace k2rank {

struct XElement {
    std::int64_t d = 0;
    std::array<std::int64_t, 3> primes{};  // ascending
};

/// Every d = p1*p2*p3 in [min_d, max_d) with distinct primes = 1 mod 8,
/// ascending in d. Throws InvalidArgument unless 2 <= min_d < max_d.
std::vector<XElement> enumerate_X(std::int64_t min_d, std::int64_t max_d);

struct SurveyRow {
    std::int64_t d = 0;
    std::array<std::int64_t, 3> primes{};
    int case_label = 0;
    int four_rank = 0;
    std::int64_t v = 0;
    Sign sym2 = Sign::Plus;  // (-d, v)_2
};

struct SurveyTally {
    std::int64_t min_d = 0;
    std::int64_t max_d = 0;
    std::int64_t total = 0;
    std::map<int, std::int64_t> counts;                       // rank -> count, ranks 0..3 always present
    std::map<std::pair<int, int>, std::int64_t> case_counts;  // (case, rank) -> count

    void add(int case_label, int four_rank);
    void merge(const SurveyTally& other);
    std::int64_t case_total(int case_label) const;
    std::map<int, double> frequencies() const;
};

SurveyTally empty_tally(std::int64_t min_d, std::int64_t max_d);

struct SurveyOptions {
    std::int64_t min_d = 50881;
    std::int64_t max_d = 20000000;
    unsigned jobs = 1;
    std::optional<std::filesystem::path> out;
};

struct SurveyResult {
    SurveyTally tally;
    std::vector<SurveyRow> rows;  // ascending in d
};

/// Runs both 4-rank routes on every element of X in the range: the case
/// analysis and the full symbol matrix (which must also survive deletion of
/// its last row and agree with the 3 x 4 reduced matrix). Any disagreement
/// throws ConsistencyFailure naming d. Work is split into blocks of d handled
/// by `jobs` threads; rows are merged in d order, so the output does not
/// depend on the thread count. Writes the CSV when `out` is set.
SurveyResult run_survey(const SurveyOptions& options);

/// Header `d,p1,p2,p3,case,four_rank,v,sym2` followed by one line per row.
void write_survey_csv(std::ostream& os, const std::vector<SurveyRow>& rows);
void write_survey_csv(const std::filesystem::path& path, const std::vector<SurveyRow>& rows);

inline constexpr std::int64_t kGoldenMin = 50881;
inline constexpr std::int64_t kGoldenMax = 20000000;
inline constexpr std::int64_t kGoldenTotal = 7257;
inline constexpr std::array<std::int64_t, 4> kGoldenCounts{2121, 3977, 1086, 73};
inline constexpr std::array<const char*, 4> kGoldenPercentages{"29.23", "54.80", "14.96", "1.01"};

struct Deviation {
    std::string key;
    double empirical = 0;
    double theoretical = 0;
    double deviation = 0;  // |empirical - theoretical|
};

struct CensusComparison {
    bool golden_range = false;  // the tally covers exactly the X elements of the census
    bool counts_match = false;
    std::array<std::string, 4> percentages;  // two decimals, from the tally
    bool percentages_match = false;
    std::vector<Deviation> rank_deviations;
    std::vector<Deviation> case_rank_deviations;
    std::vector<Deviation> case_marginal_deviations;
    bool case_marginals_within_two_points = false;
};

/// Golden verdict (exact counts and two-decimal percentages) when the tally
/// covers the census range, plus empirical-vs-theoretical deviations for ranks,
/// (case, rank) pairs and case marginals. An empty tally yields no
/// comparisons.
CensusComparison compare_census(const SurveyTally& tally);

std::string percentage_string(std::int64_t count, std::int64_t total);

}  // namespace k2rank
