#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biblio/records.hpp"

namespace biblio::metrics {

// Consecutive spans [y, y + length - 1] for y in [start_year, end_year - length + 1].
struct WindowSpec {
  int start_year = 2010;
  int end_year = 2024;
  int length = 4;

  // Throws InvalidWindow when length < 1 or the range is shorter than one window.
  void validate() const;
  int count() const;
  int first_year(int window) const { return start_year + window; }
  std::string label(int window) const;  // "2010-2013"

  bool operator==(const WindowSpec&) const = default;
};

struct WindowRateSeries {
  AuthorKey author;
  std::vector<double> rates;
  WindowSpec window_spec;
};

enum class Level { author, conference, group };
enum class Basis { pooled, per_author_mean };
enum class SummaryMode { all, nonzero };

const char* to_string(Level level);
const char* to_string(Basis basis);
const char* to_string(SummaryMode mode);

struct GiniResult {
  double value = 0.0;
  Level level = Level::author;
  std::size_t population_size = 0;  // number of values the index was taken over
  std::string basis;
};

struct LotkaRow {
  int k = 0;
  long observed = 0;
  double expected = 0.0;
};

struct LotkaTable {
  int year = 0;
  std::vector<LotkaRow> rows;
};

struct RateSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  std::size_t count = 0;
};

// Weighted publication rate of one window: T / (P + (P/2)(n - 1)), where T is
// the window's paper total and n the longest run of consecutive publishing
// years inside the window; 0 when nothing was published.
double window_rate(const std::map<int, int>& year_counts, int first_year, int length);

WindowRateSeries rate_series(const AuthorProfile& profile, const WindowSpec& spec);

// Gini index via the sorted-rank formula. An all-zero input yields 0.
// Throws EmptyInput or NegativeValue (also raised for non-finite values).
double gini(std::span<const double> values);

GiniResult author_gini(const AuthorProfile& profile, const WindowSpec& spec);

// Gini over a subset of profiles: pooled author-window rates, or one mean rate
// per author. Throws EmptyInput for an empty subset.
GiniResult population_gini(std::span<const AuthorProfile* const> profiles, const WindowSpec& spec,
                           Basis basis, Level level);

GiniResult conference_gini(const Corpus& corpus, const WindowSpec& spec,
                           Basis basis = Basis::pooled);

// Mean and population standard deviation over pooled author-window rates.
RateSummary rate_summary(const Corpus& corpus, const WindowSpec& spec, SummaryMode mode);

// Observed author counts per paper count k in `year`, with inverse-square
// expectations anchored on k = 1.
LotkaTable lotka_table(const Corpus& corpus, int year);
LotkaTable lotka_from_observed(int year, const std::map<int, long>& observed);

// Relative percentage difference |a - b| / ((a + b) / 2) * 100.
// Throws UndefinedRPD when both inputs are zero, NegativeValue for a negative input.
double rpd(double a, double b);

// Same as rpd but nullopt where rpd would throw UndefinedRPD.
std::optional<double> try_rpd(double a, double b);

}  // namespace biblio::metrics
