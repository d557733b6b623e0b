#include "biblio/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "biblio/error.hpp"

namespace biblio::metrics {

void WindowSpec::validate() const {
  if (length < 1) throw InvalidWindow("window length must be >= 1, got " + std::to_string(length));
  if (end_year - start_year + 1 < length)
    throw InvalidWindow("range " + std::to_string(start_year) + "-" + std::to_string(end_year) +
                        " is shorter than one " + std::to_string(length) + "-year window");
}

int WindowSpec::count() const { return std::max(0, end_year - start_year - length + 2); }

std::string WindowSpec::label(int window) const {
  const int y = first_year(window);
  return std::to_string(y) + "-" + std::to_string(y + length - 1);
}

const char* to_string(Level level) {
  switch (level) {
    case Level::author: return "author";
    case Level::conference: return "conference";
    case Level::group: return "group";
  }
  return "?";
}

const char* to_string(Basis basis) {
  return basis == Basis::pooled ? "pooled author-window R values" : "per-author mean R values";
}

const char* to_string(SummaryMode mode) { return mode == SummaryMode::all ? "all" : "nonzero"; }

double window_rate(const std::map<int, int>& year_counts, int first_year, int length) {
  if (length < 1) throw InvalidWindow("window length must be >= 1");
  long total = 0;
  int run = 0;
  int longest = 0;
  for (int y = first_year; y < first_year + length; ++y) {
    const auto it = year_counts.find(y);
    const int count = it == year_counts.end() ? 0 : it->second;
    if (count >= 1) {
      total += count;
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
  }
  if (longest == 0) return 0.0;
  const double period = length;
  return static_cast<double>(total) / (period + period / 2.0 * (longest - 1));
}

WindowRateSeries rate_series(const AuthorProfile& profile, const WindowSpec& spec) {
  spec.validate();
  WindowRateSeries series{profile.key, {}, spec};
  series.rates.reserve(static_cast<std::size_t>(spec.count()));
  for (int w = 0; w < spec.count(); ++w)
    series.rates.push_back(window_rate(profile.year_counts, spec.first_year(w), spec.length));
  return series;
}

double gini(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("gini of an empty list");
  for (const double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw NegativeValue("gini needs finite non-negative values, got " + std::to_string(v));

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double sum = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    sum += sorted[i];
    weighted += (2.0 * static_cast<double>(i + 1) - m - 1.0) * sorted[i];
  }
  if (sum == 0.0) return 0.0;
  return std::max(0.0, weighted / (m * sum));
}

GiniResult author_gini(const AuthorProfile& profile, const WindowSpec& spec) {
  const auto series = rate_series(profile, spec);
  return {gini(series.rates), Level::author, series.rates.size(), "author window R values"};
}

GiniResult population_gini(std::span<const AuthorProfile* const> profiles, const WindowSpec& spec,
                           Basis basis, Level level) {
  if (profiles.empty()) throw EmptyInput("no authors to take a Gini index over");
  std::vector<double> values;
  for (const AuthorProfile* profile : profiles) {
    const auto series = rate_series(*profile, spec);
    if (basis == Basis::pooled) {
      values.insert(values.end(), series.rates.begin(), series.rates.end());
    } else {
      double sum = 0.0;
      for (const double r : series.rates) sum += r;
      values.push_back(sum / static_cast<double>(series.rates.size()));
    }
  }
  return {gini(values), level, values.size(), to_string(basis)};
}

namespace {

std::vector<const AuthorProfile*> all_profiles(const Corpus& corpus) {
  std::vector<const AuthorProfile*> out;
  out.reserve(corpus.authors.size());
  for (const auto& [key, profile] : corpus.authors) out.push_back(&profile);
  return out;
}

}  // namespace

GiniResult conference_gini(const Corpus& corpus, const WindowSpec& spec, Basis basis) {
  const auto profiles = all_profiles(corpus);
  return population_gini(profiles, spec, basis, Level::conference);
}

RateSummary rate_summary(const Corpus& corpus, const WindowSpec& spec, SummaryMode mode) {
  std::vector<double> values;
  for (const auto& [key, profile] : corpus.authors) {
    for (const double r : rate_series(profile, spec).rates)
      if (mode == SummaryMode::all || r > 0.0) values.push_back(r);
  }
  if (values.empty()) throw EmptyInput(std::string("no R values for mode '") + to_string(mode) + "'");

  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / n;
  double squares = 0.0;
  for (const double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / n), values.size()};
}

LotkaTable lotka_from_observed(int year, const std::map<int, long>& observed) {
  LotkaTable table{year, {}};
  const auto ones = observed.find(1);
  if (ones == observed.end() || ones->second <= 0) return table;
  const double anchor = static_cast<double>(ones->second);
  for (const auto& [k, count] : observed) {
    if (k < 1 || count < 1) continue;
    table.rows.push_back({k, count, anchor / (static_cast<double>(k) * k)});
  }
  return table;
}

LotkaTable lotka_table(const Corpus& corpus, int year) {
  if (!corpus.years.contains(year))
    throw InvalidWindow("year " + std::to_string(year) + " outside the corpus range");
  std::map<int, long> observed;
  for (const auto& [key, profile] : corpus.authors) {
    const auto it = profile.year_counts.find(year);
    if (it != profile.year_counts.end() && it->second >= 1) ++observed[it->second];
  }
  return lotka_from_observed(year, observed);
}

double rpd(double a, double b) {
  if (a < 0.0 || b < 0.0 || std::isnan(a) || std::isnan(b))
    throw NegativeValue("rpd needs non-negative inputs");
  if (a == 0.0 && b == 0.0) throw UndefinedRPD("rpd(0, 0) is undefined");
  return std::fabs(a - b) / ((a + b) / 2.0) * 100.0;
}

std::optional<double> try_rpd(double a, double b) {
  if (a == 0.0 && b == 0.0) return std::nullopt;
  return rpd(a, b);
}

}  // namespace biblio::metrics
