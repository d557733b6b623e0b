#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biblio/dupscan.hpp"
#include "biblio/grouping.hpp"
#include "biblio/metrics.hpp"
#include "biblio/records.hpp"
#include "biblio/topics.hpp"

namespace biblio::cli {

struct ConferenceInput {
  std::string name;  // empty: taken from the records themselves
  std::filesystem::path path;
  InputFormat format = InputFormat::csv;
};

struct RunConfig {
  std::vector<ConferenceInput> conferences;
  YearRange years;
  int window = 4;
  std::map<grouping::SchemeName, std::filesystem::path> grouping_files;
  topics::LdaParams lda;
  std::size_t top_words = 4;
  std::string provider;  // URL, "stub", or empty for the stub
  dupscan::Thresholds thresholds;
  double min_author_jaccard = 1.0;
  std::filesystem::path out = "out";
  std::uint64_t seed = 42;
  metrics::Basis basis = metrics::Basis::pooled;
  std::optional<metrics::SummaryMode> mode;  // unset: emit both
  bool stem = false;
  bool strict = false;
  std::optional<std::filesystem::path> stopwords;
  std::optional<int> lotka_year;
  std::optional<std::string> only_conference;

  metrics::WindowSpec window_spec() const { return {years.first, years.last, window}; }
};

// Reads a JSON config. Relative paths resolve against the config's directory.
// Throws ConfigError on unknown keys or wrong types.
RunConfig load_config(const std::filesystem::path& path);

// Throws ConfigError when a referenced input path is missing or a value is out
// of range.
void validate(const RunConfig& config);

inline constexpr const char* kSubcommands[] = {"ingest", "rates", "gini",     "lotka", "rpd",
                                               "lda",    "topicsim", "dupscan", "report"};

// Executes one subcommand against a ready configuration and returns the files
// written, relative to config.out.
std::vector<std::filesystem::path> execute(const std::string& subcommand, const RunConfig& config,
                                           std::ostream& log);

// Full command line entry point (args excludes the program name). Returns the
// process exit status: 0 success, 1 runtime error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biblio::cli
