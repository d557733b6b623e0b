#include "biblio/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "biblio/embedding.hpp"
#include "biblio/error.hpp"
#include "biblio/output.hpp"

namespace biblio::cli {

namespace fs = std::filesystem;
using output::fixed;
using output::Table;

// ---------------------------------------------------------------- config

namespace {

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

void reject_unknown(const nlohmann::json& object, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw ConfigError("unknown config key '" + where + key + "'");
  }
}

metrics::Basis parse_basis(const std::string& s) {
  if (s == "pooled") return metrics::Basis::pooled;
  if (s == "per-author-mean") return metrics::Basis::per_author_mean;
  throw ConfigError("basis must be pooled or per-author-mean, got '" + s + "'");
}

std::optional<metrics::SummaryMode> parse_mode(const std::string& s) {
  if (s == "all") return metrics::SummaryMode::all;
  if (s == "nonzero") return metrics::SummaryMode::nonzero;
  if (s == "both") return std::nullopt;
  throw ConfigError("mode must be all, nonzero or both, got '" + s + "'");
}

InputFormat parse_format(const std::string& s) {
  if (s == "csv") return InputFormat::csv;
  if (s == "json") return InputFormat::json;
  throw ConfigError("format must be csv or json, got '" + s + "'");
}

}  // namespace

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"conferences", "year_start", "year_end", "window", "grouping", "lda", "provider",
                  "thresholds", "min_author_jaccard", "out", "seed", "basis", "mode", "stem", "strict",
                  "stopwords"},
                 "");

  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  RunConfig c;
  if (j.contains("conferences")) {
    for (const auto& item : j["conferences"]) {
      if (!item.is_object()) throw ConfigError("conferences entries must be objects");
      reject_unknown(item, {"name", "path", "format"}, "conferences.");
      ConferenceInput input;
      input.name = item.contains("name") ? get_as<std::string>(item["name"], "conferences.name") : "";
      if (!item.contains("path")) throw ConfigError("conference entry without 'path'");
      input.path = resolve(get_as<std::string>(item["path"], "conferences.path"));
      input.format = item.contains("format")
                         ? parse_format(get_as<std::string>(item["format"], "conferences.format"))
                         : format_for(input.path);
      c.conferences.push_back(std::move(input));
    }
  }
  if (j.contains("year_start")) c.years.first = get_as<int>(j["year_start"], "year_start");
  if (j.contains("year_end")) c.years.last = get_as<int>(j["year_end"], "year_end");
  if (j.contains("window")) c.window = get_as<int>(j["window"], "window");
  if (j.contains("grouping")) {
    reject_unknown(j["grouping"], {"country", "institution_type", "ranking_top10"}, "grouping.");
    for (const auto& [key, value] : j["grouping"].items())
      c.grouping_files[grouping::scheme_from_string(key)] = resolve(get_as<std::string>(value, "grouping." + key));
  }
  if (j.contains("lda")) {
    const auto& l = j["lda"];
    reject_unknown(l, {"topics", "alpha", "beta", "iterations", "top_words"}, "lda.");
    if (l.contains("topics")) c.lda.topics = get_as<std::size_t>(l["topics"], "lda.topics");
    if (l.contains("alpha") && !l["alpha"].is_null()) c.lda.alpha = get_as<double>(l["alpha"], "lda.alpha");
    if (l.contains("beta")) c.lda.beta = get_as<double>(l["beta"], "lda.beta");
    if (l.contains("iterations")) c.lda.iterations = get_as<std::size_t>(l["iterations"], "lda.iterations");
    if (l.contains("top_words")) c.top_words = get_as<std::size_t>(l["top_words"], "lda.top_words");
  }
  if (j.contains("provider")) c.provider = get_as<std::string>(j["provider"], "provider");
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    reject_unknown(t, {"title", "abstract"}, "thresholds.");
    if (t.contains("title")) c.thresholds.title = get_as<double>(t["title"], "thresholds.title");
    if (t.contains("abstract")) c.thresholds.abstract = get_as<double>(t["abstract"], "thresholds.abstract");
  }
  if (j.contains("min_author_jaccard"))
    c.min_author_jaccard = get_as<double>(j["min_author_jaccard"], "min_author_jaccard");
  if (j.contains("out")) c.out = resolve(get_as<std::string>(j["out"], "out"));
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j["seed"], "seed");
  if (j.contains("basis")) c.basis = parse_basis(get_as<std::string>(j["basis"], "basis"));
  if (j.contains("mode")) c.mode = parse_mode(get_as<std::string>(j["mode"], "mode"));
  if (j.contains("stem")) c.stem = get_as<bool>(j["stem"], "stem");
  if (j.contains("strict")) c.strict = get_as<bool>(j["strict"], "strict");
  if (j.contains("stopwords")) c.stopwords = resolve(get_as<std::string>(j["stopwords"], "stopwords"));
  c.lda.seed = c.seed;
  return c;
}

void validate(const RunConfig& c) {
  if (c.conferences.empty()) throw ConfigError("no corpus given (use --input or a config with conferences)");
  for (const auto& input : c.conferences)
    if (!fs::is_regular_file(input.path)) throw ConfigError("corpus file not found: " + input.path.string());
  for (const auto& [scheme, path] : c.grouping_files)
    if (!fs::is_regular_file(path)) throw ConfigError("grouping file not found: " + path.string());
  if (c.stopwords && !fs::is_regular_file(*c.stopwords))
    throw ConfigError("stopword file not found: " + c.stopwords->string());
  if (c.years.first > c.years.last) throw ConfigError("year range is empty");
  try {
    c.window_spec().validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.lda.topics == 0) throw ConfigError("lda topics must be positive");
  if (!(c.lda.beta > 0.0)) throw ConfigError("lda beta must be positive");
  if (c.lda.alpha >= 0.0 && !(c.lda.alpha > 0.0)) throw ConfigError("lda alpha must be positive");
  for (const double tau : {c.thresholds.title, c.thresholds.abstract})
    if (!(tau >= -1.0 && tau <= 1.0)) throw ConfigError("similarity thresholds must lie in [-1, 1]");
  if (!(c.min_author_jaccard > 0.0 && c.min_author_jaccard <= 1.0))
    throw ConfigError("min_author_jaccard must lie in (0, 1]");
  if (c.lotka_year && !c.years.contains(*c.lotka_year))
    throw ConfigError("lotka year " + std::to_string(*c.lotka_year) + " outside the year range");
}

// ---------------------------------------------------------------- pipeline

namespace {

// Collects output files under one root, each prefixed with the seed header.
class Sink {
 public:
  Sink(fs::path root, std::uint64_t seed, std::ostream& log)
      : root_(std::move(root)), header_("# seed=" + std::to_string(seed) + "\n"), log_(log) {}

  void write(const fs::path& relative, const std::string& body) {
    const std::string content = header_ + body;
    output::write_atomic(root_ / relative, content);
    files_[relative.generic_string()] = {content.size(), output::sha256_hex(content)};
    log_ << "wrote " << (root_ / relative).string() << "\n";
  }

  void write_table(const fs::path& stem, const Table& table, bool markdown) {
    auto csv = stem;
    csv += ".csv";
    write(csv, table.to_csv());
    if (markdown) {
      auto md = stem;
      md += ".md";
      write(md, table.to_markdown());
    }
  }

  void write_manifest() {
    Table t{{"path", "bytes", "sha256"}, {}};
    for (const auto& [path, info] : files_)
      t.rows.push_back({path, std::to_string(info.first), info.second});
    write("manifest.csv", t.to_csv());
  }

  std::vector<fs::path> written() const {
    std::vector<fs::path> out;
    for (const auto& [path, info] : files_) out.emplace_back(path);
    return out;
  }

 private:
  fs::path root_;
  std::string header_;
  std::ostream& log_;
  std::map<std::string, std::pair<std::size_t, std::string>> files_;
};

struct LoadedCorpus {
  Corpus corpus;
  std::vector<std::string> warnings;
  std::vector<AuthorKey> collisions;
};

std::vector<LoadedCorpus> load_corpora(const RunConfig& c) {
  std::vector<LoadedCorpus> out;
  for (const auto& input : c.conferences) {
    auto ingested = ingest_articles(input.path, input.format, {c.years});
    std::string name = input.name;
    if (name.empty()) {
      std::set<std::string> names;
      for (const auto& a : ingested.articles) names.insert(a.conference);
      if (names.size() > 1)
        throw MixedConference(input.path.string() + " holds several conferences; name one with --conference");
      name = names.empty() ? input.path.stem().string() : *names.begin();
    }
    if (c.only_conference && *c.only_conference != name) continue;

    LoadedCorpus loaded;
    loaded.collisions = c.strict ? country_collisions(ingested.articles) : std::vector<AuthorKey>{};
    loaded.corpus = build_corpus(std::move(ingested.articles), name, {c.years, c.strict});
    loaded.warnings = std::move(ingested.warnings);
    out.push_back(std::move(loaded));
  }
  if (out.empty()) throw ConfigError("no conference matched --conference");
  return out;
}

fs::path conference_dir(const std::string& name) {
  std::string safe;
  for (const char ch : name) safe.push_back(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' ? ch : '_');
  return safe.empty() ? fs::path("_") : fs::path(safe);
}

std::vector<grouping::MappingRule> country_rules(const RunConfig& c) {
  const auto it = c.grouping_files.find(grouping::SchemeName::country);
  return it == c.grouping_files.end() ? grouping::default_country_rules() : grouping::read_rules(it->second);
}

std::string year_col(int y) { return std::to_string(y); }

void do_ingest(const LoadedCorpus& loaded, const RunConfig& c, Sink& sink, const fs::path& dir) {
  const Corpus& corpus = loaded.corpus;
  Table authors{{"first", "last"}, {}};
  if (c.strict) authors.header.push_back("qualifier");
  for (const auto* h : {"display_name", "affiliation", "country"}) authors.header.push_back(h);
  for (int y = c.years.first; y <= c.years.last; ++y) authors.header.push_back(year_col(y));
  authors.header.push_back("total");
  for (const auto& [key, p] : corpus.authors) {
    std::vector<std::string> row{key.first, key.last};
    if (c.strict) row.push_back(key.qualifier);
    row.insert(row.end(), {p.display_name, p.affiliation, p.country});
    for (const auto& [year, count] : p.year_counts) row.push_back(std::to_string(count));
    row.push_back(std::to_string(p.total()));
    authors.rows.push_back(std::move(row));
  }
  sink.write_table(dir / "authors", authors, false);

  const auto& s = corpus.dedup_stats;
  Table dedup{{"conference", "articles", "authors", "raw_name_rows", "merged_rows", "duplicate_fraction"},
              {{corpus.conference, std::to_string(corpus.articles.size()), std::to_string(corpus.authors.size()),
                std::to_string(s.raw_name_rows), std::to_string(s.merged_rows), fixed(s.duplicate_fraction, 4)}}};
  sink.write_table(dir / "dedup", dedup, false);

  Table warnings{{"warning"}, {}};
  for (const auto& w : loaded.warnings) warnings.rows.push_back({w});
  sink.write_table(dir / "ingest_warnings", warnings, false);

  if (c.strict) {
    Table collisions{{"first", "last"}, {}};
    for (const auto& k : loaded.collisions) collisions.rows.push_back({k.first, k.last});
    sink.write_table(dir / "name_collisions", collisions, false);
  }
}

void do_rates(const Corpus& corpus, const RunConfig& c, Sink& sink, const fs::path& dir) {
  const auto spec = c.window_spec();
  Table rates{{"first", "last"}, {}};
  for (int w = 0; w < spec.count(); ++w) rates.header.push_back(spec.label(w));
  for (const auto& [key, p] : corpus.authors) {
    std::vector<std::string> row{key.first, key.last};
    for (const double r : metrics::rate_series(p, spec).rates) row.push_back(fixed(r, 4));
    rates.rows.push_back(std::move(row));
  }
  sink.write_table(dir / "rates", rates, false);

  Table summary{{"conference", "mode", "mean", "std", "values"}, {}};
  std::vector<metrics::SummaryMode> modes;
  if (c.mode) modes.push_back(*c.mode);
  else modes = {metrics::SummaryMode::all, metrics::SummaryMode::nonzero};
  for (const auto mode : modes) {
    try {
      const auto s = metrics::rate_summary(corpus, spec, mode);
      summary.rows.push_back({corpus.conference, metrics::to_string(mode), fixed(s.mean, 4), fixed(s.stddev, 4),
                              std::to_string(s.count)});
    } catch (const EmptyInput&) {
      summary.rows.push_back({corpus.conference, metrics::to_string(mode), "NaN", "NaN", "0"});
    }
  }
  sink.write_table(dir / "rate_summary", summary, true);
}

void do_gini(const Corpus& corpus, const RunConfig& c, Sink& sink, const fs::path& dir) {
  const auto spec = c.window_spec();
  struct Entry {
    const AuthorProfile* profile;
    double gini;
  };
  std::vector<Entry> entries;
  for (const auto& [key, p] : corpus.authors) entries.push_back({&p, metrics::author_gini(p, spec).value});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.gini > b.gini; });

  Table authors{{"first_name", "last_name", "display_name", "affiliation", "gini"}, {}};
  for (const auto& e : entries)
    authors.rows.push_back({e.profile->key.first, e.profile->key.last, e.profile->display_name,
                            e.profile->affiliation, fixed(e.gini, 4)});
  sink.write_table(dir / "author_gini", authors, false);

  Table conf{{"conference", "basis", "gini", "values"}, {}};
  const metrics::Basis other =
      c.basis == metrics::Basis::pooled ? metrics::Basis::per_author_mean : metrics::Basis::pooled;
  if (!corpus.authors.empty()) {
    for (const auto basis : {c.basis, other}) {
      const auto g = metrics::conference_gini(corpus, spec, basis);
      conf.rows.push_back({corpus.conference, g.basis, fixed(g.value, 4), std::to_string(g.population_size)});
    }
  }
  sink.write_table(dir / "conference_gini", conf, true);
}

void do_lotka(const Corpus& corpus, const RunConfig& c, Sink& sink, const fs::path& dir) {
  std::vector<int> years;
  if (c.lotka_year) years.push_back(*c.lotka_year);
  else
    for (int y = c.years.first; y <= c.years.last; ++y) years.push_back(y);

  Table all{{"year", "k", "observed", "expected"}, {}};
  for (const int year : years) {
    const auto table = metrics::lotka_table(corpus, year);
    Table t{{"k", "observed", "expected"}, {}};
    for (const auto& row : table.rows) {
      t.rows.push_back({std::to_string(row.k), std::to_string(row.observed), output::rounded3(row.expected)});
      all.rows.push_back({std::to_string(year), std::to_string(row.k), std::to_string(row.observed),
                          output::rounded3(row.expected)});
    }
    sink.write(dir / ("lotka_" + std::to_string(year) + ".csv"), t.to_csv());
  }
  sink.write(dir / "lotka.md", all.to_markdown());
}

void do_rpd(const Corpus& corpus, const RunConfig& c, Sink& sink, const fs::path& dir) {
  std::map<grouping::SchemeName, std::vector<grouping::MappingRule>> schemes;
  schemes[grouping::SchemeName::country] = country_rules(c);
  for (const auto& [name, path] : c.grouping_files)
    if (name != grouping::SchemeName::country) schemes[name] = grouping::read_rules(path);

  for (const auto& [name, rules] : schemes) {
    const auto scheme = grouping::assign(corpus, name, rules);
    const auto report = grouping::rpd_report(corpus, scheme, c.window_spec(), c.basis);
    Table t{{"label", "tier", "group_gini", "complement_gini", "rpd_percent", "group_size", "complement_size"}, {}};
    for (const auto& row : report.rows)
      t.rows.push_back({row.label, row.tier, fixed(row.group_gini, 4), fixed(row.complement_gini, 4),
                        fixed(row.rpd_percent, 2), std::to_string(row.group_size),
                        std::to_string(row.complement_size)});
    sink.write_table(dir / (std::string("rpd_") + grouping::to_string(name)), t, true);
  }
}

// Countries analysed by the topic subcommands: the top-5 tier when the rules
// define one, otherwise every tiered label, otherwise every known label.
std::vector<std::string> topic_countries(const std::vector<grouping::MappingRule>& rules) {
  std::set<std::string> top, tiered, all;
  for (const auto& r : rules) {
    all.insert(r.label);
    if (!r.tier.empty()) tiered.insert(r.label);
    if (r.tier == grouping::kTop5) top.insert(r.label);
  }
  const auto& chosen = !top.empty() ? top : !tiered.empty() ? tiered : all;
  return {chosen.begin(), chosen.end()};
}

// Articles credited to each country: an article counts for every country any
// of its authors lists.
std::map<std::string, std::vector<ArticleRecord>> articles_by_country(
    const Corpus& corpus, const std::vector<grouping::MappingRule>& rules,
    const std::vector<std::string>& countries) {
  std::map<std::string, std::vector<ArticleRecord>> out;
  const std::set<std::string> wanted(countries.begin(), countries.end());
  for (const auto& article : corpus.articles) {
    std::set<std::string> labels;
    for (const auto& a : article.authors) labels.insert(grouping::country_label(a.country, a.affiliation, rules));
    for (const auto& label : labels)
      if (wanted.contains(label)) out[label].push_back(article);
  }
  return out;
}

void do_lda(const Corpus& corpus, const RunConfig& c, Sink& sink, const fs::path& dir) {
  const auto rules = country_rules(c);
  const auto countries = topic_countries(rules);
  const auto by_country = articles_by_country(corpus, rules, countries);

  topics::PreprocessOptions pre;
  if (c.stopwords) pre.stopwords = topics::read_stopwords(*c.stopwords);
  pre.stem = c.stem;

  Table terms{{"country", "topic", "rank", "term", "probability"}, {}};
  Table keywords{{"country"}, {}};
  for (std::size_t k = 0; k < c.lda.topics; ++k) keywords.header.push_back("topic " + std::to_string(k + 1));

  for (const auto& country : countries) {
    std::vector<std::string> row{country};
    const auto it = by_country.find(country);
    std::vector<topics::TokenizedDoc> docs;
    if (it != by_country.end()) {
      for (const auto& a : it->second) {
        auto doc = topics::preprocess(a.abstract, pre);
        doc.article_id = a.article_id;
        doc.country = country;
        docs.push_back(std::move(doc));
      }
    }
    std::optional<topics::TopicModel> model;
    if (!docs.empty()) {
      try {
        model = topics::lda_fit(docs, c.lda);
      } catch (const DegenerateVocab&) {
      }
    }
    if (!model) {
      for (std::size_t k = 0; k < c.lda.topics; ++k) row.push_back("(no abstracts)");
      keywords.rows.push_back(std::move(row));
      continue;
    }
    for (std::size_t k = 0; k < model->topics; ++k) {
      const auto words = topics::top_words(*model, k, c.top_words);
      std::string cell = "[";
      for (std::size_t i = 0; i < words.size(); ++i) {
        const auto w = std::lower_bound(model->vocab.begin(), model->vocab.end(), words[i]) - model->vocab.begin();
        terms.rows.push_back({country, std::to_string(k + 1), std::to_string(i + 1), words[i],
                              fixed(model->phi(k, static_cast<std::size_t>(w)), 6)});
        cell += (i ? ", " : "") + words[i];
      }
      row.push_back(cell + "]");
    }
    keywords.rows.push_back(std::move(row));
  }
  sink.write_table(dir / "lda_topics", terms, false);
  sink.write(dir / "lda_keywords.md", keywords.to_markdown());
}

void do_topicsim(const Corpus& corpus, const RunConfig& c, EmbeddingProvider& provider, Sink& sink,
                 const fs::path& dir) {
  const auto rules = country_rules(c);
  const auto by_country = articles_by_country(corpus, rules, topic_countries(rules));
  std::map<std::string, EmbeddingVector> embeddings;
  for (const auto& [country, articles] : by_country) {
    try {
      embeddings.emplace(country, topics::country_embedding(articles, provider));
    } catch (const NoAbstracts&) {
    }
  }

  Table t{{"country"}, {}};
  if (embeddings.size() >= 2) {
    const auto m = topics::similarity_matrix(embeddings);
    t.header.insert(t.header.end(), m.labels.begin(), m.labels.end());
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
      std::vector<std::string> row{m.labels[i]};
      for (std::size_t j = 0; j < m.labels.size(); ++j) row.push_back(fixed(m.at(i, j), 3));
      t.rows.push_back(std::move(row));
    }
  }
  sink.write_table(dir / "similarity", t, true);
}

void do_dupscan(const Corpus& corpus, const RunConfig& c, EmbeddingProvider& provider, Sink& sink,
                const fs::path& dir) {
  const auto report = dupscan::dup_report(corpus, provider, c.thresholds, c.min_author_jaccard);
  Table t{{"article_a", "article_b", "author_relation", "title_sim", "abstract_sim", "flagged"}, {}};
  for (const auto& d : report)
    t.rows.push_back({d.article_a, d.article_b, d.author_relation(), fixed(d.title_similarity, 4),
                      d.abstract_similarity ? fixed(*d.abstract_similarity, 4) : "",
                      d.flagged ? "true" : "false"});
  sink.write_table(dir / "dupscan", t, false);
}

}  // namespace

std::vector<fs::path> execute(const std::string& subcommand, const RunConfig& config, std::ostream& log) {
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), subcommand) == std::end(kSubcommands))
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  validate(config);

  const auto corpora = load_corpora(config);
  Sink sink(config.out, config.seed, log);
  std::unique_ptr<EmbeddingProvider> provider;
  auto embedder = [&]() -> EmbeddingProvider& {
    if (!provider) provider = make_provider(config.provider, config.seed);
    return *provider;
  };
  const bool all = subcommand == "report";

  for (const auto& loaded : corpora) {
    const Corpus& corpus = loaded.corpus;
    const fs::path dir = conference_dir(corpus.conference);
    if (all || subcommand == "ingest") do_ingest(loaded, config, sink, dir);
    if (all || subcommand == "rates") do_rates(corpus, config, sink, dir);
    if (all || subcommand == "gini") do_gini(corpus, config, sink, dir);
    if (all || subcommand == "lotka") do_lotka(corpus, config, sink, dir);
    if (all || subcommand == "rpd") do_rpd(corpus, config, sink, dir);
    if (all || subcommand == "lda") do_lda(corpus, config, sink, dir);
    if (all || subcommand == "topicsim") do_topicsim(corpus, config, embedder(), sink, dir);
    if (all || subcommand == "dupscan") do_dupscan(corpus, config, embedder(), sink, dir);
  }
  if (all) sink.write_manifest();
  return sink.written();
}

// ---------------------------------------------------------------- command line

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Publication inequality analysis for conference corpora", "biblio"};
  app.require_subcommand(1);

  std::string config_path, conference, input, format, out_dir, provider, basis, mode, stopwords;
  std::string country_groups, institution_groups, ranking_groups;
  std::uint64_t seed = 0;
  int year = 0, year_start = 0, year_end = 0, window = 0;
  double tau_title = 0, tau_abstract = 0, jaccard = 0, alpha = 0, beta = 0;
  std::size_t topics_k = 0, iterations = 0, top_n = 0;
  bool stem = false, strict = false;

  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  auto* o_conf = app.add_option("--conference", conference, "Conference name (filters a config, names --input)");
  auto* o_input = app.add_option("--input", input, "Corpus file (CSV or JSON) instead of a config");
  auto* o_format = app.add_option("--format", format, "Input format: csv|json (default: by extension)");
  auto* o_out = app.add_option("--out", out_dir, "Output directory");
  auto* o_seed = app.add_option("--seed", seed, "Seed for every random stream");
  auto* o_provider = app.add_option("--provider", provider, "Embedding provider: URL or 'stub'");
  auto* o_basis = app.add_option("--basis", basis, "Conference Gini basis: pooled|per-author-mean");
  auto* o_mode = app.add_option("--mode", mode, "Rate summary mode: all|nonzero|both");
  auto* o_stem = app.add_flag("--stem", stem, "Apply light suffix stemming before LDA");
  auto* o_strict = app.add_flag("--strict", strict, "Partition author keys by country");
  auto* o_tau_t = app.add_option("--tau-title", tau_title, "Title similarity threshold");
  auto* o_tau_a = app.add_option("--tau-abstract", tau_abstract, "Abstract similarity threshold");
  auto* o_jacc = app.add_option("--min-author-jaccard", jaccard, "Author-set Jaccard for dup candidates");
  auto* o_year = app.add_option("--year", year, "Single year for lotka");
  auto* o_ys = app.add_option("--year-start", year_start, "First corpus year");
  auto* o_ye = app.add_option("--year-end", year_end, "Last corpus year");
  auto* o_window = app.add_option("--window", window, "Window length in years");
  auto* o_cg = app.add_option("--country-groups", country_groups, "Country grouping file");
  auto* o_ig = app.add_option("--institution-groups", institution_groups, "Institution-type grouping file");
  auto* o_rg = app.add_option("--ranking-groups", ranking_groups, "Top-10 ranking grouping file");
  auto* o_sw = app.add_option("--stopwords", stopwords, "Stopword file");
  auto* o_k = app.add_option("--topics", topics_k, "LDA topic count");
  auto* o_iter = app.add_option("--iterations", iterations, "LDA Gibbs sweeps");
  auto* o_alpha = app.add_option("--alpha", alpha, "LDA document-topic prior (default 50/K)");
  auto* o_beta = app.add_option("--beta", beta, "LDA topic-term prior");
  auto* o_top = app.add_option("--top-words", top_n, "Keywords listed per topic");

  static const std::map<std::string, std::string> kHelp = {
      {"ingest", "Normalize authors and write per-author yearly counts"},
      {"rates", "Windowed weighted publication rates and their summary"},
      {"gini", "Per-author and conference Gini indices"},
      {"lotka", "Lotka expected/observed author counts per year"},
      {"rpd", "Group Gini comparisons by relative percentage difference"},
      {"lda", "Per-country LDA topic keywords"},
      {"topicsim", "Country embedding cosine similarity matrix"},
      {"dupscan", "Candidate duplicate publications"},
      {"report", "Run every stage and write a checksum manifest"}};
  for (const auto* name : kSubcommands) app.add_subcommand(name, kHelp.at(name))->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "biblio: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    RunConfig c = *o_config ? load_config(config_path) : RunConfig{};
    if (*o_provider) c.provider = provider;
    if (c.provider.empty())
      if (const char* env = std::getenv("BIBLIO_PROVIDER_URL"); env && *env) c.provider = env;
    if (*o_input) {
      c.conferences = {{*o_conf ? conference : "", input,
                        *o_format ? parse_format(format) : format_for(input)}};
    } else if (*o_conf) {
      c.only_conference = conference;
    }
    if (*o_out) c.out = out_dir;
    if (*o_seed) c.seed = seed;
    c.lda.seed = c.seed;
    if (*o_basis) c.basis = parse_basis(basis);
    if (*o_mode) c.mode = parse_mode(mode);
    if (*o_stem) c.stem = stem;
    if (*o_strict) c.strict = strict;
    if (*o_tau_t) c.thresholds.title = tau_title;
    if (*o_tau_a) c.thresholds.abstract = tau_abstract;
    if (*o_jacc) c.min_author_jaccard = jaccard;
    if (*o_year) c.lotka_year = year;
    if (*o_ys) c.years.first = year_start;
    if (*o_ye) c.years.last = year_end;
    if (*o_window) c.window = window;
    if (*o_cg) c.grouping_files[grouping::SchemeName::country] = country_groups;
    if (*o_ig) c.grouping_files[grouping::SchemeName::institution_type] = institution_groups;
    if (*o_rg) c.grouping_files[grouping::SchemeName::ranking_top10] = ranking_groups;
    if (*o_sw) c.stopwords = stopwords;
    if (*o_k) c.lda.topics = topics_k;
    if (*o_iter) c.lda.iterations = iterations;
    if (*o_alpha) c.lda.alpha = alpha;
    if (*o_beta) c.lda.beta = beta;
    if (*o_top) c.top_words = top_n;

    const auto subcommand = app.get_subcommands().front()->get_name();
    execute(subcommand, c, out);
    return 0;
  } catch (const Error& e) {
    err << "biblio: " << e.module() << ": " << e.kind() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "biblio: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace biblio::cli
