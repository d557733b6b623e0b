#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biblio {

// Base for every error the toolkit raises. `module()` names the pipeline stage
// (records, metrics, ...) and `kind()` the error class, so the CLI can print a
// one-line "module: Kind: message" diagnostic.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string kind, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)), kind_(std::move(kind)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string module_;
  std::string kind_;
};

#define BIBLIO_DEFINE_ERROR(Name, Module)                                  \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& message) : Error(Module, #Name, message) {} \
  };

// shared
BIBLIO_DEFINE_ERROR(InvalidArgument, "args")

// records
BIBLIO_DEFINE_ERROR(EmptyName, "records")
BIBLIO_DEFINE_ERROR(SchemaError, "records")
BIBLIO_DEFINE_ERROR(MixedConference, "records")
BIBLIO_DEFINE_ERROR(InvalidCorpus, "records")

// metrics
BIBLIO_DEFINE_ERROR(EmptyInput, "metrics")
BIBLIO_DEFINE_ERROR(NegativeValue, "metrics")
BIBLIO_DEFINE_ERROR(UndefinedRPD, "metrics")
BIBLIO_DEFINE_ERROR(InvalidWindow, "metrics")

// grouping
BIBLIO_DEFINE_ERROR(EmptyMapping, "grouping")
BIBLIO_DEFINE_ERROR(EmptyGroup, "grouping")
BIBLIO_DEFINE_ERROR(UnknownLabel, "grouping")

// topics
BIBLIO_DEFINE_ERROR(EmptyCorpus, "topics")
BIBLIO_DEFINE_ERROR(DegenerateVocab, "topics")
BIBLIO_DEFINE_ERROR(TopicOutOfRange, "topics")
BIBLIO_DEFINE_ERROR(NoAbstracts, "topics")
BIBLIO_DEFINE_ERROR(DimMismatch, "topics")
BIBLIO_DEFINE_ERROR(ZeroVector, "topics")

// embedding provider
BIBLIO_DEFINE_ERROR(ProviderError, "embedding")

// dupscan
BIBLIO_DEFINE_ERROR(MissingTitle, "dupscan")

// cli
BIBLIO_DEFINE_ERROR(ConfigError, "cli")

#undef BIBLIO_DEFINE_ERROR

// Malformed input file. `line()` is the 1-based line the offending record
// starts on (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::string module, std::size_t line, const std::string& message)
      : Error(std::move(module), "ParseError",
              line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace biblio
