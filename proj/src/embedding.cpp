#include "biblio/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "httplib.h"
#include "json.hpp"

#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StubEmbedder::StubEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim == 0) throw InvalidArgument("stub embedder dimension must be positive");
}

EmbeddingVector StubEmbedder::embed_one(const std::string& text) const {
  EmbeddingVector v{std::vector<double>(dim_, 0.0)};
  for (const auto& token : text::letter_runs(text, /*keep_digits=*/true)) {
    std::uint64_t state = fnv1a(token) ^ seed_;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
      v.values[i] += 2.0 * unit - 1.0;
    }
  }
  const double n = norm(v);
  if (n > 0.0)
    for (double& x : v.values) x /= n;
  return v;
}

std::vector<EmbeddingVector> StubEmbedder::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

namespace {

struct ParsedUrl {
  std::string host;  // scheme://host[:port]
  std::string prefix;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ProviderError("provider URL needs a scheme: '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  ParsedUrl out;
  out.host = url.substr(0, slash);
  out.prefix = slash == std::string::npos ? "" : url.substr(slash);
  while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  return out;
}

}  // namespace

HttpEmbedder::HttpEmbedder(std::string base_url, int timeout_seconds)
    : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {
  split_url(base_url_);
}

void HttpEmbedder::health() const {
  const auto url = split_url(base_url_);
  httplib::Client client(url.host);
  client.set_read_timeout(timeout_seconds_, 0);
  const auto res = client.Get(url.prefix + "/health");
  if (!res) throw ProviderError("GET /health failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw ProviderError("GET /health returned " + std::to_string(res->status));
  try {
    const auto body = nlohmann::json::parse(res->body);
    dim_ = body.at("dim").get<std::size_t>();
    model_ = body.value("model", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed /health response: ") + e.what());
  }
}

std::size_t HttpEmbedder::dim() const {
  if (dim_ == 0) health();
  return dim_;
}

std::string HttpEmbedder::model() const {
  if (model_.empty()) health();
  return model_;
}

std::vector<EmbeddingVector> HttpEmbedder::embed(std::span<const std::string> texts) {
  const auto url = split_url(base_url_);
  httplib::Client client(url.host);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_write_timeout(timeout_seconds_, 0);

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += kBatchCap) {
    const auto batch = texts.subspan(start, std::min(kBatchCap, texts.size() - start));
    const nlohmann::json request = {{"texts", std::vector<std::string>(batch.begin(), batch.end())}};
    const auto res = client.Post(url.prefix + "/embed", request.dump(), "application/json");
    if (!res) throw ProviderError("POST /embed failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw ProviderError("POST /embed returned " + std::to_string(res->status) + ": " + res->body);

    try {
      const auto body = nlohmann::json::parse(res->body);
      const auto dim = body.at("dim").get<std::size_t>();
      const auto& vectors = body.at("vectors");
      if (!vectors.is_array() || vectors.size() != batch.size())
        throw ProviderError("expected " + std::to_string(batch.size()) + " vectors, got " +
                            std::to_string(vectors.size()));
      if (dim_ != 0 && dim != dim_)
        throw ProviderError("dimension changed from " + std::to_string(dim_) + " to " + std::to_string(dim));
      dim_ = dim;
      model_ = body.value("model", model_);
      for (const auto& v : vectors) {
        EmbeddingVector e{v.get<std::vector<double>>()};
        if (e.dim() != dim)
          throw ProviderError("vector of length " + std::to_string(e.dim()) + " but dim " + std::to_string(dim));
        if (!std::all_of(e.values.begin(), e.values.end(), [](double x) { return std::isfinite(x); }))
          throw ProviderError("non-finite vector component");
        out.push_back(std::move(e));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(std::string("malformed /embed response: ") + e.what());
    }
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> make_provider(const std::string& spec, std::uint64_t seed) {
  if (spec.empty() || spec == "stub") return std::make_unique<StubEmbedder>(384, seed);
  if (spec.starts_with("stub:")) {
    const std::string dim = spec.substr(5);
    try {
      std::size_t used = 0;
      const unsigned long d = std::stoul(dim, &used);
      if (used != dim.size() || d == 0) throw std::invalid_argument(dim);
      return std::make_unique<StubEmbedder>(d, seed);
    } catch (const std::exception&) {
      throw ConfigError("bad stub dimension '" + dim + "'");
    }
  }
  return std::make_unique<HttpEmbedder>(spec);
}

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw DimMismatch("dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a.values[i] * b.values[i];
  return sum;
}

double norm(const EmbeddingVector& v) { return std::sqrt(dot(v, v)); }

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  const double d = dot(a, b);
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(d / (na * nb), -1.0, 1.0);
}

EmbeddingVector mean(std::span<const EmbeddingVector> vectors) {
  if (vectors.empty()) throw InvalidArgument("mean of no vectors");
  EmbeddingVector out{std::vector<double>(vectors.front().dim(), 0.0)};
  for (const auto& v : vectors) {
    if (v.dim() != out.dim())
      throw DimMismatch("dimensions " + std::to_string(out.dim()) + " and " + std::to_string(v.dim()));
    for (std::size_t i = 0; i < v.dim(); ++i) out.values[i] += v.values[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (double& x : out.values) x /= n;
  return out;
}

}  // namespace biblio
