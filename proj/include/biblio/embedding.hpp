#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace biblio {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

// Provider contract: one D-dimensional vector per input text, in input order.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // Throws ProviderError on transport or contract violations.
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string model() const = 0;
};

// Deterministic offline embedder. Each lowercased letter/digit token is hashed
// (FNV-1a 64 of the token's UTF-8 bytes, xor the seed) into a splitmix64
// stream whose first `dim` outputs, mapped to [-1, 1), form that token's
// vector. A text's vector is the sum over its tokens scaled to unit length;
// text without tokens embeds to the zero vector.
class StubEmbedder final : public EmbeddingProvider {
 public:
  explicit StubEmbedder(std::size_t dim = 384, std::uint64_t seed = 0);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::size_t dim() const override { return dim_; }
  std::string model() const override { return "stub"; }

  EmbeddingVector embed_one(const std::string& text) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Client for the embedding service: POST {base}/embed with {"texts": [...]},
// expecting {"vectors": [[...]], "dim": D, "model": "..."}. Requests are
// chunked to the service's batch cap.
class HttpEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kBatchCap = 256;

  explicit HttpEmbedder(std::string base_url, int timeout_seconds = 120);

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  // Dimension reported by the last response (0 before the first call);
  // queries GET /health when no call has been made yet.
  std::size_t dim() const override;
  std::string model() const override;

 private:
  void health() const;

  std::string base_url_;
  int timeout_seconds_;
  mutable std::size_t dim_ = 0;
  mutable std::string model_;
};

// "" or "stub" (optionally "stub:<dim>") selects StubEmbedder; anything else is a URL.
std::unique_ptr<EmbeddingProvider> make_provider(const std::string& spec, std::uint64_t seed);

double dot(const EmbeddingVector& a, const EmbeddingVector& b);
double norm(const EmbeddingVector& v);

// Cosine similarity clamped to [-1, 1]; 0 when either vector is zero.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Component-wise mean: sum in input order, then divide once. Throws
// DimMismatch for ragged input, InvalidArgument for an empty list.
EmbeddingVector mean(std::span<const EmbeddingVector> vectors);

}  // namespace biblio
