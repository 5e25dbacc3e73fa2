#pragma once

// Line-delimited JSON documents with a "kind" tag. Keys are sorted, numbers
// use shortest round-trip decimals, and every StepCdf is canonical.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pms/error.hpp"
#include "pms/space.hpp"
#include "pms/step_cdf.hpp"

namespace pms::cli {

/// Malformed text or schema; `position` is a byte offset when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = 0) : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed document whose content fails a library check.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const pms::Error& cause) : std::runtime_error(cause.what()), code_(cause.code()) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Kind { Cdf, Space, Map, MapSequence, Report };

std::string_view to_string(Kind kind) noexcept;

struct Meta {
  std::string version;
  std::optional<std::uint64_t> seed;
};

struct SpaceData {
  std::vector<std::string> labels;
  /// Row-major n x n.
  std::vector<StepCdf> matrix;
  std::string tnorm = "min";
};

struct MapData {
  std::vector<StepCdf> values;
  /// Labels the values belong to; absent means every point in order.
  std::optional<std::vector<std::string>> domain;
};

struct MapSequenceData {
  std::vector<std::vector<StepCdf>> maps;
};

using Payload = std::variant<StepCdf, SpaceData, MapData, MapSequenceData, nlohmann::json>;

struct Document {
  Meta meta;
  Payload payload;

  Kind kind() const noexcept { return static_cast<Kind>(payload.index()); }
};

/// Version string written into meta.
std::string_view tool_version() noexcept;

Document make_document(Payload payload, std::optional<std::uint64_t> seed = std::nullopt);

struct ParseOptions {
  /// Re-validate spaces with make_space under their own t-norm.
  bool validate_spaces = true;
};

/// Throws ParseError or ValidationError.
Document parse_document(std::string_view text, const ParseOptions& opts = {});

/// One line, trailing newline included.
std::string serialize_document(const Document& doc);

/// Builds the space under `tnorm` (or the document's own when empty).
/// Throws ValidationError.
ProbMetricSpace to_space(const SpaceData& data, std::string_view tnorm = {});

SpaceData from_space(const ProbMetricSpace& space, std::string tnorm);

nlohmann::json cdf_to_json(const StepCdf& f);

}  // namespace pms::cli
