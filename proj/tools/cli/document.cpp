#include "cli/document.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>

#include "pms/triangle.hpp"

namespace pms::cli {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unexpected field \"" + key + "\"");
  }
}

const json& expect_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

double number(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

StepCdf cdf_from_json(const json& j) {
  expect_array(j, "points");
  std::vector<Breakpoint> points;
  points.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError("a breakpoint is a [t, v] pair");
    points.push_back({number(p[0]), number(p[1])});
  }
  return StepCdf::from_points(points);
}

std::vector<StepCdf> cdfs_from_json(const json& j, const char* what) {
  expect_array(j, what);
  std::vector<StepCdf> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(cdf_from_json(c));
  return out;
}

json cdfs_to_json(const std::vector<StepCdf>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(cdf_to_json(f));
  return out;
}

std::vector<std::string> strings_from_json(const json& j, const char* what) {
  expect_array(j, what);
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw ParseError(std::string(what) + " must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Meta meta_from_json(const json& doc) {
  Meta meta{.version = std::string(tool_version()), .seed = std::nullopt};
  const auto it = doc.find("meta");
  if (it == doc.end()) return meta;
  if (!it->is_object()) throw ParseError("meta must be an object");
  only_keys(*it, {"version", "seed"});
  if (const auto v = it->find("version"); v != it->end()) {
    if (!v->is_string()) throw ParseError("meta.version must be a string");
    meta.version = v->get<std::string>();
  }
  if (const auto s = it->find("seed"); s != it->end() && !s->is_null()) {
    if (!s->is_number_unsigned()) throw ParseError("meta.seed must be a non-negative integer");
    meta.seed = s->get<std::uint64_t>();
  }
  return meta;
}

Payload payload_from_json(const json& doc, std::string_view kind, const ParseOptions& opts) {
  if (kind == "cdf") {
    only_keys(doc, {"kind", "meta", "points"});
    return cdf_from_json(field(doc, "points"));
  }
  if (kind == "space") {
    only_keys(doc, {"kind", "meta", "labels", "matrix", "tnorm"});
    SpaceData data;
    data.labels = strings_from_json(field(doc, "labels"), "labels");
    const auto& rows = expect_array(field(doc, "matrix"), "matrix");
    if (rows.size() != data.labels.size()) throw ParseError("matrix needs one row per label");
    for (const auto& row : rows) {
      auto cells = cdfs_from_json(row, "matrix row");
      if (cells.size() != data.labels.size()) throw ParseError("matrix must be square");
      data.matrix.insert(data.matrix.end(), cells.begin(), cells.end());
    }
    if (const auto t = doc.find("tnorm"); t != doc.end()) {
      if (!t->is_string()) throw ParseError("tnorm must be a string");
      data.tnorm = t->get<std::string>();
    }
    if (opts.validate_spaces) to_space(data);
    return data;
  }
  if (kind == "map") {
    only_keys(doc, {"kind", "meta", "values", "domain"});
    MapData data;
    data.values = cdfs_from_json(field(doc, "values"), "values");
    if (const auto d = doc.find("domain"); d != doc.end()) {
      data.domain = strings_from_json(*d, "domain");
      if (data.domain->size() != data.values.size()) throw ParseError("domain and values differ in length");
    }
    return data;
  }
  if (kind == "map_sequence") {
    only_keys(doc, {"kind", "meta", "maps"});
    MapSequenceData data;
    for (const auto& m : expect_array(field(doc, "maps"), "maps")) data.maps.push_back(cdfs_from_json(m, "map"));
    return data;
  }
  if (kind == "report") {
    only_keys(doc, {"kind", "meta", "report"});
    const auto& body = field(doc, "report");
    if (!body.is_object()) throw ParseError("report must be an object");
    return body;
  }
  throw ParseError("unknown kind \"" + std::string(kind) + "\"");
}

}  // namespace

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::Cdf: return "cdf";
    case Kind::Space: return "space";
    case Kind::Map: return "map";
    case Kind::MapSequence: return "map_sequence";
    case Kind::Report: return "report";
  }
  return "unknown";
}

std::string_view tool_version() noexcept { return PMS_TOOL_VERSION; }

Document make_document(Payload payload, std::optional<std::uint64_t> seed) {
  return Document{.meta = {.version = std::string(tool_version()), .seed = seed}, .payload = std::move(payload)};
}

json cdf_to_json(const StepCdf& f) {
  json out = json::array();
  for (const auto& b : f.breaks()) out.push_back(json::array({b.t, b.v}));
  return out;
}

Document parse_document(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("a document is a JSON object");
  const auto& kind = field(doc, "kind");
  if (!kind.is_string()) throw ParseError("kind must be a string");
  try {
    Document out{.meta = meta_from_json(doc), .payload = payload_from_json(doc, kind.get<std::string>(), opts)};
    return out;
  } catch (const pms::Error& e) {
    throw ValidationError(e);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_document(const Document& doc) {
  json out;
  out["kind"] = to_string(doc.kind());
  json meta;
  meta["version"] = doc.meta.version;
  if (doc.meta.seed) meta["seed"] = *doc.meta.seed;
  out["meta"] = meta;

  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StepCdf>) {
          out["points"] = cdf_to_json(p);
        } else if constexpr (std::is_same_v<T, SpaceData>) {
          out["labels"] = p.labels;
          json rows = json::array();
          const std::size_t n = p.labels.size();
          for (std::size_t i = 0; i < n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < n; ++j) row.push_back(cdf_to_json(p.matrix[i * n + j]));
            rows.push_back(std::move(row));
          }
          out["matrix"] = std::move(rows);
          out["tnorm"] = p.tnorm;
        } else if constexpr (std::is_same_v<T, MapData>) {
          out["values"] = cdfs_to_json(p.values);
          if (p.domain) out["domain"] = *p.domain;
        } else if constexpr (std::is_same_v<T, MapSequenceData>) {
          json maps = json::array();
          for (const auto& m : p.maps) maps.push_back(cdfs_to_json(m));
          out["maps"] = std::move(maps);
        } else {
          out["report"] = p;
        }
      },
      doc.payload);
  return out.dump() + "\n";
}

ProbMetricSpace to_space(const SpaceData& data, std::string_view tnorm) {
  try {
    const auto star = TriangleFunction::from_tnorm(TNorm::by_name(tnorm.empty() ? data.tnorm : tnorm));
    return make_space(data.labels, data.matrix, star);
  } catch (const pms::Error& e) {
    throw ValidationError(e);
  }
}

SpaceData from_space(const ProbMetricSpace& space, std::string tnorm) {
  return SpaceData{.labels = space.labels(), .matrix = {space.matrix().begin(), space.matrix().end()},
                   .tnorm = std::move(tnorm)};
}

}  // namespace pms::cli
