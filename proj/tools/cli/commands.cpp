#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "cli/document.hpp"
#include "pms/pms.hpp"

namespace pms::cli {

using nlohmann::json;

namespace {

/// Failed check: the witness has already been reported.
struct CheckFailed {};

struct Options {
  std::vector<std::string> files;
  std::string tnorm = "min";
  double eps = 0.05;
  double tol = kTolerance;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t n = 6;
  std::size_t count = 200;
  std::string model = "metric";
  std::string point;
  std::vector<std::string> points;
  std::size_t walk = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Document load(const std::string& path, Kind expected, const ParseOptions& opts = {}) {
  auto doc = parse_document(read_file(path), opts);
  if (doc.kind() != expected)
    throw ParseError(path + ": expected a " + std::string(to_string(expected)) + " document, got " +
                     std::string(to_string(doc.kind())));
  return doc;
}

StepCdf load_cdf(const std::string& path) { return std::get<StepCdf>(load(path, Kind::Cdf).payload); }

SpaceData load_space_data(const std::string& path, bool validate = true) {
  return std::get<SpaceData>(load(path, Kind::Space, {.validate_spaces = validate}).payload);
}

json axioms_to_json(const AxiomReport& report) {
  json axioms = json::array();
  for (const auto& a : report.axioms)
    axioms.push_back({{"axiom", a.axiom}, {"passed", a.passed}, {"checked", a.checked}, {"witness", a.witness}});
  return axioms;
}

void report_failures(const AxiomReport& report, std::ostream& err) {
  for (const auto& a : report.axioms)
    if (!a.passed) err << a.axiom << " failed: " << a.witness << "\n";
}

std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& err) : o_(o), err_(err) {}

  /// Explicit --tnorm wins, else the space's own.
  std::string tnorm_for(const SpaceData& data) const { return tnorm_given_ ? o_.tnorm : data.tnorm; }
  TriangleFunction star() const { return TriangleFunction::from_tnorm(TNorm::by_name(o_.tnorm)); }
  void set_tnorm_given(bool given) { tnorm_given_ = given; }

  std::string dl() const {
    return format_fixed(levy_distance(load_cdf(o_.files.at(0)), load_cdf(o_.files.at(1)))) + "\n";
  }

  std::string conv() const {
    const auto t = TNorm::by_name(o_.tnorm);
    return emit(sup_convolution(t, load_cdf(o_.files.at(0)), load_cdf(o_.files.at(1))));
  }

  std::string sup() const {
    std::vector<StepCdf> family;
    for (const auto& f : o_.files) family.push_back(load_cdf(f));
    return emit(pointwise_sup(family));
  }

  std::string quantize_cmd() const { return emit(quantize(load_cdf(o_.files.at(0)), o_.eps)); }

  std::string check_tnorm() const {
    const auto t = TNorm::by_name(o_.tnorm);
    const auto report = check_tnorm_axioms([&](double x, double y) { return t(x, y); });
    return finish_axioms(report, {{"check", "tnorm"}, {"tnorm", t.name()}});
  }

  std::string check_star() const {
    Rng rng(*o_.seed);
    std::vector<CdfTriple> samples;
    for (std::size_t i = 0; i < o_.count; ++i)
      samples.push_back({random_step_cdf(rng), random_step_cdf(rng), random_step_cdf(rng)});
    const auto report = check_triangle_axioms(star(), samples, std::max(o_.tol, 1e-9));
    return finish_axioms(report, {{"check", "star"}, {"tnorm", o_.tnorm}, {"samples", o_.count}});
  }

  std::string check_space() const {
    const auto data = load_space_data(o_.files.at(0), false);
    const auto name = tnorm_for(data);
    const auto star = TriangleFunction::from_tnorm(TNorm::by_name(name));
    const auto report = check_space_axioms(data.labels, data.matrix, star, o_.tol);
    return finish_axioms(report, {{"check", "space"}, {"tnorm", name}, {"points", data.labels.size()}});
  }

  std::string check_lip() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    const auto map = std::get<MapData>(load(o_.files.at(1), Kind::Map).payload);
    const auto values = full_values(space, map);
    const auto check = is_one_lipschitz(space, values, o_.tol);
    json body{{"check", "lipschitz"}, {"ok", check.ok}, {"tnorm", tnorm_for(data)}};
    if (check.witness) {
      const auto& w = *check.witness;
      body["witness"] = {{"x", space.labels()[w.x]}, {"y", space.labels()[w.y]}, {"t", w.t}};
      failed_ = true;
      err_ << "not 1-Lipschitz: star(D(" << space.labels()[w.x] << ", " << space.labels()[w.y] << "), f("
           << space.labels()[w.y] << ")) exceeds f(" << space.labels()[w.x] << ") at t=" << w.t << "\n";
    }
    return emit_json(std::move(body));
  }

  std::string extend() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    const auto map = std::get<MapData>(load(o_.files.at(1), Kind::Map).payload);
    std::vector<std::size_t> subset;
    if (map.domain) {
      for (const auto& label : *map.domain) subset.push_back(space.index_of(label));
    } else {
      for (std::size_t x = 0; x < map.values.size(); ++x) subset.push_back(x);
    }
    const auto ext = upper_envelope_extension(space, subset, map.values);
    return emit(MapData{.values = {ext.values().begin(), ext.values().end()}, .domain = space.labels()});
  }

  std::string embed_delta() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    const auto delta = delta_embed(space, space.index_of(o_.point));
    return emit(MapData{.values = {delta.values().begin(), delta.values().end()}, .domain = space.labels()});
  }

  std::string net() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    json labels = json::array();
    for (std::size_t i : covering_net(space, o_.eps)) labels.push_back(space.labels()[i]);
    return emit_json({{"command", "net"}, {"t", o_.eps}, {"net", labels}});
  }

  std::string extract() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    const auto seq = std::get<MapSequenceData>(load(o_.files.at(1), Kind::MapSequence).payload);
    std::vector<LipschitzMap> maps;
    for (const auto& m : seq.maps) maps.push_back(LipschitzMap::certify(space, m));
    const auto report = extract_uniform_subsequence(space, maps, o_.eps);
    json limit = json::array();
    for (const auto& f : report.limit.values()) limit.push_back(cdf_to_json(f));
    if (!report.success) {
      failed_ = true;
      err_ << "extraction failed: pairwise d_inf " << report.pairwise_dinf << " > eps " << o_.eps << "\n";
    }
    return emit_json({{"command", "extract"},
                      {"eps", report.eps},
                      {"selected", report.selected},
                      {"residuals", report.residuals},
                      {"pairwise_dinf", report.pairwise_dinf},
                      {"lipschitz_ok", report.lipschitz_ok},
                      {"success", report.success},
                      {"limit", limit}});
  }

  std::string converse() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    std::vector<std::size_t> pts;
    if (!o_.points.empty()) {
      for (const auto& label : o_.points) pts.push_back(space.index_of(label));
    } else {
      if (!o_.seed) throw CLI::RequiredError("--seed (required with --walk)");
      Rng rng(*o_.seed);
      for (std::size_t i = 0; i < o_.walk; ++i) pts.push_back(rng.index(space.size()));
    }
    const auto w = converse_compactness_witness(space, pts, o_.eps);
    if (!w.cauchy_ok) {
      failed_ = true;
      err_ << "selected points do not cluster: worst d_L(D, H_0) = " << w.worst << "\n";
    }
    return emit_json(
        {{"command", "converse"}, {"eps", o_.eps}, {"selected", w.selected}, {"worst", w.worst}, {"cauchy_ok", w.cauchy_ok}},
        o_.seed);
  }

  std::string gen_space_cmd() const {
    const auto model = o_.model == "repair" ? SpaceModel::Repair : SpaceModel::Metric;
    const auto space = gen_space(*o_.seed, o_.n, model, star());
    return serialize_document(make_document(from_space(space, o_.tnorm), o_.seed));
  }

  std::string gen_cdf() const {
    Rng rng(*o_.seed);
    return serialize_document(make_document(random_step_cdf(rng), o_.seed));
  }

  std::string gen_lip() const {
    const auto data = load_space_data(o_.files.at(0));
    const auto space = to_space(data, tnorm_for(data));
    MapSequenceData seq;
    for (const auto& m : gen_lipschitz_maps(space, o_.count, *o_.seed))
      seq.maps.emplace_back(m.values().begin(), m.values().end());
    return serialize_document(make_document(std::move(seq), o_.seed));
  }

  bool failed() const { return failed_; }

 private:
  std::string emit(Payload payload) const { return serialize_document(make_document(std::move(payload))); }

  std::string emit_json(json body, std::optional<std::uint64_t> seed = std::nullopt) const {
    return serialize_document(make_document(std::move(body), seed));
  }

  std::string finish_axioms(const AxiomReport& report, json body) const {
    body["axioms"] = axioms_to_json(report);
    body["passed"] = report.all_passed();
    if (!report.all_passed()) {
      failed_ = true;
      report_failures(report, err_);
    }
    return emit_json(std::move(body), o_.seed);
  }

  static std::vector<StepCdf> full_values(const ProbMetricSpace& space, const MapData& map) {
    if (!map.domain) return map.values;
    if (map.domain->size() != space.size()) throw Error(ErrorCode::DomainMismatch, "map does not cover the space");
    std::vector<StepCdf> values(space.size());
    for (std::size_t k = 0; k < map.values.size(); ++k) values[space.index_of((*map.domain)[k])] = map.values[k];
    return values;
  }

  const Options& o_;
  std::ostream& err_;
  bool tnorm_given_ = false;
  mutable bool failed_ = false;
};

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic metric spaces: Levy distances, triangle functions and Lipschitz maps", "pms"};
  app.require_subcommand(1);
  Options o;

  const auto tnorm_opt = [&](CLI::App* sub) {
    return sub->add_option("--tnorm", o.tnorm, "t-norm: min, prod or luka")
        ->check(CLI::IsMember({"min", "prod", "luka", "minimum", "product", "lukasiewicz"}));
  };
  const auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", o.out, "write the output here"); };
  const auto files = [&](CLI::App* sub, std::size_t n, const std::string& what) {
    sub->add_option("files", o.files, what)->required()->expected(static_cast<int>(n));
  };
  std::vector<CLI::Option*> tnorm_opts;

  auto* dl = app.add_subcommand("dl", "modified Levy distance between two cdf documents");
  files(dl, 2, "F.cdf G.cdf");
  out_opt(dl);

  auto* conv = app.add_subcommand("conv", "sup-convolution of two cdf documents");
  files(conv, 2, "F.cdf G.cdf");
  tnorm_opts.push_back(tnorm_opt(conv));
  out_opt(conv);

  auto* sup = app.add_subcommand("sup", "pointwise supremum of cdf documents");
  sup->add_option("files", o.files, "F.cdf ...")->required()->expected(1, -1);
  out_opt(sup);

  auto* quant = app.add_subcommand("quantize", "quantize a cdf on the grid of width --eps");
  files(quant, 1, "F.cdf");
  quant->add_option("--eps", o.eps, "grid width in (0, 1]")->required();
  out_opt(quant);

  auto* ctn = app.add_subcommand("check-tnorm", "grid check of the t-norm axioms");
  tnorm_opts.push_back(tnorm_opt(ctn));
  out_opt(ctn);

  auto* cstar = app.add_subcommand("check-star", "triangle function axioms on seeded random triples");
  tnorm_opts.push_back(tnorm_opt(cstar));
  cstar->add_option("--seed", o.seed, "sample seed")->required();
  cstar->add_option("--count", o.count, "number of triples");
  cstar->add_option("--tol", o.tol, "comparison tolerance");
  out_opt(cstar);

  auto* cspace = app.add_subcommand("check-space", "per-axiom report for a space document");
  files(cspace, 1, "S.pms");
  tnorm_opts.push_back(tnorm_opt(cspace));
  cspace->add_option("--tol", o.tol, "comparison tolerance");
  out_opt(cspace);

  auto* clip = app.add_subcommand("check-lip", "check that a map is probabilistic 1-Lipschitz");
  files(clip, 2, "S.pms F.map");
  tnorm_opts.push_back(tnorm_opt(clip));
  clip->add_option("--tol", o.tol, "comparison tolerance");
  out_opt(clip);

  auto* ext = app.add_subcommand("extend", "upper envelope extension of a partial map");
  files(ext, 2, "S.pms F.map");
  tnorm_opts.push_back(tnorm_opt(ext));
  out_opt(ext);

  auto* emb = app.add_subcommand("embed-delta", "the map y -> D(y, x)");
  files(emb, 1, "S.pms");
  emb->add_option("--point", o.point, "label of x")->required();
  tnorm_opts.push_back(tnorm_opt(emb));
  out_opt(emb);

  auto* net = app.add_subcommand("net", "greedy cover by strong neighborhoods of radius --eps");
  files(net, 1, "S.pms");
  net->add_option("--eps", o.eps, "neighborhood radius t")->required();
  tnorm_opts.push_back(tnorm_opt(net));
  out_opt(net);

  auto* extract = app.add_subcommand(
      "extract",
      "extract a uniformly Cauchy subsequence of 1-Lipschitz maps.\n"
      "Each point keeps only the largest bucket of survivors, so the input must be long: "
      "the required length grows like (bucket count)^(point count). Too short a sequence "
      "fails with InsufficientSequence.");
  files(extract, 2, "S.pms maps.seq");
  extract->add_option("--eps", o.eps, "target pairwise d_inf");
  tnorm_opts.push_back(tnorm_opt(extract));
  out_opt(extract);

  auto* conv_w = app.add_subcommand("converse", "cluster a point sequence through its delta maps");
  files(conv_w, 1, "S.pms");
  auto* pts_opt = conv_w->add_option("--points", o.points, "comma-separated labels")->delimiter(',');
  auto* walk_opt = conv_w->add_option("--walk", o.walk, "draw this many points (needs --seed)");
  pts_opt->excludes(walk_opt);
  conv_w->add_option("--seed", o.seed, "seed for --walk");
  conv_w->add_option("--eps", o.eps, "clustering scale");
  tnorm_opts.push_back(tnorm_opt(conv_w));
  out_opt(conv_w);

  auto* gen = app.add_subcommand("gen", "seeded generators");
  gen->require_subcommand(1);
  auto* gspace = gen->add_subcommand("space", "random probabilistic metric space");
  gspace->add_option("--seed", o.seed, "generator seed")->required();
  gspace->add_option("--n", o.n, "number of points")->check(CLI::PositiveNumber);
  gspace->add_option("--model", o.model, "metric or repair")->check(CLI::IsMember({"metric", "repair"}));
  tnorm_opts.push_back(tnorm_opt(gspace));
  out_opt(gspace);
  auto* gcdf = gen->add_subcommand("cdf", "random step cdf");
  gcdf->add_option("--seed", o.seed, "generator seed")->required();
  out_opt(gcdf);
  auto* glip = gen->add_subcommand("lip", "sequence of certified 1-Lipschitz maps");
  files(glip, 1, "S.pms");
  glip->add_option("--seed", o.seed, "generator seed")->required();
  glip->add_option("--count", o.count, "number of maps");
  tnorm_opts.push_back(tnorm_opt(glip));
  out_opt(glip);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (conv_w->parsed() && o.points.empty() && o.walk == 0)
      throw CLI::RequiredError("converse needs --points or --walk");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Runner run(o, err);
  run.set_tnorm_given(std::any_of(tnorm_opts.begin(), tnorm_opts.end(), [](const CLI::Option* t) { return t->count() > 0; }));

  std::string text;
  try {
    if (dl->parsed()) text = run.dl();
    else if (conv->parsed()) text = run.conv();
    else if (sup->parsed()) text = run.sup();
    else if (quant->parsed()) text = run.quantize_cmd();
    else if (ctn->parsed()) text = run.check_tnorm();
    else if (cstar->parsed()) text = run.check_star();
    else if (cspace->parsed()) text = run.check_space();
    else if (clip->parsed()) text = run.check_lip();
    else if (ext->parsed()) text = run.extend();
    else if (emb->parsed()) text = run.embed_delta();
    else if (net->parsed()) text = run.net();
    else if (extract->parsed()) text = run.extract();
    else if (conv_w->parsed()) text = run.converse();
    else if (gspace->parsed()) text = run.gen_space_cmd();
    else if (gcdf->parsed()) text = run.gen_cdf();
    else if (glip->parsed()) text = run.gen_lip();
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error";
    if (e.position() > 0) err << " at byte " << e.position();
    err << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out << "\n";
      return kUsage;
    }
    file << text;
  }
  return run.failed() ? kCheckFailed : kOk;
}

}  // namespace pms::cli
