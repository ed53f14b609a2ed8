// Copyright 2026 The Guidegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "guidegraph/cli/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

#include "guidegraph/base/json_util.h"
#include "guidegraph/base/util.h"
#include "guidegraph/classify/grid_search.h"
#include "guidegraph/classify/model.h"
#include "guidegraph/enrich/concepts.h"
#include "guidegraph/enrich/thesaurus.h"
#include "guidegraph/enrich/tnm.h"
#include "guidegraph/graph/builder.h"
#include "guidegraph/pdf/document.h"
#include "guidegraph/pdf/geometry_io.h"
#include "guidegraph/serialize/csv.h"
#include "guidegraph/serialize/jsonld.h"
#include "guidegraph/synth/corpus.h"
#include "guidegraph/synth/phrases.h"
#include "guidegraph/synth/score.h"

namespace guidegraph::cli {
namespace {

namespace fs = std::filesystem;
using graph::GuidelineGraph;

struct Common {
  std::string config;
  int jobs = 0;  // 0: take the config file's value
  std::string base_iri = serialize::kDefaultBaseIri;
};

class Context {
 public:
  Context(const Common &common, std::ostream &out, std::ostream &err)
      : common_(common), out_(out), err_(err) {}

  graph::PipelineConfig Pipeline() const {
    graph::PipelineConfig config;
    if (!common_.config.empty()) config = graph::ParsePipelineConfig(ReadFile(common_.config));
    if (common_.jobs > 0) config.jobs = common_.jobs;
    return config;
  }

  int Jobs() const { return common_.jobs > 0 ? common_.jobs : Pipeline().jobs; }

  // Empty path or "-" means standard output.
  void Write(const std::string &path, std::string_view data) const {
    if (path.empty() || path == "-") {
      out_ << data;
    } else {
      WriteFile(path, data);
    }
  }

  void WriteGraph(const std::string &path, const GuidelineGraph &g) const {
    serialize::JsonLdOptions options;
    options.base_iri = common_.base_iri;
    Write(path, serialize::ToJsonLd(g, options));
  }

  GuidelineGraph ReadGraph(const std::string &path) const {
    return serialize::FromJsonLd(ReadFile(path));
  }

  std::ostream &log() const { return err_; }

 private:
  const Common &common_;
  std::ostream &out_;
  std::ostream &err_;
};

bool LooksLikeJson(std::string_view text) {
  std::string_view t = Trim(text);
  return !t.empty() && (t.front() == '{' || t.front() == '[');
}

// ---- extract

struct ExtractArgs {
  std::string input, output, geometry_out;
  bool geometry_in = false;
};

int Extract(const Context &ctx, const ExtractArgs &a) {
  std::string bytes = ReadFile(a.input);
  graph::PipelineConfig config = ctx.Pipeline();
  pdf::DocumentGeometry doc;
  if (a.geometry_in || LooksLikeJson(bytes)) {
    doc = pdf::ImportGeometry(bytes);
  } else {
    pdf::ParseOptions options;
    options.jobs = config.jobs;
    pdf::ParseReport report;
    doc = pdf::ParseDocument(bytes, options, &report);
    for (const std::string &w : report.warnings) ctx.log() << "warning: " << w << "\n";
  }
  if (!a.geometry_out.empty()) WriteFile(a.geometry_out, pdf::ExportGeometry(doc));
  GuidelineGraph g = graph::BuildGraph(doc, config);
  for (const graph::Warning &w : g.warnings) {
    ctx.log() << "warning: page " << w.page << " " << w.kind << ": " << w.detail << "\n";
  }
  ctx.WriteGraph(a.output, g);
  ctx.log() << "extracted " << g.nodes.size() << " nodes, " << g.edges.size() << " edges, "
            << g.footnotes.size() << " footnotes from " << doc.pages.size() << " pages\n";
  return kOk;
}

// ---- enrich

struct EnrichArgs {
  std::string input, output;
  bool tnm = false;
  std::string lexicon, overrides, abbrev;
  double threshold = 0.7;
  std::string remote_endpoint, stub_fixture;
  bool strict_remote = false;
  int remote_timeout = 10;
  std::string gold, report;
};

int Enrich(const Context &ctx, const EnrichArgs &a) {
  if (!a.tnm && a.lexicon.empty()) {
    throw Error(ErrorCategory::kInput, "Usage", "enrich needs --tnm and/or --lexicon");
  }
  if (!a.remote_endpoint.empty() && !a.stub_fixture.empty()) {
    throw Error(ErrorCategory::kInput, "Usage",
                "--remote-endpoint and --stub-fixture are mutually exclusive");
  }
  GuidelineGraph g = ctx.ReadGraph(a.input);
  if (a.tnm) g = enrich::AnnotateTnm(std::move(g));
  if (!a.lexicon.empty()) {
    enrich::ConceptResources resources;
    resources.lexicon = enrich::ParseLexicon(ReadFile(a.lexicon));
    if (!a.overrides.empty()) resources.overrides = enrich::ParseOverrides(ReadFile(a.overrides));
    if (!a.abbrev.empty()) {
      resources.abbreviations = enrich::ParseAbbreviations(ReadFile(a.abbrev));
    }
    std::unique_ptr<enrich::ThesaurusClient> client;
    if (!a.remote_endpoint.empty()) {
      client = std::make_unique<enrich::HttpThesaurusClient>(a.remote_endpoint, a.remote_timeout);
    } else if (!a.stub_fixture.empty()) {
      client = std::make_unique<enrich::StubThesaurusClient>(ReadFile(a.stub_fixture));
    }
    enrich::ConceptOptions options;
    options.threshold = a.threshold;
    options.client = client.get();
    options.strict = a.strict_remote;
    options.max_in_flight = std::min(4, std::max(1, ctx.Jobs()));
    enrich::ConceptReport report;
    g = enrich::AnnotateConcepts(std::move(g), resources, options, &report);
    if (!a.gold.empty()) enrich::ScoreAgainstGold(g, enrich::ParseGold(ReadFile(a.gold)), report);
    if (!a.report.empty()) WriteFile(a.report, enrich::FormatReport(report));
    ctx.log() << "linked " << report.mentions << " mentions; " << report.remote_queries
              << " remote queries, " << report.remote_failures << " failed\n";
  }
  ctx.WriteGraph(a.output, g);
  return kOk;
}

// ---- train / classify

struct TrainArgs {
  std::string dataset, grid, output, report;
  int folds = 10;
  uint64_t seed = 0;
};

classify::LabeledDataset LoadDataset(const std::string &path) {
  std::string text = ReadFile(path);
  if (!LooksLikeJson(text)) return classify::ParseDatasetTsv(text);
  GuidelineGraph g = serialize::FromJsonLd(text);
  std::map<std::string, graph::NodeClass> labels;
  for (const auto &[id, ann] : g.annotations) {
    if (ann.node_class) labels[id] = *ann.node_class;
  }
  return classify::BuildDataset(g, labels);
}

int Train(const Context &ctx, const TrainArgs &a) {
  classify::LabeledDataset data = LoadDataset(a.dataset);
  classify::PipelineParams params;
  if (!a.grid.empty()) {
    std::vector<classify::PipelineParams> grid = classify::ParseGrid(ReadFile(a.grid));
    classify::GridResult result = classify::GridSearchCv(data, grid, a.folds, a.seed, ctx.Jobs());
    if (!a.report.empty()) WriteFile(a.report, classify::FormatGridResult(result));
    ctx.log() << "grid: " << grid.size() << " combos x " << a.folds
              << " folds, best mean accuracy " << FormatFixed3(result.best_mean_accuracy)
              << " (combo " << result.best_index << ")\n";
    params = result.best_params;
  }
  params.sgd.seed = a.seed;
  classify::LinearModel model = classify::Train(data, params);
  ctx.Write(a.output, classify::SaveModel(model));
  ctx.log() << "trained on " << data.rows.size() << " rows, " << model.vocabulary.size()
            << " features\n";
  return kOk;
}

int Classify(const Context &ctx, const std::string &input, const std::string &model_path,
             const std::string &output) {
  classify::LinearModel model = classify::LoadModel(ReadFile(model_path));
  GuidelineGraph g = classify::AnnotateClasses(ctx.ReadGraph(input), model);
  ctx.WriteGraph(output, g);
  return kOk;
}

// ---- synth

struct SynthArgs {
  uint64_t seed = 0;
  bool seed_given = false;
  std::optional<int> pages, columns, nodes;
  std::optional<double> edge_density, footnote_rate, link_rate;
  double jitter = 0;
  std::string spec, output, truth;
  int count = 0;
  std::string out_dir, class_dataset;
};

synth::CorpusSpec SpecFor(const SynthArgs &a, uint64_t seed) {
  synth::CorpusSpec s = a.spec.empty() ? synth::CorpusSpecForSeed(seed)
                                       : synth::SpecFromJson(ParseJson(ReadFile(a.spec)));
  if (a.spec.empty() || a.seed_given || a.count > 0) s.seed = seed;
  if (a.pages) s.pages = *a.pages;
  if (a.columns) s.columns_per_page = *a.columns;
  if (a.nodes) s.nodes_per_column = *a.nodes;
  if (a.edge_density) s.edge_density = *a.edge_density;
  if (a.footnote_rate) s.footnote_rate = *a.footnote_rate;
  if (a.link_rate) s.cross_page_link_rate = *a.link_rate;
  return synth::Perturb(s, a.jitter);
}

int Synth(const Context &ctx, const SynthArgs &a) {
  if (!a.class_dataset.empty()) {
    int n = a.count > 0 ? a.count : 500;
    WriteFile(a.class_dataset,
              classify::FormatDatasetTsv(synth::GenerateClassDataset(a.seed, n)));
    ctx.log() << "wrote " << n << " labelled rows to " << a.class_dataset << "\n";
    if (a.out_dir.empty() && a.output.empty()) return kOk;
  }
  if (!a.out_dir.empty()) {
    if (a.count <= 0) throw Error(ErrorCategory::kInput, "Usage", "--out-dir needs --count N");
    fs::create_directories(a.out_dir);
    std::vector<synth::CorpusSpec> specs;
    for (int i = 0; i < a.count; ++i) specs.push_back(SpecFor(a, a.seed + i));
    std::vector<synth::GeneratedDocument> docs = synth::GenerateCorpus(specs, ctx.Jobs());
    std::vector<synth::ManifestEntry> manifest;
    for (size_t i = 0; i < docs.size(); ++i) {
      std::string stem = "doc-" + std::to_string(specs[i].seed);
      synth::ManifestEntry e{stem + ".pdf", stem + ".truth.jsonld", specs[i]};
      WriteFile((fs::path(a.out_dir) / e.pdf_path).string(), docs[i].pdf);
      WriteFile((fs::path(a.out_dir) / e.truth_path).string(),
                serialize::ToJsonLd(docs[i].truth));
      manifest.push_back(std::move(e));
    }
    WriteFile((fs::path(a.out_dir) / "manifest.json").string(), synth::FormatManifest(manifest));
    ctx.log() << "wrote " << docs.size() << " documents to " << a.out_dir << "\n";
    return kOk;
  }
  if (a.output.empty()) {
    throw Error(ErrorCategory::kInput, "Usage", "synth needs -o, --out-dir or --class-dataset");
  }
  synth::GeneratedDocument doc = synth::GenerateDocument(SpecFor(a, a.seed));
  ctx.Write(a.output, doc.pdf);
  if (!a.truth.empty()) WriteFile(a.truth, serialize::ToJsonLd(doc.truth));
  ctx.log() << "generated " << doc.truth.nodes.size() << " nodes, " << doc.truth.edges.size()
            << " edges, " << doc.truth.footnotes.size() << " footnotes\n";
  return kOk;
}

// ---- eval

struct EvalArgs {
  std::string extracted, truth, manifest, output;
  std::string format = "json";
};

int Eval(const Context &ctx, const EvalArgs &a) {
  synth::EvalReport report;
  if (!a.manifest.empty()) {
    if (!a.extracted.empty() || !a.truth.empty()) {
      throw Error(ErrorCategory::kInput, "Usage", "--manifest excludes --extracted/--truth");
    }
    fs::path dir = fs::path(a.manifest).parent_path();
    graph::PipelineConfig config = ctx.Pipeline();
    for (const synth::ManifestEntry &e : synth::ParseManifest(ReadFile(a.manifest))) {
      GuidelineGraph got =
          graph::BuildGraph(pdf::ParseDocument(ReadFile((dir / e.pdf_path).string())), config);
      GuidelineGraph truth = ctx.ReadGraph((dir / e.truth_path).string());
      report = synth::CombineReports(report, synth::ScoreExtraction(got, truth));
    }
  } else {
    if (a.extracted.empty() || a.truth.empty()) {
      throw Error(ErrorCategory::kInput, "Usage",
                  "eval needs --extracted and --truth, or --manifest");
    }
    report = synth::ScoreExtraction(ctx.ReadGraph(a.extracted), ctx.ReadGraph(a.truth));
  }
  ctx.Write(a.output, a.format == "json" ? synth::ReportToJson(report).dump(2) + "\n"
                                         : synth::FormatReportText(report));
  return kOk;
}

// ---- export-csv

int ExportCsv(const Context &ctx, const std::string &input, const std::string &dir) {
  serialize::CsvExport csv = serialize::ExportCsv(ctx.ReadGraph(input));
  fs::create_directories(dir);
  WriteFile((fs::path(dir) / "nodes.csv").string(), csv.nodes);
  WriteFile((fs::path(dir) / "edges.csv").string(), csv.edges);
  return kOk;
}

// Help of the subcommand being parsed, else of the whole program.
std::string HelpFor(const CLI::App &app) {
  for (const CLI::App *sub : app.get_subcommands()) return sub->help();
  return app.help();
}

void AddCommon(CLI::App *cmd, Common &c) {
  cmd->add_option("--config", c.config, "Layout/graph threshold file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--jobs", c.jobs, "Worker cap")->check(CLI::PositiveNumber);
  cmd->add_option("--base-iri", c.base_iri, "Base IRI for JSON-LD output");
}

}  // namespace

ExitCode ExitCodeFor(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInput:
      return kInputError;
    case ErrorCategory::kUnsupported:
      return kUnsupportedError;
    case ErrorCategory::kInternal:
      return kInternalError;
  }
  return kInternalError;
}

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Clinical guideline PDFs to knowledge graphs", "guidegraph"};
  app.require_subcommand(1);
  Common common;
  std::function<int(const Context &)> action;

  ExtractArgs ex;
  CLI::App *extract = app.add_subcommand("extract", "PDF or geometry file to JSON-LD graph");
  extract->add_option("input", ex.input, "PDF, or geometry interchange JSON")->required();
  extract->add_option("-o,--output", ex.output, "JSON-LD output (default stdout)");
  extract->add_option("--emit-geometry", ex.geometry_out, "Also write the geometry interchange");
  extract->add_flag("--geometry", ex.geometry_in, "Treat input as geometry interchange");
  AddCommon(extract, common);
  extract->callback([&] { action = [&](const Context &c) { return Extract(c, ex); }; });

  EnrichArgs en;
  CLI::App *enrich = app.add_subcommand("enrich", "Stage/TNM and concept annotation");
  enrich->add_option("input", en.input, "JSON-LD graph")->required();
  enrich->add_option("-o,--output", en.output, "JSON-LD output (default stdout)");
  enrich->add_flag("--tnm", en.tnm, "Annotate cancer stage and TNM mentions");
  enrich->add_option("--lexicon", en.lexicon, "Lexicon TSV; enables concept linking");
  enrich->add_option("--overrides", en.overrides, "Manual mapping TSV");
  enrich->add_option("--abbrev", en.abbrev, "Abbreviation TSV (default CT, MRI, RT)");
  enrich->add_option("--threshold", en.threshold, "3-gram Jaccard threshold")
      ->check(CLI::Range(0.0, 1.0));
  enrich->add_option("--remote-endpoint", en.remote_endpoint, "Thesaurus search URL");
  enrich->add_option("--remote-timeout", en.remote_timeout, "Seconds per request")
      ->check(CLI::PositiveNumber);
  enrich->add_option("--stub-fixture", en.stub_fixture, "Offline thesaurus fixture JSON");
  enrich->add_flag("--strict-remote", en.strict_remote, "Fail on remote lookup errors");
  enrich->add_option("--gold", en.gold, "Gold mapping TSV for the report");
  enrich->add_option("--report", en.report, "Concept mapping report TSV");
  AddCommon(enrich, common);
  enrich->callback([&] { action = [&](const Context &c) { return Enrich(c, en); }; });

  TrainArgs tr;
  CLI::App *train = app.add_subcommand("train", "Train the node-role classifier");
  train->add_option("--dataset", tr.dataset, "label<TAB>text TSV, or JSON-LD with node classes")
      ->required();
  train->add_option("--grid", tr.grid, "Hyper-parameter grid JSON");
  train->add_option("--folds", tr.folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  train->add_option("--seed", tr.seed, "Seed");
  train->add_option("-o,--output", tr.output, "Model file (default stdout)");
  train->add_option("--report", tr.report, "Grid search table TSV");
  AddCommon(train, common);
  train->callback([&] { action = [&](const Context &c) { return Train(c, tr); }; });

  std::string cl_input, cl_model, cl_output;
  CLI::App *classify = app.add_subcommand("classify", "Annotate node classes");
  classify->add_option("input", cl_input, "JSON-LD graph")->required();
  classify->add_option("--model", cl_model, "Model file")->required();
  classify->add_option("-o,--output", cl_output, "JSON-LD output (default stdout)");
  AddCommon(classify, common);
  classify->callback([&] {
    action = [&](const Context &c) { return Classify(c, cl_input, cl_model, cl_output); };
  });

  SynthArgs sy;
  CLI::App *synth = app.add_subcommand("synth", "Generate synthetic documents with truth");
  CLI::Option *synth_seed =
      synth->add_option("--seed", sy.seed, "Seed (first seed in corpus mode)");
  synth->add_option("--pages", sy.pages, "Pages")->check(CLI::Range(1, 1000));
  synth->add_option("--columns", sy.columns, "Columns per page")->check(CLI::Range(2, 5));
  synth->add_option("--nodes", sy.nodes, "Nodes per column")->check(CLI::Range(1, 6));
  synth->add_option("--edge-density", sy.edge_density)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--footnote-rate", sy.footnote_rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--link-rate", sy.link_rate, "Cross-page link rate")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--jitter", sy.jitter, "Jitter in points")->check(CLI::Range(0.0, 10.0));
  synth->add_option("--spec", sy.spec, "Corpus spec JSON");
  synth->add_option("-o,--output", sy.output, "PDF output (default stdout)");
  synth->add_option("--truth", sy.truth, "Ground-truth sidecar (JSON-LD)");
  synth->add_option("--count", sy.count, "Documents (corpus mode) or dataset rows")
      ->check(CLI::PositiveNumber);
  synth->add_option("--out-dir", sy.out_dir, "Corpus directory; writes manifest.json");
  synth->add_option("--class-dataset", sy.class_dataset, "Write a labelled class dataset TSV");
  AddCommon(synth, common);
  synth->callback([&] {
    sy.seed_given = synth_seed->count() > 0;
    action = [&](const Context &c) { return Synth(c, sy); };
  });

  EvalArgs ev;
  CLI::App *eval = app.add_subcommand("eval", "Score an extracted graph against truth");
  eval->add_option("--extracted", ev.extracted, "Extracted JSON-LD");
  eval->add_option("--truth", ev.truth, "Truth sidecar");
  eval->add_option("--manifest", ev.manifest, "Extract and score a whole corpus");
  eval->add_option("-o,--output", ev.output, "Report (default stdout)");
  eval->add_option("--format", ev.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  AddCommon(eval, common);
  eval->callback([&] { action = [&](const Context &c) { return Eval(c, ev); }; });

  std::string csv_input, csv_dir;
  CLI::App *csv = app.add_subcommand("export-csv", "Write nodes.csv and edges.csv");
  csv->add_option("input", csv_input, "JSON-LD graph")->required();
  csv->add_option("-o,--output", csv_dir, "Output directory")->required();
  AddCommon(csv, common);
  csv->callback([&] {
    action = [&](const Context &c) { return ExportCsv(c, csv_input, csv_dir); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << HelpFor(app);
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << HelpFor(app);
    return kInputError;
  }
  Context ctx(common, out, err);
  try {
    return action(ctx);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.category());
  } catch (const fs::filesystem_error &e) {
    err << "error: IoError: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    err << "error: internal: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace guidegraph::cli
