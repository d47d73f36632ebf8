#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlcc/dbpedia.hpp"
#include "dlcc/digest.hpp"
#include "dlcc/error.hpp"
#include "dlcc/evaluation.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/reports.hpp"
#include "dlcc/synth.hpp"

namespace dlcc {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void log(const std::string& msg) { std::cerr << "[dlcc] " << msg << "\n"; }

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parseNumber(const std::string& key, const std::string& value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size())
    throw UsageError("config: bad value for " + key + ": '" + value + "'");
  return out;
}

// Flat `key = value` file using SynthParams field names; '#' starts a comment.
void applyConfig(const fs::path& file, SynthParams& p, double& trainFraction) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config " + file.string());
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(file.string() + ":" + std::to_string(lineNo) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "numClasses") p.numClasses = parseNumber<int>(key, value);
    else if (key == "numProperties") p.numProperties = parseNumber<int>(key, value);
    else if (key == "numInstances") p.numInstances = parseNumber<int>(key, value);
    else if (key == "branchingFactor") p.branchingFactor = parseNumber<int>(key, value);
    else if (key == "maxTriplesPerNode") p.maxTriplesPerNode = parseNumber<int>(key, value);
    else if (key == "numNodesInterest") p.numNodesInterest = parseNumber<int>(key, value);
    else if (key == "skewStop") p.skewStop = parseNumber<double>(key, value);
    else if (key == "seed") p.seed = parseNumber<std::uint64_t>(key, value);
    else if (key == "trainFraction") trainFraction = parseNumber<double>(key, value);
    else throw UsageError(file.string() + ":" + std::to_string(lineNo) + ": unknown key " + key);
  }
}

std::vector<std::string> splitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

std::vector<Family> parseFamilies(const std::vector<std::string>& items) {
  std::vector<Family> out;
  for (const auto& name : splitList(items)) {
    auto f = parseFamily(name);
    if (!f) throw UsageError("unknown test case: " + name);
    out.push_back(*f);
  }
  return out;
}

// ------------------------------------------------------------ subcommands

struct SynthArgs {
  SynthParams params;
  double trainFraction = 0.8;
  std::string config;
  std::string out = "gold";
  std::string versionTag = "v1";
  bool force = false;
};

int cmdGenerateSynthetic(const SynthArgs& args, const CLI::App& sub) {
  SynthParams p;
  double trainFraction = 0.8;
  if (!args.config.empty()) applyConfig(args.config, p, trainFraction);
  auto given = [&](const char* flag) { return sub.get_option(flag)->count() > 0; };
  if (given("--num-classes")) p.numClasses = args.params.numClasses;
  if (given("--num-properties")) p.numProperties = args.params.numProperties;
  if (given("--num-instances")) p.numInstances = args.params.numInstances;
  if (given("--branching-factor")) p.branchingFactor = args.params.branchingFactor;
  if (given("--max-triples-per-node")) p.maxTriplesPerNode = args.params.maxTriplesPerNode;
  if (given("--num-nodes-interest")) p.numNodesInterest = args.params.numNodesInterest;
  if (given("--skew-stop")) p.skewStop = args.params.skewStop;
  if (given("--seed")) p.seed = args.params.seed;
  if (given("--train-fraction")) trainFraction = args.trainFraction;
  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  if (!(trainFraction >= 0.0 && trainFraction <= 1.0)) throw UsageError("--train-fraction must be in [0, 1]");

  log("generating synthetic gold standard (seed " + std::to_string(p.seed) + ")");
  WriteOptions options;
  options.versionTag = args.versionTag;
  options.overwrite = args.force;
  const auto root = generateSyntheticGoldStandard(p, args.out, options, trainFraction);
  log("wrote " + root.string());
  return kExitOk;
}

struct DbpediaArgs {
  std::string endpoint;
  std::vector<std::string> domains;
  std::vector<int> sizes{50, 500, 5000};
  std::vector<std::string> testCases;
  std::uint64_t seed = 42;
  std::string out = "gold";
  std::string queries = DLCC_QUERY_DIR;
  std::string versionTag = "v1";
  int jobs = 1;
  bool renderOnly = false;
  bool force = false;
  std::size_t pageSize = 10000;
  double poolFactor = 2.0;
  int backoffMs = 1000;
};

int cmdGenerateDbpedia(const DbpediaArgs& args) {
  const QueryCatalog catalog(args.queries);
  DbpediaOptions options;
  if (!args.testCases.empty()) options.testCases = parseFamilies(args.testCases);
  if (!args.domains.empty()) {
    options.domains = splitList(args.domains);
    for (const auto& d : options.domains) {
      if (!isKnownDomain(d)) throw UsageError("unknown domain: " + d);
    }
  }
  if (args.renderOnly) {
    const auto files = renderAllQueries(catalog, options.testCases, options.domains, args.out);
    log("rendered " + std::to_string(files.size()) + " queries below " + (fs::path(args.out) / "queries").string());
    return kExitOk;
  }
  options.sizes = args.sizes;
  for (int s : options.sizes) {
    if (s < 1) throw UsageError("--sizes must be positive");
  }
  options.seed = args.seed;
  options.jobs = args.jobs;
  options.versionTag = args.versionTag;
  options.overwrite = args.force;
  options.fetch.pageSize = args.pageSize;
  options.fetch.poolFactor = args.poolFactor;
  options.fetch.backoff = std::chrono::milliseconds(args.backoffMs);

  const std::string endpoint = resolveEndpoint(args.endpoint);
  auto transport = makeTransport(endpoint);
  log("querying " + transport->describe());
  const auto report = buildDbpediaGoldStandard(*transport, catalog, options, args.out);
  for (const auto& w : report.warnings) log("warning: " + w);
  std::size_t ok = 0;
  for (const auto& c : report.cells) {
    if (c.status == "ok") ++ok;
    else log(c.testCase + "/" + c.domain + "/" + std::to_string(c.size) + ": " + c.status + ": " + c.message);
  }
  log("wrote " + report.root.string() + " (" + std::to_string(ok) + " of " +
      std::to_string(report.cells.size()) + " cells populated)");
  return report.anyErrors() ? kExitFailure : kExitOk;
}

struct EvalArgs {
  std::string gold;
  std::vector<std::string> embeddings;
  std::string out = "results";
  std::string missing = "error";
  std::vector<std::string> classifiers;
  int jobs = 1;
  std::uint64_t seed = 42;
  double alpha = kDefaultAlpha;
  int bonferroniM = kDefaultBonferroniM;
  bool exactBinomial = false;
};

int cmdEvaluate(const EvalArgs& args) {
  EvalOptions options;
  auto policy = parsePolicy(args.missing);
  if (!policy) throw UsageError("--missing must be error, drop or zero");
  options.policy = *policy;
  options.seed = args.seed;
  options.jobs = args.jobs;
  options.alpha = args.alpha;
  options.bonferroniM = args.bonferroniM;
  options.exactBinomial = args.exactBinomial;
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) throw UsageError("--alpha must be in (0, 1)");
  if (args.bonferroniM < 1) throw UsageError("--bonferroni-m must be >= 1");
  if (!args.classifiers.empty()) {
    options.classifiers.clear();
    for (const auto& name : splitList(args.classifiers)) {
      auto k = parseClassifierKind(name);
      if (!k) throw UsageError("unknown classifier: " + name);
      options.classifiers.push_back(*k);
    }
  }

  std::vector<NamedEmbedding> embeddings;
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& spec : args.embeddings) {
    const auto eq = spec.find('=');
    const fs::path path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    const std::string name = eq == std::string::npos ? path.stem().string() : spec.substr(0, eq);
    if (name.empty()) throw UsageError("empty embedding name in '" + spec + "'");
    if (!fs::exists(path)) throw UsageError("embedding not found: " + path.string());
    log("loading embedding " + name + " from " + path.string());
    std::vector<std::string> warnings;
    embeddings.push_back(loadNamedEmbedding(name, path, &warnings));
    for (const auto& w : warnings) log("warning: " + w);
    inputs[name] = fs::is_directory(path) ? nlohmann::json(digestTree(path)) : nlohmann::json(sha256File(path));
  }

  const auto results = runSuite(args.gold, embeddings, options);
  std::size_t errors = 0;
  for (const auto& r : results) {
    if (!r.ok()) {
      ++errors;
      log(r.embedding + " " + r.testCase + "/" + r.domain + "/" + std::to_string(r.size) +
          (r.hard ? "/hard " : " ") + classifierName(r.classifier) + ": " + r.error);
    }
  }
  emitReports(results, args.out);

  std::vector<std::string> kinds;
  for (auto k : options.classifiers) kinds.push_back(classifierName(k));
  nlohmann::json manifest = {
      {"tool", "dlcc"},
      {"toolVersion", DLCC_VERSION},
      {"subcommand", "evaluate"},
      {"seed", options.seed},
      {"params",
       {{"gold", args.gold},
        {"missing", policyName(options.policy)},
        {"alpha", options.alpha},
        {"bonferroniM", options.bonferroniM},
        {"exactBinomial", options.exactBinomial},
        {"classifiers", kinds}}},
      {"inputs", {{"embeddings", inputs}, {"gold", digestTree(args.gold, {"manifest.json"})}}},
      {"files", digestTree(args.out, {"manifest.json"})},
      {"created", utcTimestamp()},
  };
  writeText(fs::path(args.out) / "manifest.json", manifest.dump(2) + "\n");
  log("evaluated " + std::to_string(results.size()) + " cells (" + std::to_string(errors) +
      " failed); reports in " + args.out);
  return kExitOk;
}

int cmdReport(const std::string& input, const std::string& out) {
  const auto results = readAccuracyPerClassifier(input);
  emitReports(results, out);
  log("wrote reports to " + out);
  return kExitOk;
}

}  // namespace

int runCli(int argc, char** argv) {
  CLI::App app{"Description-logic class constructor benchmark for knowledge graph embeddings", "dlcc"};
  app.set_version_flag("--version", DLCC_VERSION);
  app.require_subcommand(1);

  SynthArgs synth;
  auto* gs = app.add_subcommand("generate-synthetic", "Generate the synthetic gold standard");
  gs->add_option("--num-classes", synth.params.numClasses, "Classes in the hierarchy");
  gs->add_option("--num-properties", synth.params.numProperties, "Object properties");
  gs->add_option("--num-instances", synth.params.numInstances, "Typed instances");
  gs->add_option("--branching-factor", synth.params.branchingFactor, "Children per class");
  gs->add_option("--max-triples-per-node", synth.params.maxTriplesPerNode, "Noise edges per entity, upper bound");
  gs->add_option("--num-nodes-interest", synth.params.numNodesInterest, "Positives (and negatives) per test case");
  gs->add_option("--skew-stop", synth.params.skewStop, "Stop probability of the domain/range descent");
  gs->add_option("--seed", synth.params.seed, "Random seed");
  gs->add_option("--train-fraction", synth.trainFraction, "Share of each class used for training");
  gs->add_option("--config", synth.config, "key = value file with SynthParams names");
  gs->add_option("--out", synth.out, "Output directory")->capture_default_str();
  gs->add_option("--version-tag", synth.versionTag, "Gold standard version tag")->capture_default_str();
  gs->add_flag("--force", synth.force, "Replace an existing version directory");

  DbpediaArgs db;
  auto* gd = app.add_subcommand("generate-dbpedia", "Build the DBpedia gold standard from a SPARQL endpoint");
  gd->add_option("--endpoint", db.endpoint,
                 std::string("SPARQL endpoint URL or fixture:<file> (default: $") + kEndpointEnvVar + " or " +
                     kDefaultEndpoint + ")");
  gd->add_option("--domains", db.domains, "Comma-separated domains");
  gd->add_option("--sizes", db.sizes, "Size classes")->delimiter(',');
  gd->add_option("--test-cases", db.testCases, "Comma-separated test cases");
  gd->add_option("--seed", db.seed, "Random seed");
  gd->add_option("--out", db.out, "Output directory")->capture_default_str();
  gd->add_option("--queries", db.queries, "Query template directory")->capture_default_str();
  gd->add_option("--version-tag", db.versionTag, "Gold standard version tag")->capture_default_str();
  gd->add_option("--jobs", db.jobs, "Parallel (test case, domain) pairs")->check(CLI::PositiveNumber);
  gd->add_option("--page-size", db.pageSize, "Rows per LIMIT/OFFSET page")->check(CLI::PositiveNumber);
  gd->add_option("--pool-factor", db.poolFactor, "Rows pooled before shuffling, per requested row");
  gd->add_option("--retry-backoff-ms", db.backoffMs, "Initial retry back-off");
  gd->add_flag("--render-only", db.renderOnly, "Write the rendered queries and stop");
  gd->add_flag("--force", db.force, "Replace an existing version directory");

  EvalArgs ev;
  auto* ee = app.add_subcommand("evaluate", "Train and score the classifier suite on a gold standard");
  ee->add_option("--gold", ev.gold, "Gold standard version directory")->required();
  ee->add_option("--embedding", ev.embeddings, "name=path (file or directory of tcXX.txt); repeatable")->required();
  ee->add_option("--out", ev.out, "Report directory")->capture_default_str();
  ee->add_option("--missing", ev.missing, "Missing vector policy: error, drop or zero")->capture_default_str();
  ee->add_option("--classifiers", ev.classifiers, "Comma-separated subset of the suite");
  ee->add_option("--jobs", ev.jobs, "Parallel evaluation units")->check(CLI::PositiveNumber);
  ee->add_option("--seed", ev.seed, "Classifier seed");
  ee->add_option("--alpha", ev.alpha, "Significance level");
  ee->add_option("--bonferroni-m", ev.bonferroniM, "Bonferroni divisor");
  ee->add_flag("--exact-binomial", ev.exactBinomial, "Exact binomial tail instead of the normal approximation");

  std::string reportIn, reportOut = "results";
  auto* rp = app.add_subcommand("report", "Re-emit the report family from accuracy_per_classifier.csv");
  rp->add_option("--input", reportIn, "accuracy_per_classifier.csv")->required();
  rp->add_option("--out", reportOut, "Report directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gs->parsed()) return cmdGenerateSynthetic(synth, *gs);
    if (gd->parsed()) return cmdGenerateDbpedia(db);
    if (ee->parsed()) return cmdEvaluate(ev);
    if (rp->parsed()) return cmdReport(reportIn, reportOut);
  } catch (const UsageError& e) {
    std::cerr << "dlcc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingVectorError& e) {
    std::cerr << "dlcc: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "dlcc: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int runCli(const std::vector<std::string>& args) {
  std::vector<std::string> storage{"dlcc"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return runCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace dlcc
