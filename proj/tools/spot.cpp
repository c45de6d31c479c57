#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spot/checkpoint.hpp"
#include "spot/cluster.hpp"
#include "spot/errors.hpp"
#include "spot/experiment.hpp"
#include "spot/fixtures.hpp"
#include "spot/library.hpp"
#include "spot/stats.hpp"
#include "spot/transfer_table.hpp"

namespace {

using namespace spot;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string method_name(TransferMethod m) {
  switch (m) {
    case TransferMethod::BestOfTopK: return "best-of-top-k";
    case TransferMethod::WeightedAverage: return "weighted-average";
    case TransferMethod::Mixture: return "mixture";
  }
  return "?";
}

int cmd_train_source(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig config = load_experiment_config(config_path);
  run_train_source(config, out_dir);
  const LibraryManifest manifest = load_manifest_lenient(std::filesystem::path(out_dir) /
                                                         "manifest.json");
  std::cout << "trained " << manifest.entries.size() << " source prompts into " << out_dir
            << "\n";
  return 0;
}

int cmd_embed(const std::string& library_dir) {
  run_embed(library_dir);
  const LibraryManifest manifest =
      load_library(std::filesystem::path(library_dir) / "manifest.json");
  std::cout << "embedded " << manifest.entries.size() << " entries at step "
            << manifest.embed_step << "\n";
  return 0;
}

int cmd_rank(const std::string& library_dir, const std::string& embedding_file,
             const std::string& metric) {
  const std::vector<RankedSource> ranked =
      run_rank(library_dir, embedding_file, parse_metric(metric));
  for (const RankedSource& r : ranked)
    std::cout << r.rank << '\t' << r.entry.task_name << '\t' << r.entry.run_seed << '\t'
              << fmt(r.similarity) << "\n";
  return 0;
}

int cmd_transfer(const std::string& config_path, const std::string& library_dir,
                 const std::string& target, const std::string& method_str, std::size_t k,
                 const std::string& mixture_init, std::string out_path) {
  const ExperimentConfig config = load_experiment_config(config_path);
  const TransferMethod method = parse_transfer_method(method_str);
  if (mixture_init != "final" && mixture_init != "best")
    throw ConfigError("--mixture-init must be 'final' or 'best'");

  const TransferOutcome outcome =
      run_transfer(config, library_dir, target, method, k, mixture_init == "final");

  for (const CandidateScore& c : outcome.candidates)
    std::cout << "candidate\t" << c.task_name << '\t' << c.run_seed << '\t' << fmt(c.similarity)
              << '\t' << fmt(c.score) << "\n";
  for (const MixtureComponent& m : outcome.mixture)
    std::cout << "mixture-component\t" << m.dataset_id << '\t' << m.example_count << '\t'
              << fmt(m.rate) << "\n";
  if (outcome.uniform_weight_fallback)
    std::cerr << "warning: all similarities floored to zero; using uniform weights\n";

  if (out_path.empty())
    out_path = (std::filesystem::path(library_dir) /
                ("transferred_" + target + "_" + method_name(method) + ".ckpt"))
                   .string();
  write_checkpoint(outcome.tuned_prompt, out_path, /*overwrite=*/true);
  std::cout << "final score: " << fmt(outcome.final_score) << "\n";
  std::cout << "tuned prompt: " << out_path << "\n";
  return 0;
}

int cmd_oracle(const std::string& results_path, bool use_fixture) {
  const TransferTable table = use_fixture ? paper_transfer_table() : load_table_csv(results_path);
  const OracleResult oracle = oracle_search(table);
  for (const OraclePick& pick : oracle.picks)
    std::cout << pick.target << '\t' << pick.source << '\t' << fmt(pick.score) << "\n";
  std::cout << "oracle average score: " << fmt(oracle.average_score) << "\n";
  return 0;
}

int cmd_analyze(const std::string& results_path, bool use_fixture, const std::string& library_dir,
                const std::string& similarities_path, const std::string& out_dir) {
  const TransferTable table = use_fixture ? paper_transfer_table() : load_table_csv(results_path);
  std::filesystem::create_directories(out_dir);

  const RerMatrix rer = rer_matrix(table);
  const std::filesystem::path rer_path = std::filesystem::path(out_dir) / "rer.csv";
  export_heatmap(rer.sources, rer.targets, rer.values, rer_path);
  std::cout << "wrote " << rer_path.string() << "\n";

  double baseline_avg = 0.0;
  const std::size_t baseline_row = table.baseline_index();
  for (std::size_t t = 0; t < table.targets.size(); ++t)
    baseline_avg += table.scores(baseline_row, t);
  baseline_avg /= static_cast<double>(table.targets.size());

  const OracleResult oracle = oracle_search(table);
  if (use_fixture) {
    // published per-prompt search results; the table above only carries
    // per-task means
    std::cout << "baseline average: " << fmt(paper_baseline_average()) << "\n";
    std::cout << "oracle average: " << fmt(paper_oracle_average()) << "\n";
    std::cout << "table baseline mean: " << fmt(baseline_avg) << "\n";
    std::cout << "table best-task-mean average: " << fmt(oracle.average_score) << "\n";
  } else {
    std::cout << "baseline average: " << fmt(baseline_avg) << "\n";
    std::cout << "oracle average: " << fmt(oracle.average_score) << "\n";
  }
  for (const OraclePick& pick : oracle.picks)
    std::cout << "best-source\t" << pick.target << '\t' << pick.source << '\t' << fmt(pick.score)
              << "\n";

  if (!library_dir.empty()) {
    const LibraryManifest library =
        load_library(std::filesystem::path(library_dir) / "manifest.json");
    std::map<std::string, std::vector<TaskEmbedding>> by_task;
    for (const LibraryEntry& e : library.entries)
      by_task[e.task_name].push_back(load_entry_embedding(library, e));

    std::vector<std::string> ids;
    for (const auto& [id, runs] : by_task) ids.push_back(id);
    Matrix sim(ids.size(), ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < ids.size(); ++j)
        sim(i, j) =
            cross_run_similarity(by_task[ids[i]], by_task[ids[j]], SimilarityMetric::AvgTokens);

    const ClusterResult clusters = cluster_order(sim);
    const std::filesystem::path sim_path =
        std::filesystem::path(out_dir) / "similarity_clustered.csv";
    export_heatmap(ids, ids, sim, sim_path, &clusters.leaf_order);
    std::cout << "wrote " << sim_path.string() << "\n";
  }

  if (!similarities_path.empty()) {
    // rows: source ids matching the results table; columns: targets
    const HeatmapCsv sims = read_heatmap(similarities_path);
    for (std::size_t t = 0; t < rer.targets.size(); ++t) {
      std::vector<CorrelationPoint> points;
      for (std::size_t i = 0; i < sims.row_ids.size(); ++i) {
        const std::size_t src = static_cast<std::size_t>(
            std::find(rer.sources.begin(), rer.sources.end(), sims.row_ids[i]) -
            rer.sources.begin());
        if (src == rer.sources.size()) continue;
        std::size_t col = static_cast<std::size_t>(
            std::find(sims.col_ids.begin(), sims.col_ids.end(), rer.targets[t]) -
            sims.col_ids.begin());
        if (col == sims.col_ids.size()) continue;
        points.push_back({sims.row_ids[i], sims.values(i, col), rer.values(src, t)});
      }
      if (points.size() < 3) continue;
      const CorrelationReport report =
          correlate_similarity_with_transfer(rer.targets[t], std::move(points));
      std::cout << "pearson\t" << report.target_id << "\tr=" << fmt(report.r)
                << "\tp=" << fmt(report.p_value) << "\tn=" << report.points.size() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soft prompt transfer toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* train = app.add_subcommand("train-source", "tune prompts on each source task x seed");
  train->add_option("--config", config_path, "experiment config JSON")->required();
  train->add_option("--out", out_dir, "library output directory")->required();

  std::string library_dir;
  auto* embed = app.add_subcommand("embed", "extract task embeddings into the manifest");
  embed->add_option("--library", library_dir, "library directory")->required();

  std::string embedding_file;
  std::string metric = "avg";
  auto* rank = app.add_subcommand("rank", "rank library prompts against a target embedding");
  rank->add_option("--library", library_dir, "library directory")->required();
  rank->add_option("--target-embedding", embedding_file, "target embedding checkpoint file")
      ->required();
  rank->add_option("--metric", metric, "similarity metric: avg | per-token")
      ->check(CLI::IsMember({"avg", "per-token"}));

  std::string target;
  std::string method = "best-of-top-k";
  std::size_t k = 1;
  std::string mixture_init = "final";
  std::string transfer_out;
  auto* transfer = app.add_subcommand("transfer", "initialize and tune a target prompt");
  transfer->add_option("--config", config_path, "experiment config JSON")->required();
  transfer->add_option("--library", library_dir, "library directory")->required();
  transfer->add_option("--target", target, "target task name")->required();
  transfer->add_option("--method", method, "best-of-top-k | weighted-average | mixture")
      ->check(CLI::IsMember({"best-of-top-k", "weighted-average", "mixture"}));
  transfer->add_option("--k", k, "how many top-ranked prompts to use");
  transfer->add_option("--mixture-init", mixture_init,
                       "mixture checkpoint used to initialize the target run: final | best")
      ->check(CLI::IsMember({"final", "best"}));
  transfer->add_option("--out", transfer_out, "path for the tuned prompt checkpoint");

  std::string results_path;
  std::string fixture;
  auto* oracle = app.add_subcommand("oracle", "brute-force best source per target");
  oracle->add_option("--results", results_path, "transfer table CSV");
  oracle->add_option("--fixture", fixture, "use an embedded fixture table: paper")
      ->check(CLI::IsMember({"paper"}));

  std::string similarities_path;
  std::string analyze_out = "analysis";
  auto* analyze = app.add_subcommand("analyze", "error-reduction, clustering and correlation");
  analyze->add_option("--results", results_path, "transfer table CSV");
  analyze->add_option("--fixture", fixture, "use an embedded fixture table: paper")
      ->check(CLI::IsMember({"paper"}));
  analyze->add_option("--library", library_dir, "library directory for similarity clustering");
  analyze->add_option("--similarities", similarities_path,
                      "per-source similarity CSV for correlation reports");
  analyze->add_option("--out", analyze_out, "output directory for CSV artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train->parsed()) return cmd_train_source(config_path, out_dir);
    if (embed->parsed()) return cmd_embed(library_dir);
    if (rank->parsed()) return cmd_rank(library_dir, embedding_file, metric);
    if (transfer->parsed())
      return cmd_transfer(config_path, library_dir, target, method, k, mixture_init,
                          transfer_out);
    if (oracle->parsed()) {
      if (fixture.empty() && results_path.empty())
        throw ConfigError("oracle needs --results FILE or --fixture paper");
      return cmd_oracle(results_path, fixture == "paper");
    }
    if (analyze->parsed()) {
      if (fixture.empty() && results_path.empty())
        throw ConfigError("analyze needs --results FILE or --fixture paper");
      return cmd_analyze(results_path, fixture == "paper", library_dir, similarities_path,
                         analyze_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const SpotError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
