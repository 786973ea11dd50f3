// Command-line entry point: variational generalized-eigensolver runs,
// dense-oracle cross-checks, and the NPE/LDE pipelines. Every command echoes
// its full configuration (seed included) into the JSON artifact and writes
// files atomically, so identical invocations produce byte-identical output.
#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <iostream>
#include <string>

#include "qpencil/builtin.hpp"
#include "qpencil/dense.hpp"
#include "qpencil/io.hpp"
#include "qpencil/lde.hpp"
#include "qpencil/manifold.hpp"
#include "qpencil/version.hpp"
#include "qpencil/vqge.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qpencil;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int shots = 0;
  std::string out;
  std::string format = "json";
};

struct PencilOpts {
  std::string builtin;
  std::string g_pauli, s_pauli;
  std::string g_csv, s_csv;
};

struct AnsatzOpts {
  int layers = 1;
  std::string rotation = "ry";
  std::string entangler = "chain";
};

struct OptimOpts {
  int restarts = 8;
  int max_iters = 2000;
  double f_tol = 1e-9;
  double simplex_scale = 0.8;
  int scan_restarts = 2;
  double threshold = 1e-4;
};

void add_pencil_options(CLI::App* cmd, PencilOpts& p) {
  cmd->add_option("--builtin", p.builtin, "built-in pencil: example1 | example2");
  cmd->add_option("--g-pauli", p.g_pauli, "G operator as Pauli text");
  cmd->add_option("--s-pauli", p.s_pauli, "S operator as Pauli text");
  cmd->add_option("--g-csv", p.g_csv, "G matrix as complex CSV");
  cmd->add_option("--s-csv", p.s_csv, "S matrix as complex CSV");
}

vqge::MatrixPencil load_pencil(const PencilOpts& p, json& echo) {
  if (!p.builtin.empty()) {
    echo["pencil"] = {{"builtin", p.builtin}};
    return builtin_pencil(p.builtin);
  }
  if (!p.g_pauli.empty() || !p.s_pauli.empty()) {
    if (p.g_pauli.empty() || p.s_pauli.empty())
      throw ValidityError("--g-pauli and --s-pauli must be given together");
    echo["pencil"] = {{"g_pauli", p.g_pauli}, {"s_pauli", p.s_pauli}};
    return {io::read_pauli_text_file(p.g_pauli), io::read_pauli_text_file(p.s_pauli)};
  }
  if (p.g_csv.empty() || p.s_csv.empty())
    throw ValidityError("pencil input required: --builtin, --g-pauli/--s-pauli, "
                        "or --g-csv/--s-csv");
  echo["pencil"] = {{"g_csv", p.g_csv}, {"s_csv", p.s_csv}};
  return {pauli::pauli_from_dense(io::read_complex_csv_file(p.g_csv)),
          pauli::pauli_from_dense(io::read_complex_csv_file(p.s_csv))};
}

sim::AnsatzSpec make_ansatz(const AnsatzOpts& a, int n_qubits, json& echo) {
  const auto kind =
      a.rotation == "rzry" ? sim::RotationKind::RzRy : sim::RotationKind::RyOnly;
  sim::AnsatzSpec spec = a.entangler == "ring"
                             ? sim::AnsatzSpec::ring(n_qubits, a.layers, kind)
                             : sim::AnsatzSpec::hardware_efficient(n_qubits, a.layers, kind);
  echo["ansatz"] = {{"n_qubits", n_qubits},
                    {"layers", a.layers},
                    {"rotation", a.rotation},
                    {"entangler", a.entangler},
                    {"parameters", spec.param_count()}};
  return spec;
}

vqge::SolveConfig make_solve_config(const GlobalOpts& g, const OptimOpts& o,
                                    int grid, json& echo) {
  vqge::SolveConfig cfg;
  cfg.optimizer.seed = g.seed;
  cfg.optimizer.restarts = o.restarts;
  cfg.optimizer.max_iters = o.max_iters;
  cfg.optimizer.f_tol = o.f_tol;
  cfg.optimizer.simplex_scale = o.simplex_scale;
  cfg.grid_points = grid;
  cfg.scan_restarts = o.scan_restarts;
  cfg.detection_threshold = o.threshold;
  cfg.shots = g.shots;
  echo["seed"] = g.seed;
  echo["shots"] = g.shots;
  echo["grid_points"] = grid;
  echo["optimizer"] = {{"method", "nelder-mead"},
                       {"restarts", o.restarts},
                       {"max_iters", o.max_iters},
                       {"f_tol", o.f_tol},
                       {"simplex_scale", o.simplex_scale},
                       {"scan_restarts", o.scan_restarts},
                       {"detection_threshold", o.threshold}};
  return cfg;
}

json eigenpair_json(const vqge::GenEigenpair& p) {
  json j;
  j["value"] = p.eigenvalue;
  j["cost_at_detection"] = p.cost_at_detection;
  if (p.residual) j["residual"] = *p.residual;
  j["theta"] = std::vector<double>(p.theta.data(), p.theta.data() + p.theta.size());
  return j;
}

void write_json(const std::string& path, const json& doc) {
  io::write_file_atomic(path, doc.dump(2) + "\n");
}

std::string out_prefix(const GlobalOpts& g, const std::string& fallback) {
  return g.out.empty() ? fallback : g.out;
}

json dataset_echo(const std::string& path, bool labeled, bool header) {
  return {{"path", path}, {"labeled", labeled}, {"header", header}};
}

manifold::SolverChoice make_solver(const std::string& name, const GlobalOpts& g,
                                   const OptimOpts& o, int grid, json& echo) {
  echo["solver"] = name;
  if (name == "oracle") return manifold::SolverChoice::oracle();
  json solver_echo;
  vqge::SolveConfig cfg = make_solve_config(g, o, grid, solver_echo);
  echo.update(solver_echo);
  // Ansatz defaults to the ring form chosen inside the fit pipeline.
  return manifold::SolverChoice::variational({}, cfg);
}

int run_vqge(const GlobalOpts& g, const PencilOpts& p, const AnsatzOpts& a,
             const OptimOpts& o, int grid, bool dump_states, bool scan_only) {
  json config;
  config["seed"] = g.seed;
  vqge::MatrixPencil pencil = load_pencil(p, config);
  const sim::AnsatzSpec spec = make_ansatz(a, pencil.n_qubits(), config);
  vqge::SolveConfig cfg = make_solve_config(g, o, grid, config);
  const std::string prefix = out_prefix(g, scan_only ? "vqge_scan" : "vqge_solve");

  const vqge::SolveResult result = vqge::solve_full(pencil, spec, cfg);

  json doc;
  doc["version"] = kVersion;
  doc["command"] = scan_only ? "vqge scan" : "vqge solve";
  doc["config"] = config;
  doc["commuting"] = pencil.commuting();
  doc["cost_function"] = pencil.commuting() ? "squared-shift" : "shifted-ratio";
  doc["interval"] = {{"lambda_min", result.interval.lambda_min},
                     {"lambda_max", result.interval.lambda_max}};
  json pairs = json::array();
  for (const auto& pair : result.eigenpairs) pairs.push_back(eigenpair_json(pair));
  doc["eigenvalues"] = pairs;
  doc["artifacts"] = {{"scan_csv", prefix + ".scan.csv"}};

  io::write_file_atomic(prefix + ".scan.csv", io::format_scan_csv(result.scan));
  if (dump_states) {
    for (std::size_t k = 0; k < result.eigenpairs.size(); ++k) {
      const std::string path = prefix + ".state" + std::to_string(k) + ".csv";
      io::write_file_atomic(path, io::format_state_csv(result.eigenpairs[k].state));
      doc["artifacts"]["state" + std::to_string(k)] = path;
    }
  }
  write_json(prefix + ".json", doc);

  std::cout << doc["command"].get<std::string>() << ": "
            << result.eigenpairs.size() << " eigenvalue(s) in ["
            << result.interval.lambda_min << ", " << result.interval.lambda_max
            << "], wrote " << prefix << ".json\n";
  return 0;
}

int run_oracle_eig(const GlobalOpts& g, const PencilOpts& p) {
  json config;
  config["seed"] = g.seed;
  Eigen::MatrixXcd gm, sm;
  if (!p.builtin.empty()) {
    config["pencil"] = {{"builtin", p.builtin}};
    const vqge::MatrixPencil pencil = builtin_pencil(p.builtin);
    gm = pauli::dense_from_pauli(pencil.g());
    sm = pauli::dense_from_pauli(pencil.s());
  } else if (!p.g_pauli.empty() && !p.s_pauli.empty()) {
    config["pencil"] = {{"g_pauli", p.g_pauli}, {"s_pauli", p.s_pauli}};
    gm = pauli::dense_from_pauli(io::read_pauli_text_file(p.g_pauli));
    sm = pauli::dense_from_pauli(io::read_pauli_text_file(p.s_pauli));
  } else if (!p.g_csv.empty() && !p.s_csv.empty()) {
    config["pencil"] = {{"g_csv", p.g_csv}, {"s_csv", p.s_csv}};
    gm = io::read_complex_csv_file(p.g_csv);
    sm = io::read_complex_csv_file(p.s_csv);
  } else {
    throw ValidityError("pencil input required: --builtin, --g-pauli/--s-pauli, "
                        "or --g-csv/--s-csv");
  }

  const dense::EigResult eig = dense::generalized_eig(dense::HermitianMatrix(gm),
                                                      dense::HermitianMatrix(sm));
  const std::string prefix = out_prefix(g, "oracle_eig");

  json doc;
  doc["version"] = kVersion;
  doc["command"] = "oracle eig";
  doc["config"] = config;
  doc["eigenvalues"] = std::vector<double>(eig.values.data(),
                                           eig.values.data() + eig.values.size());
  json vectors = json::array();
  for (Eigen::Index c = 0; c < eig.vectors.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < eig.vectors.rows(); ++r)
      col.push_back(io::format_complex(eig.vectors(r, c)));
    vectors.push_back(col);
  }
  doc["eigenvectors"] = vectors;
  write_json(prefix + ".json", doc);

  if (g.format == "csv") {
    std::string csv = "eigenvalue\n";
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      csv += io::format_double(eig.values(i)) + "\n";
    io::write_file_atomic(prefix + ".csv", csv);
  }
  std::cout << "oracle eig: " << eig.values.size() << " eigenvalue(s), wrote "
            << prefix << ".json\n";
  return 0;
}

int run_npe_fit(const GlobalOpts& g, const OptimOpts& o, const std::string& data_path,
                bool labeled, bool header, bool normalize, int k, int d,
                const std::string& solver_name, const std::string& metric_name,
                int metric_shots, double reg, double ridge, int grid) {
  json config;
  manifold::Dataset data = io::read_dataset_csv_file(data_path, labeled, header);
  if (normalize) data = data.normalized_copy();
  config["data"] = dataset_echo(data_path, labeled, header);
  config["normalize"] = normalize;
  config["k"] = k;
  config["d"] = d;
  config["reg"] = reg;
  config["metric"] = metric_name;
  config["seed"] = g.seed;
  const manifold::Metric metric = metric_name == "overlap"
                                      ? manifold::Metric::overlap(metric_shots, g.seed)
                                      : manifold::Metric::euclidean();
  if (metric_name == "overlap") config["metric_shots"] = metric_shots;
  const std::optional<double> ridge_opt =
      ridge < 0 ? std::nullopt : std::optional<double>(ridge);
  config["ridge"] = ridge < 0 ? json("auto") : json(ridge);
  const manifold::SolverChoice solver = make_solver(solver_name, g, o, grid, config);

  const manifold::Projection proj =
      manifold::npe_fit(data, k, d, solver, metric, reg, ridge_opt);

  const std::string prefix = out_prefix(g, "npe_fit");
  json doc;
  doc["version"] = kVersion;
  doc["command"] = "npe fit";
  doc["config"] = config;
  doc["eigenvalues"] = std::vector<double>(
      proj.eigenvalues.data(), proj.eigenvalues.data() + proj.eigenvalues.size());
  doc["artifacts"] = {{"projection_csv", prefix + ".projection.csv"}};
  io::write_file_atomic(prefix + ".projection.csv", io::format_real_csv(proj.a));
  write_json(prefix + ".json", doc);
  std::cout << "npe fit: wrote " << prefix << ".projection.csv (" << proj.a.rows()
            << "x" << proj.a.cols() << ")\n";
  return 0;
}

int run_npe_transform(const GlobalOpts& g, const std::string& projection_path,
                      const std::string& data_path, bool labeled, bool header) {
  const Eigen::MatrixXd a = io::read_real_csv_file(projection_path);
  const manifold::Dataset data = io::read_dataset_csv_file(data_path, labeled, header);
  manifold::Projection proj;
  proj.a = a;
  proj.eigenvalues = Eigen::VectorXd::Zero(a.cols());
  const Eigen::MatrixXd embedded = manifold::embed_all(proj, data.x);

  const std::string prefix = out_prefix(g, "npe_transform");
  json doc;
  doc["version"] = kVersion;
  doc["command"] = "npe transform";
  doc["config"] = {{"projection", projection_path},
                   {"data", dataset_echo(data_path, labeled, header)},
                   {"seed", g.seed}};
  doc["artifacts"] = {{"embeddings_csv", prefix + ".embeddings.csv"}};
  io::write_file_atomic(prefix + ".embeddings.csv",
                        io::format_real_csv(embedded.transpose()));
  write_json(prefix + ".json", doc);
  std::cout << "npe transform: wrote " << prefix << ".embeddings.csv\n";
  return 0;
}

int run_lde_fit(const GlobalOpts& g, const OptimOpts& o, const std::string& data_path,
                bool header, bool normalize, int k, int k_prime, int d,
                const std::string& solver_name, const std::string& metric_name,
                int metric_shots, double reg, double ridge, int grid) {
  json config;
  manifold::Dataset data = io::read_dataset_csv_file(data_path, true, header);
  if (normalize) data = data.normalized_copy();
  config["data"] = dataset_echo(data_path, true, header);
  config["normalize"] = normalize;
  config["k"] = k;
  config["k_prime"] = k_prime;
  config["d"] = d;
  config["reg"] = reg;
  config["metric"] = metric_name;
  config["seed"] = g.seed;
  const manifold::Metric metric = metric_name == "overlap"
                                      ? manifold::Metric::overlap(metric_shots, g.seed)
                                      : manifold::Metric::euclidean();
  if (metric_name == "overlap") config["metric_shots"] = metric_shots;
  const std::optional<double> ridge_opt =
      ridge < 0 ? std::nullopt : std::optional<double>(ridge);
  config["ridge"] = ridge < 0 ? json("auto") : json(ridge);
  const manifold::SolverChoice solver = make_solver(solver_name, g, o, grid, config);

  const manifold::Projection proj =
      lde::lde_fit(data, k, k_prime, d, solver, metric, reg, ridge_opt);

  const std::string prefix = out_prefix(g, "lde_fit");
  json doc;
  doc["version"] = kVersion;
  doc["command"] = "lde fit";
  doc["config"] = config;
  doc["eigenvalues"] = std::vector<double>(
      proj.eigenvalues.data(), proj.eigenvalues.data() + proj.eigenvalues.size());
  doc["artifacts"] = {{"projection_csv", prefix + ".projection.csv"}};
  io::write_file_atomic(prefix + ".projection.csv", io::format_real_csv(proj.a));
  write_json(prefix + ".json", doc);
  std::cout << "lde fit: wrote " << prefix << ".projection.csv\n";
  return 0;
}

int run_lde_classify(const GlobalOpts& g, const std::string& projection_path,
                     const std::string& train_path, const std::string& test_path,
                     bool header, bool test_labeled, const std::string& distance) {
  const Eigen::MatrixXd a = io::read_real_csv_file(projection_path);
  const manifold::Dataset train = io::read_dataset_csv_file(train_path, true, header);
  const manifold::Dataset test =
      io::read_dataset_csv_file(test_path, test_labeled, header);
  manifold::Projection proj;
  proj.a = a;
  proj.eigenvalues = Eigen::VectorXd::Zero(a.cols());
  const auto dist = distance == "trace" ? lde::EmbedDistance::Trace
                                        : lde::EmbedDistance::Euclidean;
  const Eigen::VectorXi predicted = lde::classify_all(proj, train, test.x, dist);

  const std::string prefix = out_prefix(g, "lde_classify");
  json doc;
  doc["version"] = kVersion;
  doc["command"] = "lde classify";
  doc["config"] = {{"projection", projection_path},
                   {"train", dataset_echo(train_path, true, header)},
                   {"test", dataset_echo(test_path, test_labeled, header)},
                   {"distance", distance},
                   {"seed", g.seed}};
  doc["artifacts"] = {{"labels_csv", prefix + ".labels.csv"}};
  if (test_labeled) {
    int correct = 0;
    for (Eigen::Index i = 0; i < predicted.size(); ++i)
      if (predicted(i) == (*test.labels)(i)) ++correct;
    doc["report"] = {{"total", predicted.size()},
                     {"correct", correct},
                     {"accuracy", static_cast<double>(correct) /
                                      static_cast<double>(predicted.size())}};
  }
  io::write_file_atomic(prefix + ".labels.csv", io::format_labels_csv(predicted));
  write_json(prefix + ".json", doc);
  std::cout << "lde classify: wrote " << prefix << ".labels.csv";
  if (test_labeled)
    std::cout << " (accuracy " << doc["report"]["accuracy"].get<double>() << ")";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational generalized-eigensolver toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed (echoed into artifacts)");
  app.add_option("--shots", g.shots, "shots per Pauli term; 0 = exact expectations");
  app.add_option("--out", g.out, "output path prefix");
  app.add_option("--format", g.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  PencilOpts pencil;
  AnsatzOpts ansatz;
  OptimOpts optim;
  int grid = 1000;
  bool dump_states = false;

  auto add_optim_options = [&](CLI::App* cmd) {
    cmd->add_option("--restarts", optim.restarts, "optimizer restarts");
    cmd->add_option("--max-iters", optim.max_iters, "optimizer iteration cap");
    cmd->add_option("--f-tol", optim.f_tol, "optimizer convergence tolerance");
    cmd->add_option("--simplex-scale", optim.simplex_scale, "initial simplex edge");
    cmd->add_option("--scan-restarts", optim.scan_restarts,
                    "fresh starts per grid point");
    cmd->add_option("--threshold", optim.threshold, "detection threshold");
  };
  auto add_ansatz_options = [&](CLI::App* cmd) {
    cmd->add_option("--layers", ansatz.layers, "ansatz layers");
    cmd->add_option("--rotation", ansatz.rotation, "ry | rzry")
        ->check(CLI::IsMember({"ry", "rzry"}));
    cmd->add_option("--entangler", ansatz.entangler, "chain | ring")
        ->check(CLI::IsMember({"chain", "ring"}));
  };

  CLI::App* vqge_cmd = app.add_subcommand("vqge", "variational solver");
  vqge_cmd->require_subcommand(1);
  vqge_cmd->fallthrough();
  CLI::App* solve = vqge_cmd->add_subcommand("solve", "find all generalized eigenpairs");
  solve->fallthrough();
  add_pencil_options(solve, pencil);
  solve->add_option("--grid", grid, "tau grid points");
  add_ansatz_options(solve);
  solve->add_flag("--dump-states", dump_states, "write eigenstate amplitude CSVs");
  add_optim_options(solve);

  CLI::App* scan = vqge_cmd->add_subcommand("scan", "tau scan only");
  scan->fallthrough();
  add_pencil_options(scan, pencil);
  scan->add_option("--grid", grid, "tau grid points");
  add_ansatz_options(scan);
  add_optim_options(scan);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "dense reference solver");
  oracle_cmd->require_subcommand(1);
  oracle_cmd->fallthrough();
  CLI::App* oracle_eig = oracle_cmd->add_subcommand("eig", "generalized eigensolve");
  oracle_eig->fallthrough();
  add_pencil_options(oracle_eig, pencil);

  std::string data_path, projection_path, train_path, test_path;
  std::string solver_name = "oracle", metric_name = "euclidean";
  std::string distance = "euclidean";
  bool labeled = false, header = false, normalize = false, test_labeled = false;
  int k = 5, k_prime = 5, d = 2, metric_shots = 100000;
  double reg = manifold::kRegDefault, ridge = -1.0;

  auto add_fit_options = [&](CLI::App* cmd) {
    cmd->add_option("--solver", solver_name, "oracle | vqge")
        ->check(CLI::IsMember({"oracle", "vqge"}));
    cmd->add_option("--metric", metric_name, "euclidean | overlap")
        ->check(CLI::IsMember({"euclidean", "overlap"}));
    cmd->add_option("--metric-shots", metric_shots, "swap-test shots per pair");
    cmd->add_option("--reg", reg, "local Gram regularization");
    cmd->add_option("--ridge", ridge, "positive-definite ridge (negative = auto)");
    cmd->add_option("--grid", grid, "tau grid points (vqge solver)");
    cmd->add_flag("--header", header, "dataset has a header row");
    cmd->add_flag("--normalize", normalize, "normalize columns to unit norm");
    add_optim_options(cmd);
  };

  CLI::App* npe_cmd = app.add_subcommand("npe", "neighborhood preserving embedding");
  npe_cmd->require_subcommand(1);
  npe_cmd->fallthrough();
  CLI::App* npe_fit_cmd = npe_cmd->add_subcommand("fit", "fit a projection");
  npe_fit_cmd->fallthrough();
  npe_fit_cmd->add_option("--data", data_path, "dataset CSV")->required();
  npe_fit_cmd->add_flag("--labeled", labeled, "dataset has a trailing label column");
  npe_fit_cmd->add_option("--k", k, "neighbors per point")->required();
  npe_fit_cmd->add_option("--d", d, "embedding dimension")->required();
  add_fit_options(npe_fit_cmd);

  CLI::App* npe_transform_cmd =
      npe_cmd->add_subcommand("transform", "embed points with a projection");
  npe_transform_cmd->fallthrough();
  npe_transform_cmd->add_option("--projection", projection_path, "projection CSV")
      ->required();
  npe_transform_cmd->add_option("--data", data_path, "dataset CSV")->required();
  npe_transform_cmd->add_flag("--labeled", labeled, "dataset has a label column");
  npe_transform_cmd->add_flag("--header", header, "dataset has a header row");

  CLI::App* lde_cmd = app.add_subcommand("lde", "local discriminant embedding");
  lde_cmd->require_subcommand(1);
  lde_cmd->fallthrough();
  CLI::App* lde_fit_cmd = lde_cmd->add_subcommand("fit", "fit a discriminant projection");
  lde_fit_cmd->fallthrough();
  lde_fit_cmd->add_option("--data", data_path, "labeled dataset CSV")->required();
  lde_fit_cmd->add_option("--k", k, "within-class neighbors")->required();
  lde_fit_cmd->add_option("--k-prime", k_prime, "between-class neighbors")->required();
  lde_fit_cmd->add_option("--d", d, "embedding dimension")->required();
  add_fit_options(lde_fit_cmd);

  CLI::App* lde_classify_cmd =
      lde_cmd->add_subcommand("classify", "nearest-neighbor classification");
  lde_classify_cmd->fallthrough();
  lde_classify_cmd->add_option("--projection", projection_path, "projection CSV")
      ->required();
  lde_classify_cmd->add_option("--train", train_path, "labeled training CSV")
      ->required();
  lde_classify_cmd->add_option("--test", test_path, "test CSV")->required();
  lde_classify_cmd->add_flag("--header", header, "datasets have header rows");
  lde_classify_cmd->add_flag("--test-labeled", test_labeled,
                             "test CSV has labels; emit an accuracy report");
  lde_classify_cmd->add_option("--distance", distance, "euclidean | trace")
      ->check(CLI::IsMember({"euclidean", "trace"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_vqge(g, pencil, ansatz, optim, grid, dump_states, false);
    if (scan->parsed())
      return run_vqge(g, pencil, ansatz, optim, grid, dump_states, true);
    if (oracle_eig->parsed()) return run_oracle_eig(g, pencil);
    if (npe_fit_cmd->parsed())
      return run_npe_fit(g, optim, data_path, labeled, header, normalize, k, d,
                         solver_name, metric_name, metric_shots, reg, ridge, grid);
    if (npe_transform_cmd->parsed())
      return run_npe_transform(g, projection_path, data_path, labeled, header);
    if (lde_fit_cmd->parsed())
      return run_lde_fit(g, optim, data_path, header, normalize, k, k_prime, d,
                         solver_name, metric_name, metric_shots, reg, ridge, grid);
    if (lde_classify_cmd->parsed())
      return run_lde_classify(g, projection_path, train_path, test_path, header,
                              test_labeled, distance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command selected\n";
  return 1;
}
