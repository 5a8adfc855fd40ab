// cmx: command-line front end for the cell multicomplex library.
//
// Subcommands: validate | info | spectrum | decompose | filter | hubs |
// synth | sweep. Tabular output is CSV (--format json for structured
// reports); numbers are printed with 17 significant digits.
//
// Exit codes: 0 success, 2 validation failure, 64 bad flags,
// 65 selector mismatch, 66 missing or unparseable file.

#include "cmx/cmx.hpp"

#include <CLI11.hpp>

#include <climits>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;
constexpr int kExitSelector = 65;
constexpr int kExitIo = 66;
constexpr int kExitInternal = 70;

struct Options {
  std::string file;
  std::string pair;
  std::string cls;
  int view = INT_MIN;
  int monolayer = INT_MIN;
  double tol = cmx::kDefaultTol;
  std::uint64_t seed = 0;
  std::uint64_t cfg_seed = 0;
  std::string signal;
  std::string truth;
  std::string snr;
  int trials = 100;
  std::string format = "csv";
  std::string out;
  bool squared = false;

  std::string nodes = "15,15";
  double intra_p = 0.25;
  int cross_edges = 30;
  double fill = 0.3;
};

std::pair<int, int> parse_int_pair(const std::string& text, const char* what) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument(std::string(what) + " expects two comma-separated integers");
  int a = 0, b = 0;
  if (!cmx::detail::parse_int(std::string_view(text).substr(0, comma), a) ||
      !cmx::detail::parse_int(std::string_view(text).substr(comma + 1), b))
    throw std::invalid_argument(std::string(what) + " expects two comma-separated integers");
  return {a, b};
}

std::vector<double> parse_snr_grid(const std::string& text) {
  double a = 0, step = 0, b = 0;
  char extra = 0;
  int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &step, &b, &extra);
  if (got == 1) return {a};
  if (got != 3) throw std::invalid_argument("--snr expects a:step:b (or a single value)");
  if (step <= 0) throw std::invalid_argument("--snr step must be positive");
  std::vector<double> grid;
  for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
  if (grid.empty()) throw std::invalid_argument("--snr grid is empty");
  return grid;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    cmx::write_text_file(out_path, text);
}

/// Summary lines go to stdout when the tabular payload went to a file, and
/// to stderr when the payload occupies stdout.
std::ostream& summary_stream(const Options& opt) {
  return opt.out.empty() ? std::cerr : std::cout;
}

cmx::Cochain load_cochain(const cmx::CellMultiComplex& x, const std::vector<cmx::CellRef>& ids,
                          const std::string& path) {
  cmx::SignalRows rows = cmx::parse_signal_csv(cmx::read_text_file(path));
  std::map<cmx::CellRef, double> byref;
  for (const auto& [id, value] : rows) {
    auto ref = cmx::parse_cell_id(id);
    if (!ref) throw std::invalid_argument(path + ": unparseable cell id '" + id + "'");
    if (!byref.emplace(*ref, value).second)
      throw std::invalid_argument(path + ": duplicate cell id '" + id + "'");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = byref.find(ids[i]);
    if (it == byref.end())
      throw std::invalid_argument(path + ": missing value for " + cmx::cell_id(ids[i]));
    v(static_cast<Eigen::Index>(i)) = it->second;
    byref.erase(it);
  }
  if (!byref.empty())
    throw std::invalid_argument(path + ": value for " + cmx::cell_id(byref.begin()->first) +
                                " does not belong to the selected class");
  return cmx::Cochain(ids, std::move(v));
}

cmx::SignalRows cochain_rows(const cmx::Cochain& s) {
  cmx::SignalRows rows;
  rows.reserve(s.ids.size());
  for (std::size_t i = 0; i < s.ids.size(); ++i)
    rows.emplace_back(cmx::cell_id(s.ids[i]), s.values(static_cast<Eigen::Index>(i)));
  return rows;
}

struct PairSelector {
  int l = 0, m = 0;
};

PairSelector need_pair(const Options& opt) {
  if (opt.pair.empty()) throw std::invalid_argument("--pair l,m is required here");
  auto [l, m] = parse_int_pair(opt.pair, "--pair");
  return {l, m};
}

int need_view(const Options& opt, const PairSelector& p) {
  if (opt.view == INT_MIN) throw std::invalid_argument("--view <layer> is required here");
  if (opt.view != p.l && opt.view != p.m)
    throw std::invalid_argument("--view must name one of the pair's layers");
  return opt.view;
}

int run_validate(const Options& opt) {
  try {
    cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
    cmx::ChainReport chain = cmx::verify_chain(x);
    if (opt.format == "json") {
      cmx::json doc;
      doc["valid"] = chain.all_pass;
      doc["layers"] = x.layer_count();
      doc["issues"] = cmx::json::array();
      emit(doc.dump(2) + "\n", opt.out);
    } else {
      emit("valid,layers,pairs\n1," + std::to_string(x.layer_count()) + "," +
               std::to_string(x.pairs().size()) + "\n",
           opt.out);
    }
    return chain.all_pass ? 0 : kExitValidation;
  } catch (const cmx::BuildError& e) {
    if (opt.format == "json") {
      cmx::json doc;
      doc["valid"] = false;
      doc["issues"] = cmx::json::array();
      for (const auto& issue : e.issues())
        doc["issues"].push_back(
            {{"code", issue.code}, {"cell", issue.cell}, {"message", issue.message}});
      emit(doc.dump(2) + "\n", opt.out);
    } else {
      std::string text = "code,cell_id,message\n";
      for (const auto& issue : e.issues())
        text += cmx::csv_field(issue.code) + "," + cmx::csv_field(issue.cell) + "," +
                cmx::csv_field(issue.message) + "\n";
      emit(text, opt.out);
    }
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitValidation;
  }
}

int run_info(const Options& opt) {
  cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
  cmx::FlatComplex flat = cmx::flatten(x);
  cmx::MonolayerBetti betti = cmx::betti_monolayer(x, opt.tol);

  std::optional<cmx::CrossBettiVector> cross;
  std::size_t class_count = 0;
  if (!opt.pair.empty()) {
    auto [l, m] = parse_int_pair(opt.pair, "--pair");
    auto [k, n] = opt.cls.empty() ? std::pair<int, int>{0, 0} : parse_int_pair(opt.cls, "--class");
    class_count = x.class_count(l, m, k, n);
    cross = cmx::cross_betti(x, l, m, k, n, opt.tol);
  }

  if (opt.format == "json") {
    cmx::json doc;
    doc["nodes"] = flat.nodes.size();
    doc["edges"] = flat.edges.size();
    doc["cells2"] = flat.cells2.size();
    doc["beta0"] = betti.beta0;
    doc["beta1"] = betti.beta1;
    if (cross) {
      doc["cross_betti"] = {{"pair", {cross->l, cross->m}},
                            {"class", {cross->cls.k, cross->cls.n}},
                            {"count", class_count},
                            {"from", cross->from_view},
                            {"toward", cross->toward_view}};
    }
    emit(doc.dump(2) + "\n", opt.out);
  } else {
    std::string text = "metric,value\n";
    text += "nodes," + std::to_string(flat.nodes.size()) + "\n";
    text += "edges," + std::to_string(flat.edges.size()) + "\n";
    text += "cells2," + std::to_string(flat.cells2.size()) + "\n";
    text += "beta0," + std::to_string(betti.beta0) + "\n";
    text += "beta1," + std::to_string(betti.beta1) + "\n";
    if (cross) {
      text += "class_count," + std::to_string(class_count) + "\n";
      text += "cross_betti_from," + std::to_string(cross->from_view) + "\n";
      text += "cross_betti_toward," + std::to_string(cross->toward_view) + "\n";
    }
    emit(text, opt.out);
  }
  return 0;
}

int run_spectrum(const Options& opt) {
  cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
  cmx::LaplacianMatrix L;
  if (opt.monolayer != INT_MIN) {
    L = cmx::monolayer_laplacian(x, opt.monolayer);
  } else {
    PairSelector p = need_pair(opt);
    auto [k, n] = opt.cls.empty() ? std::pair<int, int>{0, 0} : parse_int_pair(opt.cls, "--class");
    int view = need_view(opt, p);
    L = view == p.l ? cmx::cross_laplacian_from(x, p.l, p.m, k, n)
                    : cmx::cross_laplacian_toward(x, p.l, p.m, k, n);
  }
  cmx::Spectrum spec = cmx::eigendecompose(L, opt.tol);

  if (opt.format == "json") {
    cmx::json doc;
    doc["provenance"] = L.provenance;
    doc["tolerance"] = spec.tolerance;
    doc["eigenvalues"] = cmx::json::array();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
      doc["eigenvalues"].push_back(spec.eigenvalues(i));
    doc["kernel_dim"] = spec.kernel_dim();
    emit(doc.dump(2) + "\n", opt.out);
  } else {
    std::string text = "index,eigenvalue,in_kernel\n";
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      bool in_kernel = i < static_cast<Eigen::Index>(spec.kernel_indices.size());
      text += std::to_string(i) + "," + cmx::format_real(spec.eigenvalues(i)) + "," +
              (in_kernel ? "1" : "0") + "\n";
    }
    emit(text, opt.out);
  }
  summary_stream(opt) << "kernel_dim=" << spec.kernel_dim() << " tol=" << spec.tolerance
                      << " cells=" << spec.index.size() << "\n";
  return 0;
}

int run_decompose(const Options& opt) {
  cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
  PairSelector p = need_pair(opt);
  int view = need_view(opt, p);
  std::vector<cmx::CellRef> ids = x.cells_of_class(p.l, p.m, 0, 0);
  cmx::Cochain s = load_cochain(x, ids, opt.signal);
  cmx::HodgeComponents c = cmx::hodge_decompose(x, p.l, p.m, view, s, opt.tol);

  if (!opt.out.empty()) {
    cmx::write_text_file(opt.out + "_gradient.csv", cmx::signal_csv_text(cochain_rows(c.gradient_part)));
    cmx::write_text_file(opt.out + "_curl.csv", cmx::signal_csv_text(cochain_rows(c.curl_part)));
    cmx::write_text_file(opt.out + "_harmonic.csv", cmx::signal_csv_text(cochain_rows(c.harmonic_part)));
    cmx::write_text_file(opt.out + "_potential_vertex.csv",
                         cmx::signal_csv_text(cochain_rows(c.vertex_potential)));
    cmx::write_text_file(opt.out + "_potential_cell.csv",
                         cmx::signal_csv_text(cochain_rows(c.cell_potential)));
  }

  std::string text = "metric,value\n";
  text += "norm_input," + cmx::format_real(s.values.norm()) + "\n";
  text += "norm_gradient," + cmx::format_real(c.gradient_part.values.norm()) + "\n";
  text += "norm_curl," + cmx::format_real(c.curl_part.values.norm()) + "\n";
  text += "norm_harmonic," + cmx::format_real(c.harmonic_part.values.norm()) + "\n";
  if (!opt.truth.empty()) {
    cmx::Cochain truth = load_cochain(x, ids, opt.truth);
    text += "nmse," + cmx::format_real(cmx::nmse(cmx::reconstruct(c), truth, opt.squared)) + "\n";
  }
  std::cout << text;
  return 0;
}

int run_filter(const Options& opt) {
  cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
  PairSelector p = need_pair(opt);
  int view = need_view(opt, p);
  std::vector<cmx::CellRef> ids = x.cells_of_class(p.l, p.m, 0, 0);
  cmx::Cochain y = load_cochain(x, ids, opt.signal);
  cmx::HodgeComponents c = cmx::estimate_components(x, p.l, p.m, view, y, opt.tol);
  cmx::Cochain estimate = cmx::reconstruct(c);

  emit(cmx::signal_csv_text(cochain_rows(estimate)), opt.out);
  std::ostream& os = summary_stream(opt);
  os << "norm_gradient=" << cmx::format_real(c.gradient_part.values.norm())
     << " norm_curl=" << cmx::format_real(c.curl_part.values.norm())
     << " norm_harmonic=" << cmx::format_real(c.harmonic_part.values.norm()) << "\n";
  if (!opt.truth.empty()) {
    cmx::Cochain truth = load_cochain(x, ids, opt.truth);
    os << "nmse=" << cmx::format_real(cmx::nmse(estimate, truth, opt.squared)) << "\n";
  }
  return 0;
}

int run_hubs(const Options& opt) {
  cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
  PairSelector p = need_pair(opt);
  int view = need_view(opt, p);
  std::vector<cmx::CellRef> ids = x.cells_of_class(p.l, p.m, 0, 0);

  cmx::Cochain harmonic, div;
  if (!opt.signal.empty()) {
    cmx::Cochain y = load_cochain(x, ids, opt.signal);
    cmx::HodgeComponents c = cmx::estimate_components(x, p.l, p.m, view, y, opt.tol);
    harmonic = c.harmonic_part;
    div = cmx::divergence(x, p.l, p.m, view, y);
  } else {
    cmx::SignalWeights w{0.0, 0.0, 1.0};
    cmx::Cochain h = cmx::synth_ground_truth(x, p.l, p.m, view, opt.seed, w, opt.tol);
    harmonic = h;
    div = cmx::divergence(x, p.l, p.m, view, h);
  }
  std::vector<cmx::HubScore> hubs = cmx::harmonic_hubs(x, p.l, p.m, view, harmonic, div);

  int apex_layer = view == p.l ? p.m : p.l;
  if (opt.format == "json") {
    cmx::json doc = cmx::json::array();
    for (const cmx::HubScore& h : hubs)
      doc.push_back({{"node", cmx::cell_id(h.node)},
                     {"name", x.node_name(apex_layer, h.node.index)},
                     {"harmonic_energy", h.harmonic_energy},
                     {"divergence", h.divergence_value},
                     {"cone_count", h.cone_count},
                     {"closed_cones", h.closed_cones},
                     {"open_cones", h.open_cones},
                     {"disconnects", h.disconnects}});
    emit(doc.dump(2) + "\n", opt.out);
  } else {
    std::string text =
        "node_id,harmonic_energy,divergence,cone_count,closed_cones,open_cones,disconnects\n";
    for (const cmx::HubScore& h : hubs)
      text += cmx::cell_id(h.node) + "," + cmx::format_real(h.harmonic_energy) + "," +
              cmx::format_real(h.divergence_value) + "," + std::to_string(h.cone_count) + "," +
              std::to_string(h.closed_cones) + "," + std::to_string(h.open_cones) + "," +
              (h.disconnects ? "1" : "0") + "\n";
    emit(text, opt.out);
  }
  return 0;
}

cmx::SynthConfig synth_config(const Options& opt) {
  cmx::SynthConfig cfg;
  auto [a, b] = parse_int_pair(opt.nodes, "--nodes");
  cfg.nodes_layer1 = a;
  cfg.nodes_layer2 = b;
  cfg.intra_edge_prob = opt.intra_p;
  cfg.cross_edge_count = opt.cross_edges;
  cfg.fill_fraction = opt.fill;
  cfg.seed = opt.cfg_seed;
  return cfg;
}

int run_synth(const Options& opt) {
  cmx::CellMultiComplex x = cmx::generate_cmc(synth_config(opt));
  cmx::save_cmc(x, opt.out);
  if (!opt.truth.empty()) {
    cmx::Cochain truth = cmx::synth_ground_truth(x, 1, 2, 1, opt.seed, {}, opt.tol);
    cmx::write_text_file(opt.truth, cmx::signal_csv_text(cochain_rows(truth)));
  }
  std::cout << "complex=" << opt.out << " cross_edges=" << x.class_count(1, 2, 0, 0)
            << (opt.truth.empty() ? "" : " truth=" + opt.truth) << "\n";
  return 0;
}

int run_sweep(const Options& opt) {
  if (opt.snr.empty()) throw std::invalid_argument("--snr a:step:b is required here");
  std::vector<double> grid = parse_snr_grid(opt.snr);

  cmx::SweepResult result;
  if (!opt.file.empty()) {
    cmx::CellMultiComplex x = cmx::load_cmc(opt.file);
    PairSelector p = need_pair(opt);
    int view = need_view(opt, p);
    result = cmx::nmse_sweep(x, p.l, p.m, view, grid, opt.trials, opt.seed, {}, opt.tol);
  } else {
    result = cmx::nmse_sweep(synth_config(opt), grid, opt.trials, opt.seed, {}, opt.tol);
  }

  if (opt.format == "json") {
    cmx::json doc;
    doc["trials"] = result.trials;
    doc["seed"] = result.seed;
    doc["points"] = cmx::json::array();
    for (std::size_t i = 0; i < result.snr_db.size(); ++i)
      doc["points"].push_back({{"snr_db", result.snr_db[i]},
                               {"mean_nmse", result.mean_nmse[i]},
                               {"std_nmse", result.std_nmse[i]}});
    emit(doc.dump(2) + "\n", opt.out);
  } else {
    std::string text = "snr_db,mean_nmse,std_nmse,trials\n";
    for (std::size_t i = 0; i < result.snr_db.size(); ++i)
      text += cmx::format_real(result.snr_db[i]) + "," + cmx::format_real(result.mean_nmse[i]) +
              "," + cmx::format_real(result.std_nmse[i]) + "," + std::to_string(result.trials) +
              "\n";
    emit(text, opt.out);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env_tol = std::getenv("CMX_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env_tol, &end);
    if (end && *end == '\0' && v > 0) opt.tol = v;
  }

  CLI::App app{"cell multicomplex toolkit: operators, spectra, flows"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool with_file) {
    if (with_file) cmd->add_option("file", opt.file, "complex description (JSON)")->required();
    cmd->add_option("--tol", opt.tol, "rank / pseudo-inverse tolerance");
    cmd->add_option("--format", opt.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    return cmd;
  };
  auto add_selectors = [&](CLI::App* cmd) {
    cmd->add_option("--pair", opt.pair, "layer pair l,m");
    cmd->add_option("--class", opt.cls, "cell class k,n (-1 for intra)");
    cmd->add_option("--view", opt.view, "viewing layer (l or m of the pair)");
    return cmd;
  };

  add_common(app.add_subcommand("validate", "validate a complex file"), true);

  auto* info = add_common(app.add_subcommand("info", "counts, Betti and cross-Betti numbers"), true);
  add_selectors(info);

  auto* spectrum =
      add_common(app.add_subcommand("spectrum", "eigenvalues of a Laplacian"), true);
  add_selectors(spectrum);
  spectrum->add_option("--monolayer", opt.monolayer, "flattened Laplacian order (0 or 1)");

  auto* decompose =
      add_common(app.add_subcommand("decompose", "orthogonal Hodge decomposition"), true);
  add_selectors(decompose);
  decompose->add_option("--signal", opt.signal, "input cross-edge signal CSV")->required();
  decompose->add_option("--truth", opt.truth, "reference signal CSV for NMSE");
  decompose->add_flag("--squared", opt.squared, "report squared-norm NMSE");

  auto* filter =
      add_common(app.add_subcommand("filter", "closed-form denoising of a noisy flow"), true);
  add_selectors(filter);
  filter->add_option("--signal", opt.signal, "noisy cross-edge signal CSV")->required();
  filter->add_option("--truth", opt.truth, "clean signal CSV for NMSE");
  filter->add_flag("--squared", opt.squared, "report squared-norm NMSE");

  auto* hubs = add_common(app.add_subcommand("hubs", "rank harmonic cross-hubs"), true);
  add_selectors(hubs);
  hubs->add_option("--signal", opt.signal, "observed cross-edge signal CSV");
  hubs->add_option("--seed", opt.seed, "seed for the sampled harmonic signal");

  auto* synth = add_common(app.add_subcommand("synth", "generate a synthetic complex"), false);
  synth->get_option("--out")->required();
  synth->add_option("--nodes", opt.nodes, "nodes per layer a,b");
  synth->add_option("--p", opt.intra_p, "intra edge probability");
  synth->add_option("--cross", opt.cross_edges, "cross-edge count");
  synth->add_option("--fill", opt.fill, "fraction of fillable cones to fill");
  synth->add_option("--cfg-seed", opt.cfg_seed, "complex generation seed");
  synth->add_option("--seed", opt.seed, "ground-truth signal seed");
  synth->add_option("--truth", opt.truth, "write the ground-truth signal CSV here");

  auto* sweep = add_common(app.add_subcommand("sweep", "NMSE versus SNR experiment"), false);
  sweep->add_option("file", opt.file, "optional complex description (JSON)");
  add_selectors(sweep);
  sweep->add_option("--snr", opt.snr, "SNR grid a:step:b in dB")->required();
  sweep->add_option("--trials", opt.trials, "trials per grid point");
  sweep->add_option("--seed", opt.seed, "experiment master seed");
  sweep->add_option("--nodes", opt.nodes, "nodes per layer a,b (generated mode)");
  sweep->add_option("--p", opt.intra_p, "intra edge probability (generated mode)");
  sweep->add_option("--cross", opt.cross_edges, "cross-edge count (generated mode)");
  sweep->add_option("--fill", opt.fill, "fraction of fillable cones to fill (generated mode)");
  sweep->add_option("--cfg-seed", opt.cfg_seed, "complex generation seed (generated mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand("validate")) return run_validate(opt);
    if (app.got_subcommand("info")) return run_info(opt);
    if (app.got_subcommand("spectrum")) return run_spectrum(opt);
    if (app.got_subcommand("decompose")) return run_decompose(opt);
    if (app.got_subcommand("filter")) return run_filter(opt);
    if (app.got_subcommand("hubs")) return run_hubs(opt);
    if (app.got_subcommand("synth")) return run_synth(opt);
    if (app.got_subcommand("sweep")) return run_sweep(opt);
    return kExitUsage;
  } catch (const cmx::BuildError& e) {
    std::cerr << "invalid complex: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cmx::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "selector error: " << e.what() << "\n";
    return kExitSelector;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
