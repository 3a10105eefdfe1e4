// hdqi: experiment driver for the HDQI library. Subcommands mirror the
// library modules; every run writes a manifest JSON beside its outputs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hdqi/decoder.hpp"
#include "hdqi/dequant.hpp"
#include "hdqi/ensembles.hpp"
#include "hdqi/anticomm.hpp"
#include "hdqi/sim.hpp"
#include "hdqi/stabilizer.hpp"

using namespace hdqi;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& args) {
  if (out_path.empty()) return;
  json m;
  m["tool"] = "hdqi";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["args"] = args;
  std::ofstream f(out_path + ".manifest.json");
  f << m.dump(2) << "\n";
}

void write_svg(const std::string& path, const std::vector<double>& xs,
               const std::vector<double>& ys, const std::string& title) {
  if (xs.empty()) return;
  double xmin = xs.front(), xmax = xs.front(), ymin = ys.front(), ymax = ys.front();
  for (double x : xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  for (double y : ys) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double W = 640, H = 400, pad = 50;
  auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
  auto py = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };
  std::ofstream f(path);
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  f << "<rect width='100%' height='100%' fill='white'/>\n";
  f << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
    << "</text>\n";
  f << "<line x1='" << pad << "' y1='" << H - pad << "' x2='" << W - pad << "' y2='"
    << H - pad << "' stroke='black'/>\n";
  f << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='" << H - pad
    << "' stroke='black'/>\n";
  f << "<text x='" << pad << "' y='" << H - pad + 20 << "' font-size='11'>" << xmin
    << "</text>\n<text x='" << W - pad << "' y='" << H - pad + 20
    << "' text-anchor='end' font-size='11'>" << xmax << "</text>\n";
  f << "<text x='" << pad - 5 << "' y='" << H - pad << "' text-anchor='end' font-size='11'>"
    << ymin << "</text>\n<text x='" << pad - 5 << "' y='" << pad
    << "' text-anchor='end' font-size='11'>" << ymax << "</text>\n";
  f << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
  for (std::size_t i = 0; i < xs.size(); ++i) f << px(xs[i]) << "," << py(ys[i]) << " ";
  f << "'/>\n</svg>\n";
}

UniPoly load_poly(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return UniPoly::from_json(ss.str());
}

std::function<double(double)> parse_filter(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "gibbs") {
    double beta = std::stod(arg);
    return [beta](double lam) { return std::exp(-beta * lam); };
  }
  if (kind == "micro") {
    double e = std::stod(arg);
    return [e](double lam) { return lam == e ? 1.0 : 0.0; };
  }
  if (kind == "custom") {
    std::ifstream f(arg);
    if (!f) throw std::runtime_error("cannot open " + arg);
    json j;
    f >> j;
    auto pts = std::make_shared<std::map<double, double>>();
    for (const auto& p : j.at("points")) (*pts)[p.at(0).get<double>()] = p.at(1).get<double>();
    return [pts](double lam) {
      auto it = pts->find(lam);
      return it == pts->end() ? 0.0 : it->second;
    };
  }
  throw std::runtime_error("filter must be gibbs:<beta>, micro:<E> or custom:<file>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HDQI experiment CLI"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "print a machine-readable result to stdout");

  auto* gen = app.add_subcommand("gen", "generate a Hamiltonian instance");
  std::string gen_kind = "greedy", gen_out = "hamiltonian.txt";
  std::size_t gen_n = 12, gen_k = 3, gen_m = 24, gen_L = 3, gen_a = 3, gen_b = 4;
  double gen_p = 0.0;
  uint64_t gen_seed = 0;
  std::size_t gen_cap = 1000000;
  gen->add_option("--kind", gen_kind, "greedy|spin_glass|ising_ring|toric|cluster");
  gen->add_option("--n", gen_n);
  gen->add_option("--k", gen_k);
  gen->add_option("--m", gen_m);
  gen->add_option("--L", gen_L);
  gen->add_option("--a", gen_a);
  gen->add_option("--b", gen_b);
  gen->add_option("--p", gen_p);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--rejection-cap", gen_cap);
  gen->add_option("--out", gen_out);

  auto* wf = app.add_subcommand("decode-waterfall", "BP threshold of the greedy ensemble");
  std::size_t wf_k = 3, wf_n = 300, wf_trials = 50;
  double wf_ratio = 3.0, wf_target = 0.5;
  uint64_t wf_seed = 0;
  std::string wf_out = "curve.csv";
  bool wf_svg = false;
  wf->add_option("--k", wf_k);
  wf->add_option("--ratio", wf_ratio, "m/n");
  wf->add_option("--n", wf_n);
  wf->add_option("--trials", wf_trials);
  wf->add_option("--target", wf_target);
  wf->add_option("--seed", wf_seed);
  wf->add_option("--out", wf_out);
  wf->add_flag("--svg", wf_svg);

  auto* sim = app.add_subcommand("simulate", "dense HDQI run, rho on register B");
  std::string sim_h, sim_poly_file, sim_dec = "lookup", sim_pilot = "dicke",
              sim_out = "rho.json";
  double sim_fault_eps = 0.0, sim_gibbs_beta = 0.0;
  std::size_t sim_ell = 2;
  uint64_t sim_seed = 0;
  sim->add_option("--hamiltonian", sim_h)->required();
  sim->add_option("--poly", sim_poly_file, "polynomial JSON (coeffs)");
  sim->add_option("--gibbs-beta", sim_gibbs_beta, "use a Gibbs polynomial instead of --poly");
  sim->add_option("--decoder", sim_dec, "lookup|ge|bp");
  sim->add_option("--pilot", sim_pilot, "dicke|blockwise|mps");
  sim->add_option("--ell", sim_ell, "lookup table radius (defaults to deg P)");
  sim->add_option("--fault-eps", sim_fault_eps);
  sim->add_option("--seed", sim_seed);
  sim->add_option("--out", sim_out);
  std::string sim_mps_out;
  sim->add_option("--mps-out", sim_mps_out, "dump the pilot MPS as JSON (mps pilot only)");

  auto* gb = app.add_subcommand("gibbs", "Gibbs polynomial + desk-scale check");
  std::string gb_h, gb_out = "gibbs_poly.json";
  double gb_beta = 0.2, gb_eps = 0.1, gb_K = 0.0;
  gb->add_option("--hamiltonian", gb_h)->required();
  gb->add_option("--beta", gb_beta);
  gb->add_option("--eps", gb_eps);
  gb->add_option("--K", gb_K, "norm bound; defaults to m");
  gb->add_option("--out", gb_out);

  auto* dq = app.add_subcommand("dequant-sample", "classical spectral sampler");
  std::string dq_h, dq_filter = "gibbs:0.5", dq_out = "tableaus.jsonl";
  std::size_t dq_samples = 1000;
  uint64_t dq_seed = 0;
  dq->add_option("--hamiltonian", dq_h)->required();
  dq->add_option("--filter", dq_filter, "gibbs:<beta> | micro:<E> | custom:<json>");
  dq->add_option("--samples", dq_samples);
  dq->add_option("--seed", dq_seed);
  dq->add_option("--out", dq_out);

  auto* sc = app.add_subcommand("semicircle", "semicircle prediction vs measurement");
  std::size_t sc_m = 40, sc_ell = 8, sc_samples = 100000;
  uint64_t sc_seed = 0;
  std::string sc_out = "semicircle.csv", sc_h;
  bool sc_svg = false;
  sc->add_option("--m", sc_m);
  sc->add_option("--ell", sc_ell);
  sc->add_option("--samples", sc_samples);
  sc->add_option("--seed", sc_seed);
  sc->add_option("--hamiltonian", sc_h, "optional commuting instance (default independent)");
  sc->add_option("--out", sc_out);
  sc->add_flag("--svg", sc_svg);

  auto* cp = app.add_subcommand("components", "anticommutation component statistics");
  std::string cp_kind = "spin_glass", cp_out = "components.csv";
  std::size_t cp_a = 3, cp_b = 4, cp_m = 1000, cp_trials = 20;
  double cp_p = 0.01;
  uint64_t cp_seed = 0;
  bool cp_svg = false;
  cp->add_option("--kind", cp_kind, "spin_glass");
  cp->add_option("--a", cp_a);
  cp->add_option("--b", cp_b);
  cp->add_option("--p", cp_p);
  cp->add_option("--m", cp_m);
  cp->add_option("--trials", cp_trials);
  cp->add_option("--seed", cp_seed);
  cp->add_option("--out", cp_out);
  cp->add_flag("--svg", cp_svg);

  auto* sa = app.add_subcommand("sa", "Clifford simulated annealing baseline");
  std::string sa_h, sa_out = "sa_trace.csv";
  std::size_t sa_steps = 200000, sa_restarts = 20;
  std::size_t sa_n = 0, sa_k = 3, sa_m = 0;
  uint64_t sa_seed = 0;
  sa->add_option("--hamiltonian", sa_h, "instance file (or use --n/--k/--m for greedy)");
  sa->add_option("--n", sa_n);
  sa->add_option("--k", sa_k);
  sa->add_option("--m", sa_m);
  sa->add_option("--steps", sa_steps);
  sa->add_option("--restarts", sa_restarts);
  sa->add_option("--seed", sa_seed);
  sa->add_option("--out", sa_out);

  auto* ab = app.add_subcommand("alphabeta", "alpha / beta queries on a graph file");
  std::string ab_graph, ab_mu, ab_y;
  std::size_t ab_k = 0;
  ab->add_option("--graph", ab_graph, "file: first line m, then 'u v' edges")->required();
  ab->add_option("--mu", ab_mu, "comma-separated counting vector");
  ab->add_option("--k", ab_k, "beta order");
  ab->add_option("--y", ab_y, "comma-separated bits for beta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      PauliHamiltonian h;
      if (gen_kind == "greedy") h = greedy_commuting(gen_n, gen_k, gen_m, gen_seed, gen_cap);
      else if (gen_kind == "spin_glass")
        h = spin_glass_sparse(gen_m * gen_a / gen_b, gen_a, gen_b, gen_p, gen_seed)
                .to_hamiltonian();
      else if (gen_kind == "ising_ring") h = ising_ring(gen_L);
      else if (gen_kind == "toric") h = toric_code(gen_L);
      else if (gen_kind == "cluster") h = cluster_ring(gen_L);
      else throw std::runtime_error("unknown --kind " + gen_kind);
      std::ofstream f(gen_out);
      print_hamiltonian(f, h);
      write_manifest(gen_out, "gen",
                     {{"kind", gen_kind}, {"n", gen_n}, {"k", gen_k}, {"m", gen_m},
                      {"L", gen_L}, {"a", gen_a}, {"b", gen_b}, {"p", gen_p},
                      {"seed", gen_seed}});
      SymplecticCode code = build_code(h);
      if (json_out)
        std::cout << json{{"out", gen_out}, {"n", h.n}, {"m", h.m()},
                          {"dim_symp", code.dimension}}.dump()
                  << "\n";
      else
        std::cout << "wrote " << gen_out << "  n=" << h.n << " m=" << h.m()
                  << " dim Symp=" << code.dimension << "\n";
    } else if (*wf) {
      std::size_t m = std::size_t(wf_ratio * double(wf_n));
      PauliHamiltonian h = greedy_commuting(wf_n, wf_k, m, wf_seed, 100000000);
      SymplecticCode code = build_code(h);
      BpDecoder dec(code, BpParams{});
      WaterfallResult res = waterfall_threshold(code, dec, wf_trials, wf_target, wf_seed + 1);
      std::ofstream f(wf_out);
      f << "flips,trials,successes,rate\n";
      for (const auto& p : res.curve)
        f << p.flips << "," << p.trials << "," << p.successes << "," << p.rate << "\n";
      write_manifest(wf_out, "decode-waterfall",
                     {{"k", wf_k}, {"ratio", wf_ratio}, {"n", wf_n}, {"trials", wf_trials},
                      {"target", wf_target}, {"seed", wf_seed}});
      if (wf_svg) {
        std::vector<double> xs, ys;
        for (const auto& p : res.curve) {
          xs.push_back(double(p.flips) / double(m));
          ys.push_back(p.rate);
        }
        write_svg(wf_out + ".svg", xs, ys, "BP waterfall (success rate vs flip fraction)");
      }
      if (json_out)
        std::cout << json{{"threshold_flips", res.threshold_flips},
                          {"threshold_fraction", res.threshold_fraction}}.dump()
                  << "\n";
      else
        std::cout << "threshold flips=" << res.threshold_flips
                  << " fraction=" << res.threshold_fraction << "\n";
    } else if (*sim) {
      PauliHamiltonian h = parse_hamiltonian_file(sim_h);
      UniPoly poly;
      if (!sim_poly_file.empty()) poly = load_poly(sim_poly_file);
      else if (sim_gibbs_beta > 0) poly = gibbs_poly(sim_gibbs_beta, double(h.m()), 0.1).power;
      else throw std::runtime_error("need --poly or --gibbs-beta");
      PilotMode mode = sim_pilot == "dicke" ? PilotMode::Dicke
                       : sim_pilot == "blockwise" ? PilotMode::Blockwise
                       : sim_pilot == "mps" ? PilotMode::GeneralMps
                       : throw std::runtime_error("unknown --pilot " + sim_pilot);
      std::size_t ell = std::max(sim_ell, poly.degree());
      DecoderFactory factory = sim_dec == "lookup" ? lookup_decoder_factory(ell)
                               : sim_dec == "ge" ? ge_decoder_factory()
                               : sim_dec == "bp" ? bp_decoder_factory(BpParams{})
                               : throw std::runtime_error("unknown --decoder " + sim_dec);
      std::optional<FaultSpec> fault;
      if (sim_fault_eps > 0) fault = FaultSpec{sim_fault_eps, sim_seed};
      if (!sim_mps_out.empty()) {
        PilotMPS mps(h, poly);
        std::ofstream mf(sim_mps_out);
        mf << mps.to_json() << "\n";
      }
      HdqiResult run = hdqi_run(h, poly, factory, mode, fault);
      json out;
      out["n"] = h.n;
      out["pilot"] = sim_pilot;
      std::vector<std::vector<double>> re, im;
      std::size_t d = run.rho.dim();
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> rrow(d), irow(d);
        for (std::size_t j = 0; j < d; ++j) {
          rrow[j] = run.rho.mat(Eigen::Index(i), Eigen::Index(j)).real();
          irow[j] = run.rho.mat(Eigen::Index(i), Eigen::Index(j)).imag();
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
      }
      out["rho_real"] = re;
      out["rho_imag"] = im;
      if (h.n <= 8 && !fault) {
        DensityMatrix oracle = rho_direct(h, poly);
        auto [td, fid] = distance_metrics(run.rho, oracle);
        out["oracle_trace_distance"] = td;
        out["oracle_fidelity"] = fid;
        if (!json_out)
          std::cout << "trace distance to the direct oracle: " << td << "\n";
      }
      std::ofstream f(sim_out);
      f << out.dump(2) << "\n";
      if (json_out) {
        json brief{{"out", sim_out}, {"n", h.n}, {"pilot", sim_pilot}};
        if (out.contains("oracle_trace_distance"))
          brief["oracle_trace_distance"] = out["oracle_trace_distance"];
        std::cout << brief.dump() << "\n";
      }
      write_manifest(sim_out, "simulate",
                     {{"hamiltonian", sim_h}, {"poly", sim_poly_file},
                      {"gibbs_beta", sim_gibbs_beta}, {"decoder", sim_dec},
                      {"pilot", sim_pilot}, {"fault_eps", sim_fault_eps},
                      {"seed", sim_seed}});
      std::cout << "wrote " << sim_out << "\n";
    } else if (*gb) {
      PauliHamiltonian h = parse_hamiltonian_file(gb_h);
      double K = gb_K > 0 ? gb_K : double(h.m());
      GibbsPoly g = gibbs_poly(gb_beta, K, gb_eps);
      std::ofstream f(gb_out);
      json j = json::parse(g.power.to_json());
      j["meta"] = {{"beta", gb_beta}, {"K", K}, {"eps", gb_eps}, {"degree", g.degree}};
      f << j.dump(2) << "\n";
      write_manifest(gb_out, "gibbs",
                     {{"hamiltonian", gb_h}, {"beta", gb_beta}, {"eps", gb_eps}, {"K", K}});
      double grid_err = g.grid_relative_error();
      std::optional<double> gibbs_td;
      if (h.n <= 10) {
        DensityMatrix rho = rho_direct(h, g.power);
        gibbs_td = trace_distance(rho, gibbs_exact(h, gb_beta));
      }
      if (json_out) {
        json j2{{"degree", g.degree}, {"grid_relative_error", grid_err}};
        if (gibbs_td) j2["gibbs_trace_distance"] = *gibbs_td;
        std::cout << j2.dump() << "\n";
      } else {
        std::cout << "degree " << g.degree << ", squared grid relative error "
                  << grid_err << "\n";
        if (gibbs_td)
          std::cout << "trace distance to the exact Gibbs state: " << *gibbs_td << "\n";
      }
    } else if (*dq) {
      PauliHamiltonian h = parse_hamiltonian_file(dq_h);
      auto f = parse_filter(dq_filter);
      SpectralSampleResult res = spectral_sample(h, f, dq_samples, dq_seed);
      std::ofstream out(dq_out);
      for (const auto& t : res.tableaus) out << t.to_jsonl() << "\n";
      write_manifest(dq_out, "dequant-sample",
                     {{"hamiltonian", dq_h}, {"filter", dq_filter},
                      {"samples", dq_samples}, {"seed", dq_seed}});
      if (json_out)
        std::cout << json{{"out", dq_out}, {"samples", dq_samples}}.dump() << "\n";
      else
        std::cout << "wrote " << dq_samples << " tableaus to " << dq_out << "\n";
    } else if (*sc) {
      PauliHamiltonian h = sc_h.empty() ? independent_z(sc_m) : parse_hamiltonian_file(sc_h);
      SemicircleMeasurement meas = semicircle_experiment(h, sc_ell, sc_samples, sc_seed);
      std::ofstream f(sc_out);
      f << "m,ell,predicted,exact,measured\n";
      f << h.m() << "," << sc_ell << "," << meas.predicted << "," << meas.exact << ","
        << meas.measured << "\n";
      write_manifest(sc_out, "semicircle",
                     {{"m", h.m()}, {"ell", sc_ell}, {"samples", sc_samples},
                      {"seed", sc_seed}});
      if (sc_svg) {
        std::vector<double> xs, ys;
        for (std::size_t l = 0; l <= h.m() / 2; ++l) {
          xs.push_back(double(l) / double(h.m()));
          ys.push_back(semicircle_predict(l, h.m()));
        }
        write_svg(sc_out + ".svg", xs, ys, "semicircle <E>/m vs l/m");
      }
      if (json_out)
        std::cout << json{{"predicted", meas.predicted}, {"exact", meas.exact},
                          {"measured", meas.measured}}.dump()
                  << "\n";
      else
        std::cout << "predicted " << meas.predicted << "  exact " << meas.exact
                  << "  measured " << meas.measured << "\n";
    } else if (*cp) {
      if (cp_kind != "spin_glass") throw std::runtime_error("components: only spin_glass");
      std::size_t n = cp_m * cp_a / cp_b;
      auto stats = component_experiment_spin_glass(n, cp_a, cp_b, cp_p, cp_trials, cp_seed);
      std::ofstream f(cp_out);
      f << "trial,nodes,edges,max_component\n";
      std::vector<double> xs, ys;
      for (std::size_t t = 0; t < stats.size(); ++t) {
        f << t << "," << stats[t].nodes << "," << stats[t].edges << ","
          << stats[t].max_size << "\n";
        xs.push_back(double(t));
        ys.push_back(double(stats[t].max_size));
      }
      write_manifest(cp_out, "components",
                     {{"kind", cp_kind}, {"a", cp_a}, {"b", cp_b}, {"p", cp_p},
                      {"m", cp_m}, {"trials", cp_trials}, {"seed", cp_seed}});
      if (cp_svg) write_svg(cp_out + ".svg", xs, ys, "max anticommutation component per trial");
      std::size_t worst = 0;
      for (const auto& st : stats) worst = std::max(worst, st.max_size);
      if (json_out)
        std::cout << json{{"trials", cp_trials}, {"max_component", worst}}.dump() << "\n";
      else
        std::cout << "max component over " << cp_trials << " trials: " << worst << "\n";
    } else if (*sa) {
      PauliHamiltonian h;
      if (!sa_h.empty()) h = parse_hamiltonian_file(sa_h);
      else if (sa_n > 0 && sa_m > 0) h = greedy_commuting(sa_n, sa_k, sa_m, sa_seed, 100000000);
      else throw std::runtime_error("need --hamiltonian or --n/--m");
      SaResult res = clifford_sa(h, sa_steps, SaSchedule{2.0, 0.01, sa_restarts}, sa_seed);
      std::ofstream f(sa_out);
      f << "step,energy\n";
      for (auto [step, e] : res.trace) f << step << "," << e << "\n";
      write_manifest(sa_out, "sa",
                     {{"hamiltonian", sa_h}, {"n", sa_n}, {"k", sa_k}, {"m", sa_m},
                      {"steps", sa_steps}, {"restarts", sa_restarts}, {"seed", sa_seed}});
      if (json_out)
        std::cout << json{{"best_energy", res.best_energy},
                          {"approximation_ratio", res.approximation_ratio}}.dump()
                  << "\n";
      else
        std::cout << "best energy " << res.best_energy << "  ratio "
                  << res.approximation_ratio << "\n";
    } else if (*ab) {
      std::ifstream f(ab_graph);
      if (!f) throw std::runtime_error("cannot open " + ab_graph);
      std::size_t m;
      f >> m;
      std::vector<std::pair<uint32_t, uint32_t>> edges;
      uint32_t u, v;
      while (f >> u >> v) edges.emplace_back(u, v);
      AnticommGraph g = AnticommGraph::from_adjacency(m, edges);
      auto parse_csv = [](const std::string& text) {
        std::vector<uint32_t> out;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(uint32_t(std::stoul(tok)));
        return out;
      };
      json jout;
      if (!ab_mu.empty()) {
        CountVector mu = parse_csv(ab_mu);
        if (mu.size() != m) throw std::runtime_error("--mu length must equal m");
        Rational a = alpha_dp(g, mu);
        std::ostringstream rs;
        rs << a;
        if (json_out) jout["alpha"] = rs.str();
        else std::cout << "alpha = " << rs.str() << "\n";
      }
      if (!ab_y.empty()) {
        auto bits = parse_csv(ab_y);
        if (bits.size() != m) throw std::runtime_error("--y length must equal m");
        BitVec y(m);
        for (std::size_t i = 0; i < m; ++i)
          if (bits[i]) y.set(i, true);
        BigInt b = beta_eval(g, ab_k, y);
        if (json_out) jout["beta"] = b.str();
        else std::cout << "beta^{(" << ab_k << ")}(y) = " << b << "\n";
      }
      if (json_out) std::cout << jout.dump() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
