// ncclab command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 input error, 3 verification failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncclab/circuit.hpp"
#include "ncclab/coding.hpp"
#include "ncclab/error.hpp"
#include "ncclab/field.hpp"
#include "ncclab/flow.hpp"
#include "ncclab/network.hpp"
#include "ncclab/reduction.hpp"
#include "ncclab/systematic_ds.hpp"

namespace {

using ncclab::Errc;
using ncclab::Error;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kDomain = 1, kInput = 2, kVerify = 3 };

// Thrown for failed self-checks; maps to exit 3.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::LengthMismatch:
    case Errc::WidthMismatch:
    case Errc::UnsupportedWidth:
      return kInput;
    default:
      return kDomain;
  }
}

// "%.1f" for integral values, "%.6g" otherwise.
std::string num(double v) {
  char buf[64];
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.1f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", v);
  }
  return buf;
}

Json quantity(double value, const std::string& formula) {
  Json j;
  j["value"] = value;
  j["formula"] = formula;
  return j;
}

Json quantity(std::size_t value, const std::string& formula) {
  Json j;
  j["value"] = value;
  j["formula"] = formula;
  return j;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("NCCLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "NCCLAB_SEED is not an unsigned integer");
    }
  }
  return flag;
}

std::vector<std::uint32_t> read_csv_values(std::istream& in) {
  std::vector<std::uint32_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, "not a non-negative integer: '" + tok + "'");
      }
      if (used != tok.size() || v > 0xFFFFFFFFULL) throw Error(Errc::ParseError, "bad value '" + tok + "'");
      out.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return out;
}

void write_csv_values(std::ostream& out, const std::vector<std::uint32_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "\n";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  return f;
}

// --- fft -----------------------------------------------------------------------

struct FftArgs {
  std::uint64_t p = 17;
  std::size_t n = 16;
  std::string input;
  std::string output;
  bool inverse = false;
  bool check = false;
};

int cmd_fft(const FftArgs& a) {
  const ncclab::PrimeField field(a.p);
  const auto root = ncclab::find_root_of_unity(field, a.n);

  std::vector<std::uint32_t> raw;
  if (a.input.empty() || a.input == "-") {
    raw = read_csv_values(std::cin);
  } else {
    std::ifstream f(a.input);
    if (!f) throw Error(Errc::ParseError, "cannot open '" + a.input + "'");
    raw = read_csv_values(f);
  }
  if (raw.size() != a.n) {
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(a.n) + " values, got " + std::to_string(raw.size()));
  }
  for (auto v : raw) {
    if (v >= field.modulus()) throw Error(Errc::ParseError, "value " + std::to_string(v) + " is not reduced mod p");
  }
  const auto x = ncclab::to_elements(field, raw);
  const auto y = a.inverse ? ncclab::ffft_inverse(x, root) : ncclab::ffft(x, root);

  if (a.output.empty()) {
    write_csv_values(std::cout, ncclab::to_values(y));
  } else {
    auto f = open_output(a.output);
    write_csv_values(f, ncclab::to_values(y));
  }
  if (a.check) {
    const auto oracle = a.inverse ? ncclab::naive_dft(x, root.inverse()) : ncclab::naive_dft(x, root);
    auto expect = oracle;
    if (a.inverse) {
      const auto n_inv = field.element(a.n).inv();
      for (auto& e : expect) e *= n_inv;
    }
    if (expect != y) throw VerificationFailure("FFFT disagrees with the naive DFT");
    const auto back = a.inverse ? ncclab::ffft(y, root) : ncclab::ffft_inverse(y, root);
    if (back != x) throw VerificationFailure("round trip failed");
    std::cout << "OK naive-DFT match\n";
  }
  return kOk;
}

// --- reduce --------------------------------------------------------------------

struct ReduceArgs {
  std::string problem = "inversion";
  std::string ds;
  std::size_t n = 8;
  std::size_t t = 2;
  std::uint64_t p = 17;
  std::size_t q = 8;
  double eps = 1.0 / 16.0;
  std::optional<std::size_t> d;
  std::optional<std::size_t> b;
  std::size_t samples = 100000;
  std::size_t telescoping_samples = 200;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string report;
};

Json edge_bound_json(const ncclab::EdgeBoundReport& l) {
  Json j;
  j["edges"] = quantity(l.edges, "|E| of the pruned network");
  j["pairs"] = quantity(l.pairs, "k = n");
  j["delta"] = quantity(l.delta, "fraction of pairs at distance >= d in un(R)");
  j["d"] = quantity(l.d, "distance parameter");
  j["delta_prime"] = quantity(l.delta_prime, "(delta - 5/6) / 10");
  j["edges_per_pair"] = quantity(l.edges_per_pair, "|E| / k");
  j["bound"] = quantity(l.bound, "delta' * d");
  j["vacuous"] = l.vacuous;
  j["holds"] = l.holds;
  return j;
}

Json audit_json(const ncclab::ReductionAudit& a) {
  Json j;
  j["n"] = a.n;
  j["t"] = a.t;
  j["q"] = a.q;
  j["r"] = a.r;
  j["s_bits"] = quantity(a.s_bits, "advice length s in bits");
  j["edges_before"] = quantity(a.edges_before, "|E(G')| of the layered graph");
  j["edges_bound"] = quantity(a.edges_bound, "2 t n");
  j["edges_after"] = quantity(a.edges_after, "|E| after removing W");
  j["max_out_degree"] = quantity(a.max_out_degree, "max out-degree after pruning");
  j["degree_bound"] = quantity(a.degree_bound, "q t");
  j["w_size"] = quantity(a.w_size, "|W|, middle vertices of out-degree > q t");
  j["w_bound"] = quantity(a.w_bound, "2 n / q");
  j["b"] = quantity(a.b, "cyclic shift of the targets");
  j["d"] = quantity(a.d, "ceil(log_{qt} n / 2)");
  j["delta"] = quantity(a.delta, "fraction of pairs with un-distance >= d");
  j["delta_bfs"] = quantity(a.delta_bfs, "delta recomputed by BFS on un(R)");
  j["sqrt_bound"] = quantity(a.sqrt_bound, "1 - 2 / sqrt(n)");
  j["bucket_size"] = quantity(a.bucket_size, "|largest bucket|");
  j["inputs_examined"] = quantity(a.inputs_examined, "inputs in the census");
  j["bucket_count"] = quantity(a.bucket_count, "distinct fixings");
  j["exhaustive"] = a.exhaustive;
  j["seed"] = a.seed;
  j["log2_bucket_fraction"] = quantity(a.log2_bucket_fraction, "log2(|bucket| / inputs_examined)");
  j["log2_fraction_bound"] = quantity(a.log2_fraction_bound, "-(2 eps + 2/q) n log n");
  j["log2_bucket_bound"] = quantity(a.log2_bucket_bound, "(1 - 2 eps - 2/q - 2/log n) n log n");
  j["eps"] = quantity(a.eps, "configured eps");
  j["eps_measured"] = quantity(a.eps_measured, "s / (n log n)");
  j["eps_prime"] = quantity(a.eps_prime, "2 eps + 2/q + 2/log n");
  j["fixed_bits"] = quantity(a.fixed_bits, "bits fixed by the bucket key");
  j["fixed_bits_bound"] = quantity(a.fixed_bits_bound, "2 s + (2/q) n r");
  j["members_checked"] = a.members_checked;
  j["members_correct"] = a.members_correct;
  j["replay_agreements"] = a.replay_agreements;
  j["max_edge_entropy"] = quantity(a.max_edge_entropy, "max over edges of empirical H(edge message)");
  j["capacity_respected"] = a.capacity_respected;
  j["structure_ok"] = a.structure_ok();
  j["scheme_ok"] = a.scheme_ok();
  j["edge_bound"] = edge_bound_json(a.edge_bound);
  return j;
}

// telescoping identity and pipeline replay on seeded random coefficient vectors
Json telescoping_check(ncclab::TwoPassScheme& scheme, const ncclab::PrunedNetwork& net, std::size_t samples,
                       std::uint64_t seed) {
  const auto root = *scheme.root();
  const auto field = root.sigma.field();
  const std::size_t n = scheme.n();
  const std::size_t b = scheme.shift();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, field.modulus() - 1);
  std::size_t identity_ok = 0;
  std::size_t pipeline_ok = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<std::uint32_t> raw(n);
    for (auto& v : raw) v = pick(rng);
    const auto alpha = ncclab::to_elements(field, raw);
    const auto tele = ncclab::telescoping_outputs(alpha, root, b);
    const auto fix = ncclab::compute_fixing(net, scheme, raw);
    const auto run = ncclab::run_poly_scheme(net, scheme, fix, alpha);
    bool id = true;
    bool pipe = true;
    for (std::size_t l = 0; l < n; ++l) {
      const std::uint32_t expect = raw[(l + n - b) % n];
      id = id && tele[l].value() == expect;
      pipe = pipe && run.layer_out[l] == expect;
    }
    identity_ok += id;
    pipeline_ok += pipe;
  }
  Json j;
  j["samples"] = samples;
  j["seed"] = seed;
  j["identity_verified"] = identity_ok;
  j["pipeline_verified"] = pipeline_ok;
  j["formula"] = "p'(sigma^-l) / n = alpha_{(l - b) mod n}";
  j["ok"] = identity_ok == samples && pipeline_ok == samples;
  return j;
}

int cmd_reduce(const ReduceArgs& a) {
  const std::uint64_t seed = effective_seed(a.seed);
  std::optional<ncclab::TwoPassScheme> scheme;
  std::string ds_name = a.ds;
  if (a.problem == "inversion") {
    if (ds_name.empty()) ds_name = "inv_block";
    std::shared_ptr<const ncclab::SystematicDS> ds(ncclab::make_named_ds(ds_name, a.n, a.t));
    scheme = ncclab::TwoPassScheme::inversion(ds);
  } else if (a.problem == "polyeval" || a.problem == "polyinterp") {
    const bool eval = a.problem == "polyeval";
    if (ds_name.empty()) ds_name = eval ? "eval_scan" : "interp_scan";
    if (ds_name == "hellman" || ds_name.rfind("inv_", 0) == 0) {
      throw Error(Errc::InvalidArgument, "data structure '" + ds_name + "' does not solve " + a.problem);
    }
    const ncclab::PrimeField field(a.p);
    const auto root = ncclab::find_root_of_unity(field, a.n);
    const std::string name = ds_name;
    const std::size_t n = a.n;
    scheme = ncclab::TwoPassScheme::polynomial(
        eval ? ncclab::SchemeVariant::PolyEval : ncclab::SchemeVariant::PolyInterp, root,
        [name, n](const ncclab::RootOfUnity& r) { return ncclab::make_named_ds(name, n, 0, r); });
  } else {
    throw Error(Errc::InvalidArgument, "unknown problem '" + a.problem + "'");
  }

  ncclab::ReductionConfig cfg;
  cfg.q = a.q;
  cfg.eps = a.eps;
  cfg.d = a.d;
  cfg.shift = a.b;
  cfg.samples = a.samples;
  cfg.seed = seed;
  const auto res = ncclab::run_reduction(*scheme, cfg);

  Json report;
  report["command"] = "reduce";
  report["problem"] = a.problem;
  report["ds"] = ds_name;
  report["n"] = a.n;
  if (a.problem == "inversion") {
    report["t_param"] = a.t;
  } else {
    report["p"] = a.p;
  }
  report["seed"] = seed;
  report["config"] = {{"q", a.q}, {"eps", a.eps}, {"samples", a.samples}};
  report["audit"] = audit_json(res.audit);
  bool verified = res.audit.scheme_ok();
  if (a.problem != "inversion") {
    report["telescoping"] = telescoping_check(*scheme, res.net, a.telescoping_samples, seed);
    verified = verified && report["telescoping"]["ok"].get<bool>();
  }
  report["verified"] = verified;

  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    {
      auto f = open_output((dir / "network.net").string());
      ncclab::write_network(f, res.net.network());
    }
    {
      auto f = open_output((dir / "bucket.csv").string());
      for (const auto& m : res.bucket.members) write_csv_values(f, m);
    }
    {
      auto f = open_output((dir / "audit.json").string());
      f << report.dump(2) << "\n";
    }
  }
  if (!a.report.empty()) {
    auto f = open_output(a.report);
    f << report.dump(2) << "\n";
  }

  const auto& au = res.audit;
  std::cout << "edges " << au.edges_before << " (2tn = " << au.edges_bound << ")\n"
            << "max_out_degree " << au.max_out_degree << " (qt = " << au.degree_bound << ")\n"
            << "W " << au.w_size << " (2n/q = " << num(au.w_bound) << ")\n"
            << "shift " << au.b << " d " << au.d << " delta " << num(au.delta) << "\n"
            << "bucket " << au.bucket_size << "/" << au.inputs_examined << (au.exhaustive ? " exhaustive" : " sampled")
            << "\n"
            << "edge_bound " << (au.edge_bound.vacuous ? "vacuous" : (au.edge_bound.holds ? "holds" : "fails"))
            << " |E|/k " << num(au.edge_bound.edges_per_pair) << " delta'd " << num(au.edge_bound.bound) << "\n";
  if (report.contains("telescoping")) {
    const auto& tj = report["telescoping"];
    std::cout << "telescoping " << tj["identity_verified"].get<std::size_t>() << "/" << tj["samples"].get<std::size_t>()
              << " identity, " << tj["pipeline_verified"].get<std::size_t>() << "/" << tj["samples"].get<std::size_t>()
              << " pipeline\n";
  }
  if (a.report.empty() && a.out_dir.empty()) std::cout << report.dump(2) << "\n";
  if (!verified) throw VerificationFailure("scheme verification failed");
  return kOk;
}

// --- flowrate / gap ------------------------------------------------------------

struct FlowArgs {
  std::string network;
  bool undirected = false;
  bool gap = false;
  std::string csv;
  unsigned alphabet_bits = 2;
  double feasibility = 1e-9;
  double optimality = 1e-7;
  bool json = false;
};

int cmd_flow(const FlowArgs& a) {
  ncclab::Network net = ncclab::read_network_file(a.network);
  if (a.undirected) net = ncclab::undirect(net);
  const ncclab::FlowTolerances tol{a.feasibility, a.optimality};
  const auto sol = ncclab::flow_rate(net, tol);
  if (sol.max_conservation_violation >= a.feasibility || sol.max_capacity_violation >= a.feasibility) {
    throw VerificationFailure("flow residuals exceed tolerance");
  }
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    f << "commodity,u,v,flow\n";
    ncclab::write_flow_csv(f, sol);
  }
  Json report;
  report["command"] = a.gap ? "gap" : "flowrate";
  report["network"] = a.network;
  report["directed"] = net.directed();
  report["flow_rate"] = quantity(sol.rate, "max concurrent flow rate, edge LP");
  report["certificate_residual"] = sol.certificate_residual;
  report["conservation_residual"] = sol.max_conservation_violation;
  report["capacity_residual"] = sol.max_capacity_violation;

  if (!a.gap) {
    std::cout << "flow_rate " << num(sol.rate) << "\n";
  } else {
    if (!net.directed()) throw Error(Errc::InvalidArgument, "coding search needs a directed network");
    const auto search = ncclab::search_coding_rate(net, a.alphabet_bits);
    if (search.witness) {
      const auto scheme = search.witness->to_scheme(net);
      const auto audit =
          ncclab::audit_scheme(net, scheme, ncclab::all_inputs(net.pair_count(), search.rate), search.rate, 0.0);
      if (audit.correct_count != audit.total || !audit.capacity_respected) {
        throw VerificationFailure("coding witness does not decode");
      }
    }
    const auto gap = ncclab::ncc_gap_report(net, static_cast<double>(search.rate), tol);
    report["coding_rate"] = quantity(static_cast<double>(search.rate), "largest r with a decoding scheme, exhaustive");
    report["candidates_tried"] = search.candidates_tried;
    report["undirected_flow_rate"] = quantity(gap.undirected_flow_rate, "flow rate of un(R)");
    report["directed_ratio"] = quantity(gap.directed_ratio, "coding / directed flow");
    report["undirected_ratio"] = quantity(gap.undirected_ratio, "coding / undirected flow");
    report["ncc_counterexample_candidate"] = gap.ncc_counterexample_candidate;
    std::cout << "coding " << num(static_cast<double>(search.rate)) << " flow " << num(sol.rate) << " ratio "
              << num(gap.directed_ratio) << "\n"
              << "undirected_flow " << num(gap.undirected_flow_rate) << " ratio " << num(gap.undirected_ratio) << "\n";
    if (search.witness) {
      std::ostringstream w;
      ncclab::write_table_scheme(w, net, *search.witness);
      report["witness"] = w.str();
    }
  }
  if (a.json) std::cout << report.dump(2) << "\n";
  return kOk;
}

// --- commonbits ----------------------------------------------------------------

struct CommonBitsArgs {
  std::string circuit;
  std::size_t bound = 1;
  std::size_t block_bits = 1;
  unsigned input_block = 1;
  bool inversion = false;
  bool exact = false;
  bool verify = false;
  std::size_t samples = 4096;
  std::uint64_t seed = 1;
  bool json = false;
};

int cmd_commonbits(const CommonBitsArgs& a) {
  const ncclab::Circuit c = ncclab::read_circuit_file(a.circuit);
  unsigned b = a.input_block;
  std::size_t bb = a.block_bits;
  if (a.inversion) {
    // n blocks of ceil(log n) bits in and out
    std::size_t n = 2;
    while (n * ncclab::ceil_log2(n) < c.n_in()) ++n;
    if (n * ncclab::ceil_log2(n) != c.n_in()) throw Error(Errc::WidthMismatch, "not an inversion circuit width");
    b = ncclab::ceil_log2(n);
    bb = b;
  }
  ncclab::CommonBitsCut cut;
  if (a.exact) {
    auto ex = ncclab::exact_common_bits(c, a.bound, bb);
    if (!ex) throw Error(Errc::SearchSpaceTooLarge, "too many gates for the exact search");
    cut = *ex;
  } else {
    cut = ncclab::find_common_bits(c, a.bound, bb);
  }
  const auto ds = ncclab::circuit_to_ds(c, cut, b,
                                        a.inversion ? ncclab::ProblemKind::Inversion : ncclab::ProblemKind::CircuitBlocks);
  const auto& desc = ds->descriptor();

  Json report;
  report["command"] = "commonbits";
  report["circuit"] = a.circuit;
  report["gates"] = c.size();
  report["depth"] = c.depth();
  report["bound"] = a.bound;
  report["cut"] = cut.cut;
  report["cut_size"] = quantity(cut.cut.size(), "|cut| = advice bits s");
  report["bound_met"] = cut.bound_met;
  report["fallback_all"] = cut.fallback_all;
  report["connectivity"] = cut.connectivity;
  report["ds"] = {{"n", desc.n}, {"s_bits", desc.s_bits}, {"t", desc.t_queries}, {"query_sets", desc.query_sets}};

  std::cout << "cut size " << cut.cut.size() << "\n";
  std::cout << "cut";
  for (auto g : cut.cut) std::cout << " " << g;
  std::cout << "\n";
  for (std::size_t j = 0; j < cut.connectivity.size(); ++j) {
    std::cout << "block " << j << " reads";
    for (auto bit : cut.connectivity[j]) std::cout << " " << bit;
    std::cout << "\n";
  }
  std::cout << "ds n " << desc.n << " s " << desc.s_bits << " t " << desc.t_queries << "\n";
  if (!cut.bound_met) std::cout << "bound not met\n";

  bool failed = false;
  if (a.verify) {
    const std::size_t n = desc.n;
    const std::uint64_t seed = effective_seed(a.seed);
    const bool exhaustive = c.n_in() <= 20;
    const std::uint64_t total = exhaustive ? (std::uint64_t{1} << c.n_in()) : a.samples;
    std::mt19937_64 rng(seed);
    std::size_t ok = 0;
    std::size_t perms = 0;
    std::size_t perms_ok = 0;
    std::size_t q_stable = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<bool> bits(c.n_in());
      const std::uint64_t word = exhaustive ? code : rng();
      for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] = exhaustive ? ((word >> i) & 1U) != 0 : (rng() & 1U) != 0;
      }
      const auto blocks = ncclab::bits_to_blocks(bits, b);
      const auto expect = ncclab::bits_to_blocks(ncclab::eval_circuit(c, bits), static_cast<unsigned>(bb));
      const auto adv = ds->preprocess(blocks);
      ncclab::OracleTape tape(blocks);
      bool all = true;
      bool stable = true;
      for (std::size_t j = 0; j < n; ++j) {
        all = all && ds->answer(adv, j, tape) == expect[j];
        auto reads = tape.read_log();
        std::sort(reads.begin(), reads.end());
        reads.erase(std::unique(reads.begin(), reads.end()), reads.end());
        stable = stable && reads == desc.query_sets[j];
      }
      ok += all;
      q_stable += stable;
      if (a.inversion && ncclab::is_permutation(blocks)) {
        ++perms;
        perms_ok += all;
      }
    }
    report["verify"] = {{"inputs", total}, {"exhaustive", exhaustive}, {"agreements", ok}, {"query_sets_stable", q_stable}};
    std::cout << ok << "/" << total << (exhaustive ? " inputs OK" : " sampled inputs OK") << "\n";
    if (a.inversion) {
      report["verify"]["permutations"] = perms;
      report["verify"]["permutations_ok"] = perms_ok;
      std::cout << perms_ok << "/" << perms << " permutations OK\n";
    }
    failed = ok != total || q_stable != total || perms_ok != perms;
  }
  if (a.json) std::cout << report.dump(2) << "\n";
  if (failed) throw VerificationFailure("derived data structure disagrees with the circuit");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncclab: network coding and data structure lower-bound laboratory"};
  app.require_subcommand(1);

  FftArgs fa;
  auto* fft = app.add_subcommand("fft", "finite field Fourier transform of a CSV coefficient vector");
  fft->add_option("--p", fa.p, "field modulus (prime)")->required();
  fft->add_option("--n", fa.n, "transform length, n | p-1")->required();
  fft->add_option("--input", fa.input, "CSV input, '-' or omitted for stdin");
  fft->add_option("--output", fa.output, "CSV output, default stdout");
  fft->add_flag("--inverse", fa.inverse, "inverse transform");
  fft->add_flag("--check", fa.check, "compare with the naive DFT and the round trip");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "data structure to network reduction with audit");
  reduce->add_option("--problem", ra.problem, "inversion | polyeval | polyinterp")->capture_default_str();
  reduce->add_option("--ds", ra.ds, "data structure name");
  reduce->add_option("--n", ra.n, "input size")->capture_default_str();
  reduce->add_option("--t", ra.t, "block size or Hellman spacing")->capture_default_str();
  reduce->add_option("--p", ra.p, "field modulus for polynomial problems")->capture_default_str();
  reduce->add_option("--q", ra.q, "pruning parameter")->capture_default_str();
  reduce->add_option("--eps", ra.eps, "advice fraction eps")->capture_default_str();
  reduce->add_option("--d", ra.d, "distance override");
  reduce->add_option("--b", ra.b, "shift override");
  reduce->add_option("--samples", ra.samples, "census sample count")->capture_default_str();
  reduce->add_option("--telescoping-samples", ra.telescoping_samples, "polynomial self-check samples")
      ->capture_default_str();
  reduce->add_option("--seed", ra.seed, "RNG seed (NCCLAB_SEED overrides)")->capture_default_str();
  reduce->add_option("--out", ra.out_dir, "directory for network.net, bucket.csv, audit.json");
  reduce->add_option("--report", ra.report, "JSON report path");

  FlowArgs fl;
  auto add_flow_options = [&](CLI::App* cmd) {
    cmd->add_option("network", fl.network, "network file")->required();
    cmd->add_flag("--undirected", fl.undirected, "solve on un(R)");
    cmd->add_option("--csv", fl.csv, "write the flow as CSV");
    cmd->add_option("--alphabet-bits", fl.alphabet_bits, "coding search alphabet bits")->capture_default_str();
    cmd->add_option("--feasibility-tol", fl.feasibility, "feasibility tolerance")->capture_default_str();
    cmd->add_option("--optimality-tol", fl.optimality, "optimality tolerance")->capture_default_str();
    cmd->add_flag("--json", fl.json, "print a JSON report");
  };
  auto* flowrate = app.add_subcommand("flowrate", "maximum concurrent flow rate");
  add_flow_options(flowrate);
  flowrate->add_flag("--gap", fl.gap, "also search for the coding rate");
  auto* gap = app.add_subcommand("gap", "coding rate versus flow rate");
  add_flow_options(gap);

  CommonBitsArgs ca;
  auto* cb = app.add_subcommand("commonbits", "common-bits cut and derived data structure");
  cb->add_option("circuit", ca.circuit, "netlist file")->required();
  cb->add_option("--bound", ca.bound, "max input bits per output block")->capture_default_str();
  cb->add_option("--block-bits", ca.block_bits, "output bits per block")->capture_default_str();
  cb->add_option("--input-block", ca.input_block, "input bits per oracle cell")->capture_default_str();
  cb->add_flag("--inversion", ca.inversion, "treat as an inversion circuit (ceil(log n)-bit blocks)");
  cb->add_flag("--exact", ca.exact, "exhaustive minimum cut");
  cb->add_flag("--verify", ca.verify, "compare the derived structure with the circuit");
  cb->add_option("--samples", ca.samples, "verification samples when not exhaustive")->capture_default_str();
  cb->add_option("--seed", ca.seed, "RNG seed (NCCLAB_SEED overrides)")->capture_default_str();
  cb->add_flag("--json", ca.json, "print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*fft) return cmd_fft(fa);
    if (*reduce) return cmd_reduce(ra);
    if (*flowrate) return cmd_flow(fl);
    if (*gap) {
      fl.gap = true;
      return cmd_flow(fl);
    }
    if (*cb) return cmd_commonbits(ca);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const VerificationFailure& e) {
    std::cerr << "VerificationFailure: " << e.what() << "\n";
    return kVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
