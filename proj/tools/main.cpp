#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <iomanip>
#include <sstream>

#include "ggt/embedding.hpp"
#include "ggt/errors.hpp"
#include "ggt/growth.hpp"
#include "ggt/metric.hpp"
#include "ggt/models.hpp"
#include "ggt/orbit.hpp"
#include "ggt/parallel.hpp"
#include "ggt/presentation.hpp"

using json = nlohmann::ordered_json;
using namespace ggt;

namespace {

// Floats are emitted with 12 significant digits; exact values as integers
// when they fit a JSON number, decimal strings otherwise.
json num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return json::parse(buf);
}

json num(const BigInt& v) {
  if (fits_uint64(v)) return v.convert_to<std::uint64_t>();
  return v.str();
}

json num(const BigRat& v) {
  if (boost::multiprecision::denominator(v) == 1 && fits_uint64(boost::multiprecision::numerator(v))) {
    return boost::multiprecision::numerator(v).convert_to<std::uint64_t>();
  }
  return rat_string(v);
}

json num(const Rat& v) {
  if (v.den == 1) return v.num;
  return v.str();
}

json num(const BigFloat& v) {
  if (abs(v) < BigFloat("1e300")) return num(static_cast<double>(v));
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();  // beyond double range: 12-significant-digit string
}

void emit(const json& report, const std::string& path) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open output file '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io, "write failed for '" + path + "'");
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open output file '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io, "write failed for '" + path + "'");
}

struct ModelHandle {
  std::shared_ptr<const GroupModel> model;
  Presentation presentation;  // generator names for word I/O
  bool from_file{false};
};

Presentation default_presentation(unsigned rank) {
  Presentation p;
  for (unsigned i = 0; i < rank; ++i) p.generator_names.push_back(static_cast<char>('a' + i));
  return p;
}

ModelHandle resolve_model(const std::string& spec, unsigned completion_cap) {
  ModelHandle h;
  if (spec.rfind("builtin:", 0) == 0) {
    h.model = make_builtin_model(spec.substr(8));
    h.presentation = default_presentation(h.model->rank());
    return h;
  }
  h.presentation = load_presentation_file(spec);
  h.from_file = true;
  if (h.presentation.relators.empty()) {
    h.model = std::make_shared<FreeModel>(h.presentation.rank());
  } else {
    h.model = std::make_shared<RewritingModel>(
        spec, complete_presentation(h.presentation.rank(), h.presentation.relators, completion_cap));
  }
  return h;
}

FiniteMetricSpace resolve_space(const std::string& spec) {
  if (spec.rfind("builtin:tree:", 0) == 0) {
    return FiniteMetricSpace::tree_ball(2, static_cast<unsigned>(std::stoul(spec.substr(13))));
  }
  if (spec.rfind("builtin:cycle:", 0) == 0) {
    return FiniteMetricSpace::cycle(static_cast<unsigned>(std::stoul(spec.substr(14))));
  }
  std::ifstream in(spec);
  if (!in) fail(ErrorCode::io, "cannot open space file '" + spec + "'");
  std::vector<std::pair<int, int>> edges;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v;
    if (ls >> u >> v) edges.emplace_back(u, v);
  }
  return FiniteMetricSpace::from_edges(edges);
}

json growth_estimate_json(const GrowthEstimate& e) {
  return json{{"omega", num(e.omega)},
              {"window", {e.window_lo, e.window_hi}},
              {"method", e.method == GrowthMethod::tail_slope ? "tail-slope" : "series-root"},
              {"residual", num(e.residual)}};
}

json constants_json(const ConstantsBundle& c) {
  return json{{"delta", num(c.delta)},
              {"epsilon", num(c.epsilon)},
              {"L", c.L},
              {"Delta", num(c.Delta)},
              {"kappa", num(c.kappa)},
              {"Delta_minus", num(c.Delta_minus)},
              {"Delta_star", num(c.Delta_star)},
              {"lambda", num(c.lambda)},
              {"rho", num(c.rho)},
              {"sigma", num(c.sigma)},
              {"r_sigma", num(c.r_sigma)},
              {"R_rho", num(c.R_rho)},
              {"lambda_tilde", num(c.lambda_tilde)},
              {"scaled", c.scaled},
              {"lambda_ok", c.lambda_ok},
              {"rho_ok", c.rho_ok}};
}

int run_growth(const std::string& model_spec, unsigned radius, const std::string& window_arg,
               const std::string& format, const std::string& output) {
  ModelHandle h = resolve_model(model_spec, 400);
  BallTable table = ball_count(*h.model, radius);
  if (format == "csv") {
    std::string csv = "radius,count\n";
    for (unsigned r = 0; r <= table.radius(); ++r) {
      csv += std::to_string(r) + "," + table.counts[r].str() + "\n";
    }
    emit_text(csv, output);
    return 0;
  }
  unsigned lo = radius / 2, hi = radius;
  if (!window_arg.empty()) {
    auto colon = window_arg.find(':');
    if (colon == std::string::npos) fail(ErrorCode::usage, "window must be LO:HI");
    lo = static_cast<unsigned>(std::stoul(window_arg.substr(0, colon)));
    hi = static_cast<unsigned>(std::stoul(window_arg.substr(colon + 1)));
  }
  GrowthEstimate est = growth_rate(table, lo, hi);
  json counts = json::array();
  for (const BigInt& c : table.counts) counts.push_back(num(c));
  emit(json{{"command", "growth"},
            {"model", h.model->name()},
            {"radius", radius},
            {"counts", counts},
            {"estimate", growth_estimate_json(est)}},
       output);
  return 0;
}

int run_delta(const std::string& space_spec, const std::string& mode, std::uint64_t seed,
              const std::string& output) {
  FiniteMetricSpace space = resolve_space(space_spec);
  DeltaEstimate est;
  if (mode == "exhaustive") {
    est = four_point_delta(space);
  } else if (mode.rfind("sample:", 0) == 0) {
    est = four_point_delta_sampled(space, std::stoull(mode.substr(7)), seed);
  } else {
    fail(ErrorCode::usage, "mode must be 'exhaustive' or 'sample:N'");
  }
  json witness = json::array();
  json witness_labels = json::array();
  for (int w : est.witness) {
    witness.push_back(w);
    witness_labels.push_back(w >= 0 ? space.label(w) : "");
  }
  json rep{{"command", "delta"},
           {"space", space_spec},
           {"points", space.size()},
           {"mode", est.exhaustive ? "exhaustive" : "sampled"},
           {"delta", num(est.delta)},
           {"witness", witness},
           {"witness_labels", witness_labels}};
  if (!est.exhaustive) {
    rep["sample_count"] = est.sample_count;
    rep["seed"] = est.seed;
  }
  emit(rep, output);
  return 0;
}

int run_tripod(const std::string& space_spec, int x, int y, int z, const std::string& output) {
  FiniteMetricSpace space = resolve_space(space_spec);
  if (x < 0 || y < 0 || z < 0 || x >= space.size() || y >= space.size() || z >= space.size()) {
    fail(ErrorCode::usage, "tripod vertices out of range");
  }
  DeltaEstimate delta = four_point_delta(space);
  Tripod t = tripod_map(space, x, y, z);
  ScanReport band = check_tripod_band(space, x, y, z, delta.delta);
  emit(json{{"command", "tripod"},
            {"space", space_spec},
            {"vertices", {x, y, z}},
            {"labels", {space.label(x), space.label(y), space.label(z)}},
            {"arms", {num(t.arm_x), num(t.arm_y), num(t.arm_z)}},
            {"delta", num(delta.delta)},
            {"band_checked_pairs", band.checked},
            {"band_violations", band.violations},
            {"band_worst_slack", num(band.worst)}},
       output);
  return band.ok() ? 0 : 1;
}

int run_net(const std::string& model_spec, const std::string& rho_arg, unsigned radius, const std::string& output) {
  ModelHandle h = resolve_model(model_spec, 400);
  BigRat rho(rho_arg);
  auto elems = ball_elements(*h.model, radius);
  RhoNet net = build_rho_net(*h.model, elems, rho, BigRat(1, 2));
  json members = json::array();
  for (std::size_t i = 0; i < net.members.size(); ++i) {
    members.push_back(json{{"word", h.presentation.print_word(net.members[i])}, {"norm", net.member_norms[i]}});
  }
  emit(json{{"command", "net"},
            {"model", h.model->name()},
            {"rho", num(rho)},
            {"Delta", num(net.Delta)},
            {"radius", radius},
            {"elements", elems.size()},
            {"members", members},
            {"theta", net.theta ? json(h.presentation.print_word(*net.theta)) : json(nullptr)}},
       output);
  return 0;
}

int run_orbit(const std::string& xi_text, const std::string& check, unsigned max_len, std::uint64_t samples,
              std::uint64_t seed, const std::string& output) {
  Word xi = Word::parse(xi_text, 2);
  OrbitContext ctx(xi, 2);
  json rep{{"command", "orbit"}, {"xi", xi_text}, {"L", ctx.L()}, {"check", check}, {"seed", seed}};
  bool ok = true;
  if (check == "cells") {
    CellScanReport scan = scan_cells(ctx, max_len);
    rep["vertices"] = scan.vertices;
    rep["partition_violations"] = scan.partition_violations;
    rep["equivariance_violations"] = scan.equivariance_violations;
    ok = scan.ok();
  } else if (check == "symmetric") {
    Rat bound = Rat(8 * static_cast<std::int64_t>(ctx.L()));
    std::uint64_t violations = 0;
    Rat worst(0);
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint64_t h = seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
      Word beta;
      {
        std::vector<Letter> ls;
        std::uint64_t state = h;
        unsigned len = 1 + static_cast<unsigned>(state % max_len);
        for (unsigned k = 0; k < len; ++k) {
          state = state * 6364136223846793005ULL + 1442695040888963407ULL;
          Letter l = static_cast<Letter>((state >> 33) % 4);
          if (!ls.empty() && ls.back() == inverse_letter(l)) l = inverse_letter(l);
          ls.push_back(l);
        }
        beta = free_reduce(Word(std::move(ls)));
        if (beta.empty()) beta = Word({0});
      }
      OrbitCheck chk = check_symmetric_norm(ctx, beta, bound);
      if (!chk.ok) ++violations;
      if (chk.defect > worst) worst = chk.defect;
    }
    rep["samples"] = samples;
    rep["bound"] = num(bound);
    rep["worst_defect"] = num(worst);
    rep["violations"] = violations;
    ok = violations == 0;
  } else if (check == "twisted") {
    Rat bound = Rat(12 * static_cast<std::int64_t>(ctx.L()));
    std::uint64_t violations = 0;
    Rat worst(0);
    for (std::uint64_t i = 0; i < samples; ++i) {
      auto mk = [&](std::uint64_t salt) {
        std::vector<Letter> ls;
        std::uint64_t state = seed ^ salt ^ (0x9E3779B97F4A7C15ULL * (i + 1));
        unsigned len = 1 + static_cast<unsigned>(state % max_len);
        for (unsigned k = 0; k < len; ++k) {
          state = state * 6364136223846793005ULL + 1442695040888963407ULL;
          Letter l = static_cast<Letter>((state >> 33) % 4);
          if (!ls.empty() && ls.back() == inverse_letter(l)) l = inverse_letter(l);
          ls.push_back(l);
        }
        Word w = free_reduce(Word(std::move(ls)));
        return w.empty() ? Word({0}) : w;
      };
      OrbitCheck chk = check_twisted_norm(ctx, mk(0x1111), mk(0x2222), bound);
      if (!chk.ok) ++violations;
      if (chk.defect > worst) worst = chk.defect;
    }
    rep["samples"] = samples;
    rep["bound"] = num(bound);
    rep["worst_defect"] = num(worst);
    rep["violations"] = violations;
    ok = violations == 0;
  } else if (check == "insert") {
    std::uint64_t bad = 0, total = 0;
    std::vector<Word> stack{Word()};
    // Exhaustive over words of length <= max_len (capped) and kappa in 4..8.
    std::vector<Word> words{Word()};
    std::size_t begin = 0;
    unsigned cap = std::min(max_len, 6u);
    for (unsigned len = 1; len <= cap; ++len) {
      std::size_t end = words.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (Letter l = 0; l < 4; ++l) {
          if (!words[i].empty() && words[i].letters().back() == inverse_letter(l)) continue;
          Word child = words[i];
          child.push(l);
          words.push_back(std::move(child));
        }
      }
      begin = end;
    }
    for (unsigned kappa = 4; kappa <= 8; ++kappa) {
      for (const Word& beta : words) {
        ++total;
        if (!kappa_insert(ctx, beta, kappa).formula_exact) ++bad;
      }
    }
    rep["checked"] = total;
    rep["violations"] = bad;
    ok = bad == 0;
  } else {
    fail(ErrorCode::usage, "orbit check must be cells|symmetric|twisted|insert");
  }
  rep["ok"] = ok;
  emit(rep, output);
  return ok ? 0 : 1;
}

struct ClosureArgs {
  std::string presentation_path;
  std::vector<std::string> closure;
  std::string xi_text;
  std::string kappa_arg, lambda_arg, rho_arg;
  bool scaled = false;
};

TightnessOptions closure_options(const ClosureArgs& args) {
  TightnessOptions opt;
  Presentation base = load_presentation_file(args.presentation_path);
  if (!base.relators.empty()) {
    fail(ErrorCode::usage, "the ambient presentation must be free; move relators to --normal-closure");
  }
  opt.presentation = base;
  for (const std::string& w : args.closure) {
    opt.presentation.relators.push_back(free_reduce(base.parse_word(w)));
  }
  if (!args.xi_text.empty()) opt.xi = base.parse_word(args.xi_text);
  if (!args.kappa_arg.empty()) opt.kappa = BigRat(args.kappa_arg);
  if (!args.lambda_arg.empty()) opt.lambda = BigRat(args.lambda_arg);
  if (!args.rho_arg.empty()) opt.rho = BigRat(args.rho_arg);
  return opt;
}

int run_embed(const ClosureArgs& args, const std::string& check, unsigned max_blocks, const std::string& norm_cap_arg,
              unsigned net_radius, std::uint64_t samples, std::uint64_t seed, const std::string& output) {
  TightnessOptions opt = closure_options(args);
  unsigned rank = opt.presentation.rank();
  auto quotient =
      std::make_shared<RewritingModel>("quotient", complete_presentation(rank, opt.presentation.relators, 400));
  Word xi = opt.xi ? free_reduce(*opt.xi) : shortest_kernel_element(*quotient, rank, 12);

  BallTable table = ball_count(*quotient, std::min(net_radius > 0 ? net_radius : 12u, 16u));
  BallTable extended = table;
  auto card = [&](const BigRat& r) -> BigInt {
    unsigned radius = rat_floor(r).convert_to<unsigned>();
    if (radius > extended.radius()) extended = extend_ball_table(*quotient, extended, radius);
    return extended.counts[radius];
  };
  std::uint64_t L = displacement(xi);
  ConstantsBundle constants = make_constants(L, BigRat(1, 2), card,
                                             args.kappa_arg.empty() ? std::nullopt : std::optional<BigRat>(BigRat(args.kappa_arg)),
                                             args.lambda_arg.empty() ? std::nullopt : std::optional<BigRat>(BigRat(args.lambda_arg)),
                                             args.rho_arg.empty() ? std::nullopt : std::optional<BigRat>(BigRat(args.rho_arg)));
  if (constants.scaled && !args.scaled) {
    fail(ErrorCode::usage, "constants fall below the guaranteed thresholds; pass --scaled to proceed");
  }

  RhoNet net;
  net.rho = constants.rho;
  net.Delta = constants.Delta;
  if (net_radius > 0 && BigRat(static_cast<long long>(net_radius)) > constants.rho) {
    net = build_rho_net(*quotient, ball_elements(*quotient, net_radius), constants.rho, constants.Delta);
  } else {
    net.members.push_back(Word());
    net.member_norms.push_back(0);
  }
  EmbeddingConfig cfg = make_embedding_config(quotient, xi, constants, net);

  std::vector<FreeProductWord> words;
  if (samples > 0) {
    words = sample_net_words(cfg, max_blocks, samples, seed);
  } else {
    BigRat cap = norm_cap_arg.empty() ? BigRat(2) * constants.lambda + BigRat(2) * constants.rho : BigRat(norm_cap_arg);
    words = enumerate_net_words(cfg, max_blocks, constants.lambda, cap);
  }

  PhiReport rep;
  if (check == "nonexpanding") {
    rep = check_phi_nonexpanding(cfg, words, constants.lambda);
  } else if (check == "injective") {
    rep = check_phi_injective(cfg, words);
  } else {
    fail(ErrorCode::usage, "embed check must be nonexpanding|injective");
  }
  emit(json{{"command", "embed"},
            {"check", check},
            {"xi", xi.str()},
            {"net_members", net.members.size()},
            {"words", rep.checked},
            {"violations", rep.violations},
            {"guaranteed", rep.guaranteed},
            {"collision_guard_ok", rep.collision_guard_ok},
            {"seed", seed},
            {"constants", constants_json(constants)}},
       output);
  if (rep.guaranteed && !rep.ok()) return 1;
  return 0;
}

int run_tightness_cmd(const ClosureArgs& args, unsigned radius_g, unsigned radius_q, unsigned net_radius,
                      std::uint64_t seed, const std::string& output) {
  TightnessOptions opt = closure_options(args);
  opt.radius_g = radius_g;
  opt.radius_q = radius_q;
  opt.net_radius = net_radius;
  opt.seed = seed;
  opt.allow_scaled = args.scaled;
  TightnessReport rep = run_tightness(opt);
  json counts_g = json::array(), counts_q = json::array();
  for (const BigInt& c : rep.table_G.counts) counts_g.push_back(num(c));
  for (const BigInt& c : rep.table_Q.counts) counts_q.push_back(num(c));
  emit(json{{"command", "tightness"},
            {"quotient", rep.quotient_name},
            {"xi", rep.xi.str()},
            {"seed", rep.seed},
            {"omega_G", growth_estimate_json(rep.omega_G)},
            {"omega_quotient", growth_estimate_json(rep.omega_quotient)},
            {"constants", constants_json(rep.constants)},
            {"lambda_tilde", num(rep.constants.lambda_tilde)},
            {"gap_bound", num(rep.gap_bound)},
            {"gap_term_log10", num(rep.gap_term_log10)},
            {"strict_gap_observed", rep.strict_gap_observed},
            {"phi_injective_on_sample", rep.phi_injective_on_sample},
            {"phi_nonexpanding_on_sample", rep.phi_nonexpanding_on_sample},
            {"phi_sample_size", rep.phi_sample_size},
            {"phi_sample_limited", rep.phi_sample_limited},
            {"counts_G", counts_g},
            {"counts_quotient", counts_q}},
       output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ggt::init_threads_from_env();
  CLI::App app{"growth-tightness toolkit for groups acting on trees and graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // --output may follow the subcommand
  std::string output;
  app.add_option("--output", output, "write the report to a file instead of stdout");

  auto* growth = app.add_subcommand("growth", "ball tables and growth-rate estimates");
  std::string g_model = "builtin:free:2";
  unsigned g_radius = 10;
  std::string g_window, g_format = "json";
  growth->add_option("--model", g_model, "builtin:free:R | builtin:abelian:R | builtin:torsion:N | presentation file");
  growth->add_option("--radius", g_radius, "ball radius");
  growth->add_option("--window", g_window, "fit window LO:HI (default: top half)");
  growth->add_option("--format", g_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* delta = app.add_subcommand("delta", "four-point hyperbolicity certification");
  std::string d_space = "builtin:tree:3", d_mode = "exhaustive";
  std::uint64_t d_seed = 1;
  delta->add_option("--space", d_space, "edge-list file | builtin:tree:R | builtin:cycle:N");
  delta->add_option("--mode", d_mode, "exhaustive | sample:N");
  delta->add_option("--seed", d_seed, "sampling seed");

  auto* tripod = app.add_subcommand("tripod", "tripod approximation of a triangle");
  std::string t_space = "builtin:tree:3";
  int t_x = 0, t_y = 1, t_z = 2;
  tripod->add_option("--space", t_space, "edge-list file | builtin:tree:R | builtin:cycle:N");
  tripod->add_option("--x", t_x, "first vertex id");
  tripod->add_option("--y", t_y, "second vertex id");
  tripod->add_option("--z", t_z, "third vertex id");

  auto* net = app.add_subcommand("net", "greedy rho-separated net of a quotient");
  std::string n_model = "builtin:abelian:1", n_rho = "3";
  unsigned n_radius = 10;
  net->add_option("--model", n_model, "model spec as in growth");
  net->add_option("--rho", n_rho, "separation radius (rational, e.g. 21/2)");
  net->add_option("--radius", n_radius, "enumeration radius");

  auto* orbit = app.add_subcommand("orbit", "validators along a hyperbolic element");
  std::string o_xi = "b", o_check = "cells";
  unsigned o_maxlen = 12;
  std::uint64_t o_samples = 1000, o_seed = 1;
  std::string o_format = "json";
  orbit->add_option("--xi", o_xi, "hyperbolic element (word over a,b / A,B)");
  orbit->add_option("--check", o_check, "cells|symmetric|twisted|insert");
  orbit->add_option("--max-len", o_maxlen, "norm bound / word length bound");
  orbit->add_option("--samples", o_samples, "sample count for randomized sweeps");
  orbit->add_option("--seed", o_seed, "sweep seed");
  orbit->add_option("--format", o_format, "json")->check(CLI::IsMember({"json"}));

  ClosureArgs e_args, tt_args;
  auto add_closure_options = [](CLI::App* cmd, ClosureArgs& args) {
    cmd->add_option("--presentation", args.presentation_path, "ambient free presentation file")->required();
    cmd->add_option("--normal-closure", args.closure, "words generating the normal subgroup")->required();
    cmd->add_option("--xi", args.xi_text, "hyperbolic kernel element (default: shortest)");
    cmd->add_option("--kappa", args.kappa_arg, "override kappa");
    cmd->add_option("--lambda", args.lambda_arg, "override lambda");
    cmd->add_option("--rho", args.rho_arg, "override rho");
    cmd->add_flag("--scaled", args.scaled, "allow constants below the guaranteed thresholds");
  };

  auto* embed = app.add_subcommand("embed", "nonexpansion / injectivity checks of the embedding");
  add_closure_options(embed, e_args);
  std::string e_check = "nonexpanding", e_cap;
  unsigned e_blocks = 3, e_net_radius = 0;
  std::uint64_t e_samples = 0, e_seed = 1;
  embed->add_option("--check", e_check, "nonexpanding|injective");
  embed->add_option("--max-blocks", e_blocks, "maximum blocks per word");
  embed->add_option("--norm-cap", e_cap, "lambda-norm cap for exhaustive enumeration");
  embed->add_option("--net-radius", e_net_radius, "net enumeration radius (0: identity-only net)");
  embed->add_option("--samples", e_samples, "random words instead of exhaustive enumeration");
  embed->add_option("--seed", e_seed, "sampling seed");

  auto* tight = app.add_subcommand("tightness", "end-to-end growth-tightness report");
  add_closure_options(tight, tt_args);
  unsigned tt_rg = 10, tt_rq = 20, tt_net_radius = 0;
  std::uint64_t tt_seed = 1;
  std::string tt_format = "json";
  tight->add_option("--radius-g", tt_rg, "ambient ball radius");
  tight->add_option("--radius-q", tt_rq, "quotient ball radius");
  tight->add_option("--net-radius", tt_net_radius, "net enumeration radius");
  tight->add_option("--seed", tt_seed, "seed recorded in the report");
  tight->add_option("--format", tt_format, "json")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2; --help stays 0
  }

  try {
    if (growth->parsed()) return run_growth(g_model, g_radius, g_window, g_format, output);
    if (delta->parsed()) return run_delta(d_space, d_mode, d_seed, output);
    if (tripod->parsed()) return run_tripod(t_space, t_x, t_y, t_z, output);
    if (net->parsed()) return run_net(n_model, n_rho, n_radius, output);
    if (orbit->parsed()) return run_orbit(o_xi, o_check, o_maxlen, o_samples, o_seed, output);
    if (embed->parsed()) return run_embed(e_args, e_check, e_blocks, e_cap, e_net_radius, e_samples, e_seed, output);
    if (tight->parsed()) return run_tightness_cmd(tt_args, tt_rg, tt_rq, tt_net_radius, tt_seed, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
